#include "monel/elimination.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "monel/counting.hpp"
#include "monel/error.hpp"
#include "monel/rewrite.hpp"
#include "monel/syntax.hpp"

namespace monel {
namespace {

Formula tv(bool b) { return b ? mk_true() : mk_false(); }

std::vector<Formula> members(const Formula& f, Kind connective) {
  if (f.kind() == connective) return f.kids();
  return {f};
}

// Basic building blocks of the counting normal form: the units the
// disjunctive normal form is taken over.
bool is_cqnf_basic(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Eq:
    case Kind::AtLeast:
      return true;
    case Kind::Atom:
      return f.args().size() <= 1;
    default:
      return false;
  }
}

// Basic blocks of the equality-free normal form.
bool is_noeq_basic(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Exists:
      return true;
    case Kind::Atom:
      return f.args().size() <= 1;
    default:
      return false;
  }
}

// Rebuilds f with every child replaced by fn(child).
template <typename Fn>
Formula map_children(const Formula& f, Fn&& fn) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Eq:
      return f;
    case Kind::Not:
      return mk_not(fn(f.child(0)));
    case Kind::And:
    case Kind::Or: {
      Formulas ks;
      ks.reserve(f.num_children());
      for (const Formula& k : f.kids()) ks.push_back(fn(k));
      return f.kind() == Kind::And ? mk_and(std::move(ks))
                                   : mk_or(std::move(ks));
    }
    case Kind::Forall:
      return mk_forall(f.name(), fn(f.child(0)));
    case Kind::Exists:
      return mk_exists(f.name(), fn(f.child(0)));
    case Kind::AtLeast:
      return mk_atleast(f.count(), f.name(), fn(f.child(0)));
    case Kind::AllBut:
      return mk_allbut(f.count(), f.name(), fn(f.child(0)));
    case Kind::ForallPred:
      return mk_forall_pred(f.name(), f.pred_arity(), fn(f.child(0)));
    case Kind::ExistsPred:
      return mk_exists_pred(f.name(), f.pred_arity(), fn(f.child(0)));
  }
  throw Error(ErrorCode::Internal, "map_children: unknown kind");
}

bool has_pred_quantifier(const Formula& f) {
  if (is_pred_quantifier(f.kind())) return true;
  for (const Formula& k : f.kids())
    if (has_pred_quantifier(k)) return true;
  return false;
}

// The unary atom p(v) with v a variable.
Formula pred_atom(const std::string& p, const std::string& v) {
  return mk_atom(p, Term::var(v));
}

// Splits a clause (the Or-members for universal groups, And-members for
// existential ones) into the single +/- literal of p on the bound variable
// and the remaining members. Returns the sign, or 0 when no such literal is
// present; throws ShapeError on several.
int split_pred_literal(const std::vector<Formula>& ms, const std::string& p,
                       const std::string& v, std::vector<Formula>& rest) {
  int sign = 0;
  Formula pos = pred_atom(p, v);
  Formula neg = mk_not(pos);
  for (const Formula& m : ms) {
    int s = m == pos ? 1 : m == neg ? -1 : 0;
    if (s != 0 && sign != 0)
      throw Error(ErrorCode::Shape,
                  "clause carries more than one literal of '" + p + "'");
    if (s != 0)
      sign = s;
    else
      rest.push_back(m);
  }
  return sign;
}

Formula onto_shared_var(const Formula& body, const std::string& from,
                        const std::string& to) {
  if (from == to) return body;
  return substitute(body, from, Term::var(to));
}

// ---------------------------------------------------------------------------
// Hauptform construction from the normal forms.

struct GroupedParts {
  std::vector<Formula> frame;  // conjuncts free of the predicate
  Hauptform h;
  bool has_pred = false;
};

// Chooses the shared bound variable for one Hauptform: prefer the bound
// variable of the first quantified part, then a bare "x", falling back to a
// fresh name. The chosen name must not occur free in the disjunct.
std::string choose_shared_var(const std::vector<Formula>& pparts,
                              const std::set<std::string>& free_in_disjunct,
                              const std::set<std::string>& taken,
                              FreshNames& names) {
  for (const Formula& q : pparts) {
    const Formula& core = q.kind() == Kind::Not ? q.child(0) : q;
    if (is_individual_quantifier(core.kind()) &&
        !free_in_disjunct.count(core.name())) {
      names.reserve(core.name());
      return core.name();
    }
  }
  if (!taken.count("x") && !free_in_disjunct.count("x")) {
    names.reserve("x");
    return "x";
  }
  return names.fresh("x");
}

// Groups the p-carrying conjuncts of one disjunct of the normal form into a
// Hauptform. `generalized` selects the counting (equality) construction;
// otherwise the plain-quantifier one. In both modes atoms p(t)/~p(t) turn
// into universal clauses guarded by x != t.
GroupedParts group_disjunct(const std::vector<Formula>& conjs,
                            const std::string& p, bool generalized,
                            const std::set<std::string>& taken,
                            FreshNames& names) {
  GroupedParts out;
  out.h.pred = p;
  out.h.generalized = generalized;

  std::vector<Formula> pparts;
  for (const Formula& c : conjs) {
    if (occurs_pred(c, p))
      pparts.push_back(c);
    else
      out.frame.push_back(c);
  }
  if (pparts.empty()) return out;
  out.has_pred = true;

  std::set<std::string> free_here;
  for (const Formula& c : conjs) {
    auto fs = free_symbols(c);
    free_here.insert(fs.vars.begin(), fs.vars.end());
  }
  const std::string x = choose_shared_var(pparts, free_here, taken, names);
  out.h.var = x;

  for (const Formula& q : pparts) {
    bool negated = q.kind() == Kind::Not;
    const Formula& core = negated ? q.child(0) : q;
    Kind want = generalized ? Kind::AtLeast : Kind::Exists;
    if (core.kind() == Kind::Atom && core.args().size() == 1 &&
        core.name() == p) {
      // p(t) is the clause "every x other than t satisfies p" (negated: the
      // same with ~p); the guard becomes the clause body.
      HauptformMember m{1, mk_neq(Term::var(x), core.args()[0])};
      (negated ? out.h.b : out.h.a).push_back(std::move(m));
      continue;
    }
    if (core.kind() == want) {
      int n = generalized ? core.count() : 1;
      const std::string& v = core.name();
      std::vector<Formula> lits = members(core.child(0), Kind::And);
      std::vector<Formula> rest;
      int sign = split_pred_literal(lits, p, v, rest);
      if (sign == 0)
        throw Error(ErrorCode::Internal,
                    "normal form block mentions the predicate outside its "
                    "own literal");
      if (!negated) {
        // atleast n x. (rest & p x) -> C group; with ~p x -> D group.
        Formula body = onto_shared_var(mk_and(std::move(rest)), v, x);
        (sign > 0 ? out.h.c : out.h.d)
            .push_back(HauptformMember{n, std::move(body)});
      } else {
        // ~atleast n x. (rest & p x): dualize the matrix literals; the dual
        // of p x is ~p x, so this lands in the B group (A for ~p x).
        Formulas duals;
        duals.reserve(rest.size());
        for (const Formula& l : rest) duals.push_back(complement(l));
        Formula body = onto_shared_var(mk_or(std::move(duals)), v, x);
        (sign > 0 ? out.h.b : out.h.a)
            .push_back(HauptformMember{n, std::move(body)});
      }
      continue;
    }
    throw Error(ErrorCode::Internal,
                "unexpected block shape in the normal form: " + print(q));
  }
  return out;
}

// Shared driver: normal form, DNF over the basics, then per disjunct the
// grouped rewrite into `block(grouped)`.
template <typename BlockFn>
Formula hauptform_pipeline(const std::string& p, const Formula& f,
                           bool generalized, const BlockFn& block) {
  Formula nf = generalized ? counting_normal_form(f) : normal_form_noeq(f);
  if (!occurs_pred(nf, p)) return nf;
  Formula d =
      to_dnf_over_basics(nf, generalized ? is_cqnf_basic : is_noeq_basic);
  if (d.kind() == Kind::True || d.kind() == Kind::False) return d;

  FreshNames names(f);
  names.absorb(d);
  names.reserve(p);
  std::set<std::string> taken = all_names(f);
  auto more = all_names(d);
  taken.insert(more.begin(), more.end());
  taken.insert(p);

  Formulas out;
  for (const Formula& disjunct : members(d, Kind::Or)) {
    std::vector<Formula> conjs = members(disjunct, Kind::And);
    GroupedParts g = group_disjunct(conjs, p, generalized, taken, names);
    if (!g.has_pred) {
      out.push_back(disjunct);
      continue;
    }
    Formulas parts = std::move(g.frame);
    parts.push_back(block(g.h, names));
    out.push_back(mk_and(std::move(parts)));
  }
  return mk_or(std::move(out));
}

}  // namespace

// ---------------------------------------------------------------------------
// Rendering and matching.

Formula render_hauptform(const Hauptform& h) {
  auto check_body = [&](const Formula& body) {
    if (occurs_pred(body, h.pred))
      throw Error(ErrorCode::EliminandOccurs,
                  "group body mentions the quantified predicate '" + h.pred +
                      "': " + print(body));
  };
  auto univ = [&](const HauptformMember& m, Formula lit) {
    check_body(m.body);
    Formula clause = mk_or({m.body, std::move(lit)});
    if (h.generalized) return mk_allbut(m.count, h.var, std::move(clause));
    if (m.count != 1)
      throw Error(ErrorCode::Shape,
                  "plain-quantifier form cannot carry count " +
                      std::to_string(m.count));
    return mk_forall(h.var, std::move(clause));
  };
  auto exis = [&](const HauptformMember& m, Formula lit) {
    check_body(m.body);
    Formula clause = mk_and({m.body, std::move(lit)});
    if (h.generalized) return mk_atleast(m.count, h.var, std::move(clause));
    if (m.count != 1)
      throw Error(ErrorCode::Shape,
                  "plain-quantifier form cannot carry count " +
                      std::to_string(m.count));
    return mk_exists(h.var, std::move(clause));
  };
  Formula pos = pred_atom(h.pred, h.var);
  Formula neg = mk_not(pos);
  Formulas parts;
  for (const auto& m : h.a) parts.push_back(univ(m, pos));
  for (const auto& m : h.b) parts.push_back(univ(m, neg));
  for (const auto& m : h.c) parts.push_back(exis(m, pos));
  for (const auto& m : h.d) parts.push_back(exis(m, neg));
  return mk_exists_pred(h.pred, 1, mk_and(std::move(parts)));
}

Hauptform match_hauptform(const Formula& f) {
  if (f.kind() != Kind::ExistsPred || f.pred_arity() != 1)
    throw Error(ErrorCode::Shape,
                "not an existential quantifier over a unary predicate: " +
                    print(f));
  Hauptform h;
  h.pred = f.name();
  h.generalized = false;
  const Formula& body = f.child(0);
  if (body.kind() == Kind::True) {
    h.var = "x";
    return h;
  }
  bool var_set = false;
  for (const Formula& m : members(body, Kind::And)) {
    bool universal;
    int count;
    switch (m.kind()) {
      case Kind::Forall: universal = true; count = 1; break;
      case Kind::Exists: universal = false; count = 1; break;
      case Kind::AllBut:
        universal = true;
        count = m.count();
        h.generalized = true;
        break;
      case Kind::AtLeast:
        universal = false;
        count = m.count();
        h.generalized = true;
        break;
      default:
        throw Error(ErrorCode::Shape,
                    "group member is not a quantified clause: " + print(m));
    }
    const std::string& v = m.name();
    if (!var_set) {
      h.var = v;
      var_set = true;
    }
    std::vector<Formula> ms =
        members(m.child(0), universal ? Kind::Or : Kind::And);
    std::vector<Formula> rest;
    int sign = split_pred_literal(ms, h.pred, v, rest);
    if (sign == 0)
      throw Error(ErrorCode::Shape,
                  "group member carries no literal of '" + h.pred +
                      "': " + print(m));
    Formula r = universal ? mk_or(std::move(rest)) : mk_and(std::move(rest));
    if (occurs_pred(r, h.pred))
      throw Error(ErrorCode::Shape,
                  "quantified predicate occurs outside its literal: " +
                      print(m));
    HauptformMember member{count, onto_shared_var(r, v, h.var)};
    auto& group = universal ? (sign > 0 ? h.a : h.b) : (sign > 0 ? h.c : h.d);
    group.push_back(std::move(member));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Kernel and expansion.

Formula basic_elim(const std::string& x, const Formula& a, const Formula& b,
                   const std::string& p) {
  if (occurs_pred(a, p) || occurs_pred(b, p))
    throw Error(ErrorCode::EliminandOccurs,
                "eliminated predicate '" + p + "' occurs in a clause part");
  return mk_forall(x, mk_or({a, b}));
}

BasicElimInput hauptform_to_basic(const Hauptform& h, FreshNames* names) {
  FreshNames local;
  if (names == nullptr) {
    local.absorb(render_hauptform(h));
    names = &local;
  }
  BasicElimInput out;
  Term xv = Term::var(h.var);

  // Fresh witnesses: for a universal clause of count n, the n-1 exception
  // points; for an existential clause of count n, the n instances.
  std::vector<std::vector<std::string>> xs, ys, us, vs;
  auto draw = [&](const std::vector<HauptformMember>& g, const char* base,
                  int less) {
    std::vector<std::vector<std::string>> w;
    for (const auto& m : g) {
      std::vector<std::string> row;
      for (int j = 0; j < m.count - less; ++j)
        row.push_back(names->fresh(base));
      w.push_back(std::move(row));
    }
    return w;
  };
  xs = draw(h.a, "x", 1);
  ys = draw(h.b, "y", 1);
  us = draw(h.c, "u", 0);
  vs = draw(h.d, "v", 0);
  for (const auto& g : {xs, ys, us, vs})
    for (const auto& row : g)
      for (const auto& n : row) out.prefix.push_back(n);

  // Guard: every existential witness satisfies its clause body, pairwise
  // distinct within one clause.
  Formulas guard;
  auto instantiate = [&](const std::vector<HauptformMember>& g,
                         const std::vector<std::vector<std::string>>& w) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < w[i].size(); ++j) {
        guard.push_back(substitute(g[i].body, h.var, Term::var(w[i][j])));
        for (std::size_t k = j + 1; k < w[i].size(); ++k)
          guard.push_back(mk_neq(Term::var(w[i][j]), Term::var(w[i][k])));
      }
    }
  };
  instantiate(h.c, us);
  instantiate(h.d, vs);
  out.guard = mk_and(std::move(guard));

  // A part: each universal clause weakened by equality with its exception
  // points, plus the disequalities with the positive-existential witnesses.
  auto side = [&](const std::vector<HauptformMember>& g,
                  const std::vector<std::vector<std::string>>& exc,
                  const std::vector<std::vector<std::string>>& wit) {
    Formulas conj;
    for (std::size_t i = 0; i < g.size(); ++i) {
      Formulas clause{g[i].body};
      for (const auto& n : exc[i])
        clause.push_back(mk_eq(xv, Term::var(n)));
      conj.push_back(mk_or(std::move(clause)));
    }
    for (const auto& row : wit)
      for (const auto& n : row) conj.push_back(mk_neq(xv, Term::var(n)));
    return mk_and(std::move(conj));
  };
  out.a = side(h.a, xs, us);
  out.b = side(h.b, ys, vs);
  return out;
}

// ---------------------------------------------------------------------------
// The normal-form constructions.

Formula build_hauptform(const std::string& p, const Formula& f) {
  auto fs = free_symbols(f);
  auto it = fs.preds.find(p);
  if (it != fs.preds.end() && it->second != 1)
    throw Error(ErrorCode::Class, "predicate '" + p + "' occurs with arity " +
                                      std::to_string(it->second) +
                                      "; this construction is for unary "
                                      "predicates");
  return hauptform_pipeline(p, f, /*generalized=*/true,
                            [](const Hauptform& h, FreshNames&) {
                              return render_hauptform(h);
                            });
}

Formula normalize_nullary(const std::string& p, const Formula& f) {
  auto fs = free_symbols(f);
  auto it = fs.preds.find(p);
  if (it == fs.preds.end()) return f;
  if (it->second != 0)
    throw Error(ErrorCode::Class, "predicate '" + p + "' occurs with arity " +
                                      std::to_string(it->second) +
                                      "; expected a nullary predicate");
  Formula nf = counting_normal_form(f);
  if (!occurs_pred(nf, p)) return simplify(nf);
  Formula d = to_dnf_over_basics(nf, is_cqnf_basic);
  Formula pos = mk_atom(p, std::vector<Term>{});
  Formula neg = mk_not(pos);
  Formulas out;
  for (const Formula& disjunct : members(d, Kind::Or)) {
    bool saw_pos = false, saw_neg = false;
    Formulas rest;
    for (const Formula& c : members(disjunct, Kind::And)) {
      if (c == pos)
        saw_pos = true;
      else if (c == neg)
        saw_neg = true;
      else
        rest.push_back(c);
    }
    // Both polarities in one disjunct make it contradictory; otherwise the
    // quantified disjunct reduces to its p-free remainder because both
    // `exists2 p. p` and `exists2 p. ~p` are valid.
    if (saw_pos && saw_neg) continue;
    out.push_back(mk_and(std::move(rest)));
  }
  return simplify(mk_or(std::move(out)));
}

// ---------------------------------------------------------------------------
// Full elimination.

namespace {

// Replaces one Hauptform block by its first-order equivalent.
Formula eliminate_block(const Formula& block, const std::string& p,
                        FreshNames& names) {
  Hauptform h = match_hauptform(block);
  BasicElimInput in = hauptform_to_basic(h, &names);
  Formula core = basic_elim(h.var, in.a, in.b, p);
  Formula body = mk_and({in.guard, std::move(core)});
  for (auto i = in.prefix.rbegin(); i != in.prefix.rend(); ++i)
    body = mk_exists(*i, std::move(body));
  return body;
}

Formula eliminate_blocks_rec(const Formula& f, const std::string& p,
                             FreshNames& names) {
  if (f.kind() == Kind::ExistsPred && f.name() == p)
    return eliminate_block(f, p, names);
  return map_children(
      f, [&](const Formula& k) { return eliminate_blocks_rec(k, p, names); });
}

}  // namespace

Formula eliminate_predicate(const std::string& p, const Formula& f) {
  FormulaClass cls = classify(f);
  if (!class_leq(cls, FormulaClass::MON_EQ))
    throw Error(ErrorCode::Class,
                std::string("elimination needs a relational monadic "
                            "first-order argument, got class ") +
                    formula_class_name(cls));
  auto fs = free_symbols(f);
  auto it = fs.preds.find(p);
  if (it == fs.preds.end()) return f;
  if (it->second == 0) return normalize_nullary(p, f);

  Formula staged = build_hauptform(p, f);
  FreshNames names(f);
  names.absorb(staged);
  names.reserve(p);
  return simplify(eliminate_blocks_rec(staged, p, names));
}

namespace {

// forall2 p. G  ->  ~exists2 p. ~G, everywhere.
Formula universals_to_existentials(const Formula& f) {
  Formula g = map_children(
      f, [](const Formula& k) { return universals_to_existentials(k); });
  if (g.kind() == Kind::ForallPred)
    return mk_not(
        mk_exists_pred(g.name(), g.pred_arity(), mk_not(g.child(0))));
  return g;
}

Formula eliminate_all_rec(const Formula& f, bool allow_encoding) {
  Formula g = map_children(f, [&](const Formula& k) {
    return eliminate_all_rec(k, allow_encoding);
  });
  if (g.kind() != Kind::ExistsPred) return g;
  const std::string p = g.name();
  Formula body = g.child(0);
  if (!occurs_pred(body, p)) return body;
  if (class_leq(classify(body), FormulaClass::MON_EQ))
    return eliminate_predicate(p, body);
  if (!allow_encoding)
    throw Error(ErrorCode::Class,
                "quantified predicate '" + p +
                    "' has a non-monadic first-order body");

  auto enc = polyadic_monadize(body, p);
  if (!enc)
    throw Error(ErrorCode::Eligibility,
                "no monadic shorthand encoding exists for '" + p +
                    "' in: " + print(body));
  Formula r = enc->body;
  for (auto i = enc->eliminands.rbegin(); i != enc->eliminands.rend(); ++i)
    r = eliminate_predicate(*i, r);
  if (enc->decode.empty()) return r;
  // Rename the binders introduced by the elimination away from every name
  // of the original body, so that re-substituting the abbreviated atoms
  // (whose arguments the encoded formula no longer shows) cannot capture.
  FreshNames guard(r);
  for (const std::string& n : all_names(body)) guard.reserve(n);
  r = rename_bound(r, guard);
  return monadize_decode(r, enc->decode);
}

}  // namespace

Formula eliminate_all(const Formula& f) {
  FormulaClass cls = classify(f);
  if (!class_leq(cls, FormulaClass::QMON_EQ))
    throw Error(ErrorCode::Class,
                std::string("eliminate_all needs a relational monadic "
                            "second-order argument, got class ") +
                    formula_class_name(cls));
  if (!has_pred_quantifier(f)) return f;
  return simplify(
      eliminate_all_rec(universals_to_existentials(f), /*encoding=*/false));
}

Formula eliminate_general(const Formula& f) {
  if (!has_pred_quantifier(f)) return f;
  return simplify(
      eliminate_all_rec(universals_to_existentials(f), /*encoding=*/true));
}

// ---------------------------------------------------------------------------
// Equality-free variant.

Formula hauptform_elim_noeq(const Hauptform& h, FreshNames* names) {
  if (h.generalized)
    throw Error(ErrorCode::Shape,
                "the closed-form resultant needs the plain-quantifier form");
  FreshNames local;
  if (names == nullptr) {
    local.absorb(render_hauptform(h));
    names = &local;
  }
  Formulas aparts, bparts;
  for (const auto& m : h.a) aparts.push_back(m.body);
  for (const auto& m : h.b) bparts.push_back(m.body);
  Formula lead = mk_forall(h.var, mk_or({mk_and(aparts), mk_and(bparts)}));
  if (h.c.empty() && h.d.empty()) return lead;

  std::vector<std::string> us, vs;
  for (std::size_t i = 0; i < h.c.size(); ++i) us.push_back(names->fresh("u"));
  for (std::size_t i = 0; i < h.d.size(); ++i) vs.push_back(names->fresh("v"));

  Formulas inner;
  for (const auto& u : us)
    for (const auto& v : vs)
      inner.push_back(mk_neq(Term::var(u), Term::var(v)));
  for (std::size_t i = 0; i < h.c.size(); ++i) {
    Term ui = Term::var(us[i]);
    inner.push_back(substitute(h.c[i].body, h.var, ui));
    for (const Formula& bj : bparts)
      inner.push_back(substitute(bj, h.var, ui));
  }
  for (std::size_t i = 0; i < h.d.size(); ++i) {
    Term vi = Term::var(vs[i]);
    inner.push_back(substitute(h.d[i].body, h.var, vi));
    for (const Formula& aj : aparts)
      inner.push_back(substitute(aj, h.var, vi));
  }
  Formula ex = mk_and(std::move(inner));
  for (auto i = vs.rbegin(); i != vs.rend(); ++i)
    ex = mk_exists(*i, std::move(ex));
  for (auto i = us.rbegin(); i != us.rend(); ++i)
    ex = mk_exists(*i, std::move(ex));
  return mk_and({std::move(lead), std::move(ex)});
}

Formula eliminate_noeq(const std::string& p, const Formula& f) {
  FormulaClass cls = classify(f);
  if (!class_leq(cls, FormulaClass::MON))
    throw Error(ErrorCode::Class,
                std::string("the equality-free construction needs an "
                            "equality-free monadic argument, got class ") +
                    formula_class_name(cls));
  auto fs = free_symbols(f);
  auto it = fs.preds.find(p);
  if (it == fs.preds.end()) return f;
  if (it->second != 1)
    throw Error(ErrorCode::Class, "predicate '" + p + "' occurs with arity " +
                                      std::to_string(it->second) +
                                      "; expected a unary predicate");
  return hauptform_pipeline(p, f, /*generalized=*/false,
                            [](const Hauptform& h, FreshNames& names) {
                              return hauptform_elim_noeq(h, &names);
                            });
}

Formula crude_resultant(const Hauptform& h) {
  if (h.generalized)
    throw Error(ErrorCode::Shape,
                "the crude resultant is defined on the plain-quantifier "
                "form");
  Formulas aparts, bparts;
  for (const auto& m : h.a) aparts.push_back(m.body);
  for (const auto& m : h.b) bparts.push_back(m.body);
  Formula a = mk_and(std::move(aparts));
  Formula b = mk_and(std::move(bparts));
  Formulas parts;
  parts.push_back(mk_forall(h.var, mk_or({a, b})));
  for (const auto& m : h.c)
    parts.push_back(mk_exists(h.var, mk_and({m.body, b})));
  for (const auto& m : h.d)
    parts.push_back(mk_exists(h.var, mk_and({m.body, a})));
  return mk_and(std::move(parts));
}

// ---------------------------------------------------------------------------
// Simultaneous elimination.

Formula simultaneous_elim(const std::vector<std::string>& ps,
                          const Formula& f) {
  const std::size_t n = ps.size();
  if (n == 0 || n > 20)
    throw Error(ErrorCode::Shape,
                "need between 1 and 20 predicates to eliminate");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i)
    if (!index.emplace(ps[i], i).second)
      throw Error(ErrorCode::Shape, "duplicate predicate '" + ps[i] + "'");

  std::vector<Formula> clauses = members(f, Kind::And);
  const std::size_t expected = std::size_t{1} << n;
  if (clauses.size() != expected)
    throw Error(ErrorCode::Shape,
                "expected " + std::to_string(expected) +
                    " universal clauses, found " +
                    std::to_string(clauses.size()));
  if (clauses[0].kind() != Kind::Forall)
    throw Error(ErrorCode::Shape, "clause is not universally quantified: " +
                                      print(clauses[0]));
  const std::string x = clauses[0].name();
  Term xv = Term::var(x);

  std::map<std::size_t, Formula> by_subset;
  std::vector<std::size_t> order;
  for (const Formula& cl : clauses) {
    if (cl.kind() != Kind::Forall)
      throw Error(ErrorCode::Shape,
                  "clause is not universally quantified: " + print(cl));
    Formula body = cl.child(0);
    if (cl.name() != x) {
      if (occurs_free_var(body, x))
        throw Error(ErrorCode::Shape,
                    "cannot align clause variables: '" + x +
                        "' occurs free in " + print(cl));
      try {
        body = substitute(body, cl.name(), xv);
      } catch (const Error&) {
        throw Error(ErrorCode::Shape,
                    "cannot align clause variables in " + print(cl));
      }
    }
    std::vector<int> sign(n, 0);
    Formulas rest;
    for (const Formula& d : members(body, Kind::Or)) {
      const Formula& core = d.kind() == Kind::Not ? d.child(0) : d;
      int s = d.kind() == Kind::Not ? -1 : 1;
      auto at = core.kind() == Kind::Atom && core.args().size() == 1 &&
                        core.args()[0] == xv
                    ? index.find(core.name())
                    : index.end();
      if (at != index.end()) {
        if (sign[at->second] != 0)
          throw Error(ErrorCode::Shape,
                      "repeated literal of '" + core.name() + "' in " +
                          print(cl));
        sign[at->second] = s;
      } else {
        rest.push_back(d);
      }
    }
    std::size_t key = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sign[i] == 0)
        throw Error(ErrorCode::Shape, "clause carries no literal of '" +
                                          ps[i] + "': " + print(cl));
      if (sign[i] > 0) key |= std::size_t{1} << i;
    }
    Formula rem = mk_or(std::move(rest));
    for (const std::string& p : ps)
      if (occurs_pred(rem, p))
        throw Error(ErrorCode::EliminandOccurs,
                    "'" + p + "' occurs outside its literal in " + print(cl));
    if (!by_subset.emplace(key, rem).second)
      throw Error(ErrorCode::Shape,
                  "two clauses carry the same sign pattern: " + print(cl));
    order.push_back(key);
  }
  Formulas result;
  for (std::size_t key : order) result.push_back(by_subset.at(key));
  return mk_forall(x, mk_or(std::move(result)));
}

// ---------------------------------------------------------------------------
// Definitions.

namespace {

// Matches `occ` against the definiens g, solving for the term filling the
// free occurrences of x. Under a rebinding of x the hole is disabled and
// exact equality required.
bool match_definiens(const Formula& g, const Formula& occ, const std::string& x,
                     bool hole_active, std::optional<Term>& t) {
  if (g.kind() != occ.kind()) return false;
  if (g.kind() == Kind::Atom || g.kind() == Kind::Eq) {
    if (g.name() != occ.name()) return false;
    if (g.args().size() != occ.args().size()) return false;
    for (std::size_t i = 0; i < g.args().size(); ++i) {
      const Term& pat = g.args()[i];
      const Term& got = occ.args()[i];
      if (hole_active && pat == Term::var(x)) {
        if (t && !(*t == got)) return false;
        t = got;
      } else if (!(pat == got)) {
        return false;
      }
    }
    return true;
  }
  if (g.count() != occ.count() || g.pred_arity() != occ.pred_arity() ||
      g.name() != occ.name())
    return false;
  if (g.num_children() != occ.num_children()) return false;
  bool inner_active = hole_active;
  if (is_individual_quantifier(g.kind()) && g.name() == x)
    inner_active = false;
  for (std::size_t i = 0; i < g.num_children(); ++i)
    if (!match_definiens(g.child(i), occ.child(i), x, inner_active, t))
      return false;
  return true;
}

// Individual-quantifier binder names along `path` in f.
std::set<std::string> binders_along(const Formula& f, const Path& path) {
  std::set<std::string> out;
  Formula cur = f;
  for (int i : path) {
    if (is_individual_quantifier(cur.kind())) out.insert(cur.name());
    cur = subformula_at(cur, Path{i});
  }
  return out;
}

bool path_prefix(const Path& a, const Path& b) {
  if (a.size() > b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

Formula intro_definition(const Formula& f, const std::string& x,
                         const Formula& g, const std::vector<Path>& occurrences,
                         const std::string& p) {
  if (all_names(f).count(p) || all_names(g).count(p))
    throw Error(ErrorCode::NotFresh,
                "'" + p + "' already occurs in the formula or the definiens");
  if (!occurs_free_var(g, x))
    throw Error(ErrorCode::BadArgs,
                "definiens does not mention the abstraction variable '" + x +
                    "'");
  std::set<std::string> context = free_symbols(g).vars;
  context.erase(x);

  for (std::size_t i = 0; i < occurrences.size(); ++i)
    for (std::size_t j = i + 1; j < occurrences.size(); ++j)
      if (path_prefix(occurrences[i], occurrences[j]) ||
          path_prefix(occurrences[j], occurrences[i]))
        throw Error(ErrorCode::BadArgs, "overlapping occurrence positions");

  Formula out = f;
  for (const Path& path : occurrences) {
    Formula occ = subformula_at(f, path);
    std::optional<Term> t;
    if (!match_definiens(g, occ, x, true, t) || !t)
      throw Error(ErrorCode::NoMatch,
                  "position does not instantiate the definiens: " +
                      print(occ));
    std::set<std::string> bound = binders_along(f, path);
    for (const std::string& v : context)
      if (bound.count(v))
        throw Error(ErrorCode::Capture,
                    "free variable '" + v +
                        "' of the definiens is bound at an occurrence");
    out = replace_at(out, path, mk_atom(p, *t));
  }
  Formula px = pred_atom(p, x);
  Formula def = mk_forall(
      x, mk_and({mk_or({mk_not(px), g}), mk_or({px, mk_not(g)})}));
  return mk_exists_pred(p, 1, mk_and({std::move(def), std::move(out)}));
}

namespace {

// Recognizes one half of an expanded biconditional: an Or containing the
// literal `lit` among its members; returns the remaining disjunction.
std::optional<Formula> or_without(const Formula& f, const Formula& lit) {
  Formulas rest;
  bool found = false;
  for (const Formula& m : members(f, Kind::Or)) {
    if (!found && m == lit) {
      found = true;
      continue;
    }
    rest.push_back(m);
  }
  if (!found) return std::nullopt;
  return mk_or(std::move(rest));
}

// Matches `forall x. ((~p x | G) & (p x | ~G))` in either clause order and
// any member arrangement; returns (x, G).
std::optional<std::pair<std::string, Formula>> match_definition(
    const Formula& m, const std::string& p) {
  if (m.kind() != Kind::Forall) return std::nullopt;
  const std::string& x = m.name();
  Formula body = m.child(0);
  if (body.kind() != Kind::And || body.num_children() != 2)
    return std::nullopt;
  Formula pos = pred_atom(p, x);
  Formula neg = mk_not(pos);
  for (int first : {0, 1}) {
    auto g = or_without(body.child(static_cast<std::size_t>(first)), neg);
    auto ng = or_without(body.child(static_cast<std::size_t>(1 - first)), pos);
    if (!g || !ng) continue;
    if (ng->kind() != Kind::Not || !(ng->child(0) == *g)) continue;
    if (occurs_pred(*g, p)) continue;
    return std::make_pair(x, *g);
  }
  return std::nullopt;
}

// Replaces every atom p(t) by g[t], tracking capture of the definiens'
// context variables and stopping at rebindings of p.
Formula expand_atoms(const Formula& f, const std::string& p,
                     const std::string& x, const Formula& g,
                     const std::set<std::string>& context,
                     std::set<std::string>& bound) {
  if (f.kind() == Kind::Atom && f.name() == p) {
    if (f.args().size() != 1)
      throw Error(ErrorCode::Arity,
                  "defined predicate '" + p + "' used with arity " +
                      std::to_string(f.args().size()));
    for (const std::string& v : context)
      if (bound.count(v))
        throw Error(ErrorCode::Capture,
                    "free variable '" + v +
                        "' of the definiens is bound at an occurrence");
    return substitute(g, x, f.args()[0]);
  }
  if (is_pred_quantifier(f.kind()) && f.name() == p) return f;
  if (is_individual_quantifier(f.kind())) {
    bool added = bound.insert(f.name()).second;
    Formula body = expand_atoms(f.child(0), p, x, g, context, bound);
    if (added) bound.erase(f.name());
    return map_children(f, [&](const Formula&) { return body; });
  }
  return map_children(f, [&](const Formula& k) {
    return expand_atoms(k, p, x, g, context, bound);
  });
}

}  // namespace

Formula expand_definition(const Formula& f, const std::string& p) {
  if (f.kind() != Kind::ExistsPred || f.name() != p || f.pred_arity() != 1)
    throw Error(ErrorCode::Shape,
                "not an existential quantification of unary '" + p + "'");
  std::vector<Formula> ms = members(f.child(0), Kind::And);
  std::optional<std::pair<std::string, Formula>> def;
  Formulas rest;
  for (const Formula& m : ms) {
    if (!def) {
      def = match_definition(m, p);
      if (def) continue;
    }
    rest.push_back(m);
  }
  if (!def)
    throw Error(ErrorCode::Shape,
                "no definition clause for '" + p + "' found");
  std::set<std::string> context = free_symbols(def->second).vars;
  context.erase(def->first);
  Formulas out;
  std::set<std::string> bound;
  for (const Formula& m : rest)
    out.push_back(expand_atoms(m, p, def->first, def->second, context, bound));
  return mk_and(std::move(out));
}

// ---------------------------------------------------------------------------
// Ackermann's lemma.

namespace {

Formula ackermann_replace(const Formula& f, const std::string& p,
                          bool want_positive, bool positive,
                          const std::string& x, const Formula& g,
                          const std::set<std::string>& context,
                          std::set<std::string>& bound) {
  if (f.kind() == Kind::Atom && f.name() == p) {
    if (f.args().size() != 1)
      throw Error(ErrorCode::Arity,
                  "eliminated predicate '" + p + "' used with arity " +
                      std::to_string(f.args().size()));
    if (positive != want_positive)
      throw Error(ErrorCode::Polarity,
                  "occurrence of '" + p + "' has the wrong polarity for "
                  "this definition direction");
    for (const std::string& v : context)
      if (bound.count(v))
        throw Error(ErrorCode::Capture,
                    "free variable '" + v +
                        "' of the definiens is bound at an occurrence");
    return substitute(g, x, f.args()[0]);
  }
  if (is_pred_quantifier(f.kind()) && f.name() == p) return f;
  if (f.kind() == Kind::Not) {
    return mk_not(ackermann_replace(f.child(0), p, want_positive, !positive,
                                    x, g, context, bound));
  }
  if (is_individual_quantifier(f.kind())) {
    bool added = bound.insert(f.name()).second;
    Formula body = ackermann_replace(f.child(0), p, want_positive, positive,
                                     x, g, context, bound);
    if (added) bound.erase(f.name());
    return map_children(f, [&](const Formula&) { return body; });
  }
  return map_children(f, [&](const Formula& k) {
    return ackermann_replace(k, p, want_positive, positive, x, g, context,
                             bound);
  });
}

}  // namespace

Formula ackermann_lemma_elim(const std::string& p, DefDirection dir,
                             const std::string& x, const Formula& g,
                             const Formula& f) {
  if (occurs_pred(g, p))
    throw Error(ErrorCode::EliminandInDefiniens,
                "'" + p + "' occurs in its own definiens");
  std::set<std::string> context = free_symbols(g).vars;
  context.erase(x);
  std::set<std::string> bound;
  return ackermann_replace(f, p, dir == DefDirection::Imp, true, x, g,
                           context, bound);
}

// ---------------------------------------------------------------------------
// Quantifier switching.

namespace {

void check_switch_shape(const Formula& f, const std::string& p,
                        const std::string& x) {
  if (is_individual_quantifier(f.kind()) && f.name() == x)
    throw Error(ErrorCode::Shape,
                "switched variable '" + x + "' is rebound in the matrix");
  if (is_pred_quantifier(f.kind()) && f.name() == p)
    throw Error(ErrorCode::Shape,
                "predicate '" + p + "' is rebound in the matrix");
  if (f.kind() == Kind::Atom && f.name() == p) {
    if (f.args().empty() || !(f.args()[0] == Term::var(x)))
      throw Error(ErrorCode::Shape,
                  "occurrence of '" + p + "' lacks '" + x +
                      "' in first argument position: " + print(f));
  }
  for (const Formula& k : f.kids()) check_switch_shape(k, p, x);
}

Formula switch_atoms(const Formula& f, const std::string& p,
                     const std::string& q) {
  if (f.kind() == Kind::Atom && f.name() == p) {
    std::vector<Term> args(f.args().begin() + 1, f.args().end());
    return mk_atom(q, std::move(args));
  }
  return map_children(
      f, [&](const Formula& k) { return switch_atoms(k, p, q); });
}

}  // namespace

Formula quantifier_switch(const std::string& p, const std::string& x,
                          const Formula& f) {
  auto fs = free_symbols(f);
  auto it = fs.preds.find(p);
  if (it == fs.preds.end()) return mk_forall(x, f);
  if (it->second < 1)
    throw Error(ErrorCode::Shape,
                "'" + p + "' is nullary and cannot carry the switched "
                "variable");
  check_switch_shape(f, p, x);
  FreshNames names(f);
  names.reserve(p);
  names.reserve(x);
  const std::string q = names.fresh("q");
  return mk_forall(x,
                   mk_exists_pred(q, it->second - 1, switch_atoms(f, p, q)));
}

// ---------------------------------------------------------------------------
// Monadic shorthand encoding.

namespace {

struct AtomPattern {
  std::string pred;
  int hole = -1;            // abstracted argument position; -1: fully fixed
  std::vector<Term> args;   // original arguments (hole slot included)

  bool same(const AtomPattern& o) const {
    if (pred != o.pred || hole != o.hole || args.size() != o.args.size())
      return false;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (static_cast<int>(i) == hole) continue;
      if (!(args[i] == o.args[i])) return false;
    }
    return true;
  }
};

struct Encoder {
  std::string phi;
  std::vector<std::pair<AtomPattern, std::string>> table;  // pattern -> name
  FreshNames names;
  bool failed = false;

  std::string shorthand_for(const AtomPattern& pat) {
    for (auto& [known, name] : table)
      if (known.same(pat)) return name;
    std::string name = names.fresh(pat.pred);
    table.emplace_back(pat, name);
    return name;
  }
};

// Computes the pattern of one polyadic atom occurrence; fails when more
// than one argument is a locally bound variable.
std::optional<AtomPattern> pattern_of(const Formula& atom,
                                      const std::set<std::string>& bound) {
  AtomPattern pat;
  pat.pred = atom.name();
  pat.args = atom.args();
  for (std::size_t i = 0; i < pat.args.size(); ++i) {
    const Term& t = pat.args[i];
    if (t.kind == TermKind::Var && bound.count(t.name)) {
      if (pat.hole >= 0) return std::nullopt;
      pat.hole = static_cast<int>(i);
    }
  }
  return pat;
}

// First pass: collect the patterns of the eliminand's occurrences.
void scan_eliminand(const Formula& f, const std::string& phi,
                    std::set<std::string>& bound,
                    std::vector<AtomPattern>& with_hole,
                    std::vector<AtomPattern>& fixed, bool& fail) {
  if (fail) return;
  if (f.kind() == Kind::Atom && f.name() == phi && f.args().size() >= 2) {
    auto pat = pattern_of(f, bound);
    if (!pat) {
      fail = true;
      return;
    }
    auto& dest = pat->hole >= 0 ? with_hole : fixed;
    bool known = false;
    for (const auto& known_pat : dest)
      if (known_pat.same(*pat)) known = true;
    if (!known) dest.push_back(*pat);
    return;
  }
  if (is_individual_quantifier(f.kind())) {
    bool added = bound.insert(f.name()).second;
    for (const Formula& k : f.kids())
      scan_eliminand(k, phi, bound, with_hole, fixed, fail);
    if (added) bound.erase(f.name());
    return;
  }
  for (const Formula& k : f.kids())
    scan_eliminand(k, phi, bound, with_hole, fixed, fail);
}

// Fits a fully fixed eliminand atom into one of the hole patterns: the
// arguments must agree outside the hole slot.
std::optional<std::pair<std::size_t, Term>> fit_fixed(
    const AtomPattern& fixed, const std::vector<AtomPattern>& pats) {
  for (std::size_t i = 0; i < pats.size(); ++i) {
    const AtomPattern& p = pats[i];
    if (p.args.size() != fixed.args.size()) continue;
    bool ok = true;
    for (std::size_t j = 0; j < p.args.size(); ++j) {
      if (static_cast<int>(j) == p.hole) continue;
      if (!(p.args[j] == fixed.args[j])) ok = false;
    }
    if (ok) return std::make_pair(i, fixed.args[static_cast<std::size_t>(p.hole)]);
  }
  return std::nullopt;
}

Formula encode_rec(const Formula& f, Encoder& enc,
                   const std::vector<AtomPattern>& phi_pats,
                   const std::vector<std::string>& phi_names,
                   std::set<std::string>& bound) {
  if (enc.failed) return f;
  if (f.kind() == Kind::Atom && f.args().size() >= 2) {
    auto pat = pattern_of(f, bound);
    if (!pat) {
      enc.failed = true;
      return f;
    }
    if (f.name() == enc.phi) {
      if (pat->hole >= 0) {
        for (std::size_t i = 0; i < phi_pats.size(); ++i)
          if (phi_pats[i].same(*pat))
            return mk_atom(phi_names[i],
                           pat->args[static_cast<std::size_t>(pat->hole)]);
        enc.failed = true;
        return f;
      }
      auto fit = fit_fixed(*pat, phi_pats);
      if (fit) return mk_atom(phi_names[fit->first], fit->second);
      if (phi_pats.empty())
        return mk_atom(enc.shorthand_for(*pat), std::vector<Term>{});
      enc.failed = true;
      return f;
    }
    std::string name = enc.shorthand_for(*pat);
    if (pat->hole >= 0)
      return mk_atom(name, pat->args[static_cast<std::size_t>(pat->hole)]);
    return mk_atom(name, std::vector<Term>{});
  }
  if (is_individual_quantifier(f.kind())) {
    bool added = bound.insert(f.name()).second;
    Formula body =
        encode_rec(f.child(0), enc, phi_pats, phi_names, bound);
    if (added) bound.erase(f.name());
    return map_children(f, [&](const Formula&) { return body; });
  }
  return map_children(f, [&](const Formula& k) {
    return encode_rec(k, enc, phi_pats, phi_names, bound);
  });
}

}  // namespace

std::optional<MonadizeResult> polyadic_monadize(const Formula& f,
                                                const std::string& phi) {
  if (has_pred_quantifier(f))
    throw Error(ErrorCode::Class,
                "the shorthand encoding needs a first-order body");

  auto fs = free_symbols(f);
  auto it = fs.preds.find(phi);
  const int phi_arity = it == fs.preds.end() ? -1 : it->second;

  Encoder enc;
  enc.phi = phi_arity >= 2 ? phi : std::string{};
  enc.names.absorb(f);
  enc.names.reserve(phi);

  std::vector<AtomPattern> phi_pats, phi_fixed;
  if (phi_arity >= 2) {
    std::set<std::string> bound;
    bool fail = false;
    scan_eliminand(f, phi, bound, phi_pats, phi_fixed, fail);
    if (fail) return std::nullopt;
    if (phi_pats.size() > 2) return std::nullopt;
    if (phi_pats.size() == 2) {
      const AtomPattern& p1 = phi_pats[0];
      const AtomPattern& p2 = phi_pats[1];
      // Two abstraction patterns are only admitted when they abstract
      // different positions and agree on every other argument, so that they
      // overlap in exactly one instance (tied below by the linking
      // constraint). Same-position patterns can overlap on whole families
      // of instances and stay out of reach of this encoding.
      if (p1.hole == p2.hole || p1.args.size() != p2.args.size())
        return std::nullopt;
      for (std::size_t j = 0; j < p1.args.size(); ++j) {
        if (static_cast<int>(j) == p1.hole || static_cast<int>(j) == p2.hole)
          continue;
        if (!(p1.args[j] == p2.args[j])) return std::nullopt;
      }
    }
    // Fully fixed occurrences must be expressible in one of the patterns.
    for (const AtomPattern& fx : phi_fixed) {
      if (phi_pats.empty()) {
        if (!(phi_fixed.size() == 1)) return std::nullopt;
      } else if (!fit_fixed(fx, phi_pats)) {
        return std::nullopt;
      }
    }
  }

  std::vector<std::string> phi_names;
  for (std::size_t i = 0; i < phi_pats.size(); ++i)
    phi_names.push_back(enc.names.fresh(phi));

  std::set<std::string> bound;
  Formula body = encode_rec(f, enc, phi_pats, phi_names, bound);
  if (enc.failed) return std::nullopt;

  MonadizeResult out;
  if (phi_arity >= 2) {
    out.eliminands = phi_names;
    for (const auto& [pat, name] : enc.table)
      if (pat.pred == phi && pat.hole < 0) out.eliminands.push_back(name);
  } else if (phi_arity >= 0) {
    out.eliminands.push_back(phi);
  }
  if (phi_pats.size() == 2) {
    // The single common instance, expressed in both shorthands.
    Term s = phi_pats[1].args[static_cast<std::size_t>(phi_pats[0].hole)];
    Term t = phi_pats[0].args[static_cast<std::size_t>(phi_pats[1].hole)];
    Formula a1 = mk_atom(phi_names[0], s);
    Formula a2 = mk_atom(phi_names[1], t);
    Formula link = mk_or({mk_and({a1, a2}), mk_and({mk_not(a1), mk_not(a2)})});
    body = mk_and({std::move(body), std::move(link)});
  }
  out.body = std::move(body);
  for (const auto& [pat, name] : enc.table) {
    if (pat.pred == phi) continue;
    DecodeEntry e;
    e.shorthand = name;
    e.pred = pat.pred;
    e.args = pat.args;
    e.hole = pat.hole;
    out.decode.push_back(std::move(e));
  }
  return out;
}

Formula monadize_decode(const Formula& f,
                        const std::vector<DecodeEntry>& decode) {
  if (f.kind() == Kind::Atom) {
    for (const DecodeEntry& e : decode) {
      if (f.name() != e.shorthand) continue;
      std::vector<Term> args = e.args;
      if (e.hole >= 0) {
        if (f.args().size() != 1)
          throw Error(ErrorCode::Arity, "shorthand '" + e.shorthand +
                                            "' used with arity " +
                                            std::to_string(f.args().size()));
        args[static_cast<std::size_t>(e.hole)] = f.args()[0];
      } else if (!f.args().empty()) {
        throw Error(ErrorCode::Arity, "shorthand '" + e.shorthand +
                                          "' used with arity " +
                                          std::to_string(f.args().size()));
      }
      return mk_atom(e.pred, std::move(args));
    }
    return f;
  }
  return map_children(
      f, [&](const Formula& k) { return monadize_decode(k, decode); });
}

}  // namespace monel

#include "monel/counting.hpp"

#include <algorithm>
#include <utility>

#include "monel/error.hpp"
#include "monel/syntax.hpp"

namespace monel {

namespace {

bool is_tv(const Formula& f) {
  return f.kind() == Kind::True || f.kind() == Kind::False;
}

std::vector<Formula> members(const Formula& f, Kind connective) {
  if (f.kind() == connective) return f.kids();
  return {f};
}

void check_count(int n) {
  if (n < 1)
    throw Error(ErrorCode::BadCount,
                "counting quantifier needs a positive count, got " +
                    std::to_string(n));
}

// Shared validation for ndt and eliminate_guarded_exists: the terms must be
// pairwise distinct, differ from the bound variable, and not occur in the
// body.
void check_guard_terms(const Formula& body, const std::string& x,
                       const std::vector<Term>& terms) {
  Term xt = Term::var(x);
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] == xt)
      throw Error(ErrorCode::BadArgs,
                  "guard term equals the bound variable " + x);
    if (occurs_term(body, terms[i]))
      throw Error(ErrorCode::BadArgs,
                  "guard term " + print(terms[i]) + " occurs in the body");
    for (size_t j = 0; j < i; ++j)
      if (terms[i] == terms[j])
        throw Error(ErrorCode::BadArgs,
                    "duplicate guard term " + print(terms[i]));
  }
}

}  // namespace

// --------------------------------------------------------------------------
// First-order expansions of counting quantifiers
// --------------------------------------------------------------------------

Formula expand_exists_counting(int n, const std::string& x, const Formula& body,
                               ExpandMode mode, FreshNames& names) {
  check_count(n);
  names.reserve(x);
  if (mode == ExpandMode::Poly) {
    std::vector<std::string> xs;
    for (int i = 0; i < n; ++i) xs.push_back(names.fresh(x));
    std::vector<Formula> parts;
    for (const std::string& xi : xs)
      parts.push_back(substitute(body, x, Term::var(xi)));
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j)
        parts.push_back(mk_neq(Term::var(xs[i]), Term::var(xs[j])));
    Formula out = mk_and(std::move(parts));
    for (int i = n - 1; i >= 0; --i) out = mk_exists(xs[i], out);
    return out;
  }
  // Lin: forall x1..x_{n-1} exists x (F[x] & /\ x != xi), keeping x inside.
  std::vector<std::string> xs;
  for (int i = 0; i < n - 1; ++i) xs.push_back(names.fresh(x));
  std::vector<Formula> parts{body};
  for (const std::string& xi : xs)
    parts.push_back(mk_neq(Term::var(x), Term::var(xi)));
  Formula out = mk_exists(x, mk_and(std::move(parts)));
  for (int i = n - 2; i >= 0; --i) out = mk_forall(xs[i], out);
  return out;
}

Formula expand_exists_counting(int n, const std::string& x, const Formula& body,
                               ExpandMode mode) {
  FreshNames names(body);
  return expand_exists_counting(n, x, body, mode, names);
}

Formula expand_forall_counting(int n, const std::string& x, const Formula& body,
                               ExpandMode mode, FreshNames& names) {
  check_count(n);
  names.reserve(x);
  if (mode == ExpandMode::Poly) {
    std::vector<std::string> xs;
    for (int i = 0; i < n; ++i) xs.push_back(names.fresh(x));
    std::vector<Formula> parts;
    for (const std::string& xi : xs)
      parts.push_back(substitute(body, x, Term::var(xi)));
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = i + 1; j < xs.size(); ++j)
        parts.push_back(mk_eq(Term::var(xs[i]), Term::var(xs[j])));
    Formula out = mk_or(std::move(parts));
    for (int i = n - 1; i >= 0; --i) out = mk_forall(xs[i], out);
    return out;
  }
  // Lin: exists x1..x_{n-1} forall x (F[x] | \/ x = xi).
  std::vector<std::string> xs;
  for (int i = 0; i < n - 1; ++i) xs.push_back(names.fresh(x));
  std::vector<Formula> parts{body};
  for (const std::string& xi : xs)
    parts.push_back(mk_eq(Term::var(x), Term::var(xi)));
  Formula out = mk_forall(x, mk_or(std::move(parts)));
  for (int i = n - 2; i >= 0; --i) out = mk_exists(xs[i], out);
  return out;
}

Formula expand_forall_counting(int n, const std::string& x, const Formula& body,
                               ExpandMode mode) {
  FreshNames names(body);
  return expand_forall_counting(n, x, body, mode, names);
}

// --------------------------------------------------------------------------
// Counting-specific simplification
// --------------------------------------------------------------------------

namespace {

// Absorption between quantifier members of one And/Or: in a conjunction the
// entailed member is redundant, in a disjunction the entailing one. Only
// pairs that involve a counting literal are touched here; the Boolean cases
// belong to clause_simplify and simplify.
void absorb_counting_members(std::vector<Formula>& ms, bool conjunction) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < ms.size() && !changed; ++i) {
      for (size_t j = 0; j < ms.size() && !changed; ++j) {
        if (i == j) continue;
        if (!is_individual_quantifier(ms[i].kind()) ||
            !is_individual_quantifier(ms[j].kind()))
          continue;
        if (!is_counting(ms[i].kind()) && !is_counting(ms[j].kind())) continue;
        if (!entails_syntactic(ms[i], ms[j])) continue;
        ms.erase(ms.begin() + static_cast<std::ptrdiff_t>(conjunction ? j : i));
        changed = true;
      }
    }
  }
}

}  // namespace

Formula counting_simplify(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Eq:
      return f;
    case Kind::Not:
      return mk_not(counting_simplify(f.child(0)));
    case Kind::And:
    case Kind::Or: {
      bool conjunction = f.kind() == Kind::And;
      std::vector<Formula> ms;
      for (const Formula& k : f.kids()) ms.push_back(counting_simplify(k));
      absorb_counting_members(ms, conjunction);
      return conjunction ? mk_and(std::move(ms)) : mk_or(std::move(ms));
    }
    case Kind::Forall:
      return mk_forall(f.name(), counting_simplify(f.child(0)));
    case Kind::Exists:
      return mk_exists(f.name(), counting_simplify(f.child(0)));
    case Kind::ForallPred:
      return mk_forall_pred(f.name(), f.pred_arity(),
                            counting_simplify(f.child(0)));
    case Kind::ExistsPred:
      return mk_exists_pred(f.name(), f.pred_arity(),
                            counting_simplify(f.child(0)));
    case Kind::AtLeast: {
      Formula b = counting_simplify(f.child(0));
      if (b.kind() == Kind::False) return mk_false();
      if (b.kind() == Kind::True && f.count() == 1) return mk_true();
      return mk_atleast(f.count(), f.name(), std::move(b));
    }
    case Kind::AllBut: {
      Formula b = counting_simplify(f.child(0));
      if (b.kind() == Kind::True) return mk_true();
      if (b.kind() == Kind::False && f.count() == 1) return mk_false();
      return mk_allbut(f.count(), f.name(), std::move(b));
    }
  }
  throw Error(ErrorCode::Internal, "counting_simplify: unknown kind");
}

// --------------------------------------------------------------------------
// No-distinct-terms schema and guarded existentials
// --------------------------------------------------------------------------

Formula ndt(const Formula& body, const std::string& x,
            const std::vector<Term>& terms, int m) {
  check_guard_terms(body, x, terms);
  int n = static_cast<int>(terms.size());
  if (m < 1 || m > n)
    throw Error(ErrorCode::BadArgs,
                "subset size " + std::to_string(m) + " not within 1.." +
                    std::to_string(n));
  // Enumerate the m-element subsets of terms in lexicographic index order.
  std::vector<Formula> clauses;
  std::vector<int> idx(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<size_t>(i)] = i;
  for (;;) {
    std::vector<Formula> ors;
    for (int i : idx)
      ors.push_back(mk_not(substitute(body, x, terms[static_cast<size_t>(i)])));
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = i + 1; j < idx.size(); ++j)
        ors.push_back(mk_eq(terms[static_cast<size_t>(idx[i])],
                            terms[static_cast<size_t>(idx[j])]));
    clauses.push_back(mk_or(std::move(ors)));
    // advance the combination
    int k = m - 1;
    while (k >= 0 && idx[static_cast<size_t>(k)] == n - m + k) --k;
    if (k < 0) break;
    ++idx[static_cast<size_t>(k)];
    for (int i = k + 1; i < m; ++i)
      idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
  }
  return mk_and(std::move(clauses));
}

Formula eliminate_guarded_exists(const Formula& body, const std::string& x,
                                 const std::vector<Term>& terms,
                                 GuardMode mode) {
  check_guard_terms(body, x, terms);
  int n = static_cast<int>(terms.size());
  if (n == 0) return mk_atleast(1, x, body);
  if (mode == GuardMode::Disj) {
    // \/_{1<=m<=n} (atleast m x. F & NDT(m))  |  atleast n+1 x. F
    std::vector<Formula> ds;
    for (int m = 1; m <= n; ++m)
      ds.push_back(mk_and({mk_atleast(m, x, body), ndt(body, x, terms, m)}));
    ds.push_back(mk_atleast(n + 1, x, body));
    return mk_or(std::move(ds));
  }
  // atleast 1 x. F  &  /\_{1<=m<=n} (atleast m+1 x. F | NDT(m))
  std::vector<Formula> cs{mk_atleast(1, x, body)};
  for (int m = 1; m <= n; ++m)
    cs.push_back(mk_or({mk_atleast(m + 1, x, body), ndt(body, x, terms, m)}));
  return mk_and(std::move(cs));
}

// --------------------------------------------------------------------------
// Counting-quantifier normal form
// --------------------------------------------------------------------------

namespace {

bool unary_literal_on(const Formula& f, const std::string& v) {
  const Formula& a = f.kind() == Kind::Not ? f.child(0) : f;
  return a.kind() == Kind::Atom && a.args().size() == 1 &&
         a.args()[0] == Term::var(v);
}

// Matrix of a counting literal in basic form: true, or a conjunction of
// pairwise different, pairwise non-complementary unary literals on v.
std::optional<std::string> matrix_violation(const Formula& m,
                                            const std::string& v) {
  if (m.kind() == Kind::True) return std::nullopt;
  std::vector<Formula> lits = members(m, Kind::And);
  for (size_t i = 0; i < lits.size(); ++i) {
    if (!unary_literal_on(lits[i], v))
      return "matrix member is not a unary literal on the bound variable: " +
             print(lits[i]);
    for (size_t j = 0; j < i; ++j) {
      if (lits[i] == lits[j])
        return "duplicate matrix literal: " + print(lits[i]);
      if (lits[i] == complement(lits[j]))
        return "complementary matrix literals: " + print(lits[j]) + " and " +
               print(lits[i]);
    }
  }
  return std::nullopt;
}

bool cqnf_basic(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      return f.args().size() <= 1;
    case Kind::Eq:
      return true;
    case Kind::AtLeast:
      return !matrix_violation(f.child(0), f.name()).has_value();
    default:
      return false;
  }
}

// Truth-value and counting identities to a fixpoint; used to tidy assembled
// results without touching their Boolean skeleton otherwise.
Formula light_simplify(const Formula& f) {
  Formula cur = f;
  for (;;) {
    Formula next = simplify_truth_values(counting_simplify(cur));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

// One disjunct of the scoped disjunctive normal form: a conjunction of basic
// literals whose bound variable is v. Produces an equivalent formula for
// exists v <disjunct> in which v is gone.
Formula scoped_conjunction(const Formula& d, const std::string& v,
                           GuardMode mode) {
  Term vt = Term::var(v);
  std::vector<Formula> cs;
  for (Formula c : members(d, Kind::And)) {
    // Reflexive (dis)equalities decide themselves; the rest are oriented so
    // that the bound variable comes first.
    if (c.kind() == Kind::Eq) {
      if (c.args()[0] == c.args()[1]) continue;  // t = t
      if (c.args()[1] == vt) c = mk_eq(vt, c.args()[0]);
    } else if (c.kind() == Kind::Not && c.child(0).kind() == Kind::Eq) {
      const Formula& e = c.child(0);
      if (e.args()[0] == e.args()[1]) return mk_false();  // t != t
      if (e.args()[1] == vt) c = mk_neq(vt, e.args()[0]);
    }
    cs.push_back(std::move(c));
  }
  // Complementary conjuncts are checked after orientation so that v = t and
  // t != v meet syntactically.
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = i + 1; j < cs.size(); ++j)
      if (cs[j] == complement(cs[i]) || cs[i] == complement(cs[j]))
        return mk_false();
  std::vector<Formula> uniq;
  for (const Formula& c : cs)
    if (std::find(uniq.begin(), uniq.end(), c) == uniq.end()) uniq.push_back(c);

  // Partition into unary literals on v, disequality guards v != t, positive
  // equalities v = u, and the v-free frame.
  std::vector<Formula> frame, lits, eqs;
  std::vector<Term> guards;
  for (const Formula& c : uniq) {
    if (unary_literal_on(c, v)) {
      lits.push_back(c);
    } else if (c.kind() == Kind::Eq && c.args()[0] == vt) {
      eqs.push_back(c);
    } else if (c.kind() == Kind::Not && c.child(0).kind() == Kind::Eq &&
               c.child(0).args()[0] == vt) {
      guards.push_back(c.child(0).args()[1]);
    } else if (!occurs_free_var(c, v)) {
      frame.push_back(c);
    } else {
      throw Error(ErrorCode::Internal,
                  "unexpected conjunct under a scoped existential: " + print(c));
    }
  }
  if (lits.empty() && eqs.empty() && guards.empty()) return mk_and(frame);
  if (!eqs.empty()) {
    // A positive equality names the witness: substitute its term everywhere.
    Term u1 = eqs[0].args()[1];
    std::vector<Formula> out = frame;
    for (const Formula& l : lits) out.push_back(substitute(l, v, u1));
    for (const Term& t : guards) out.push_back(mk_neq(u1, t));
    for (size_t i = 1; i < eqs.size(); ++i)
      out.push_back(mk_eq(u1, eqs[i].args()[1]));
    return mk_and(std::move(out));
  }
  std::vector<Formula> out = frame;
  out.push_back(eliminate_guarded_exists(mk_and(lits), v, guards, mode));
  return mk_and(std::move(out));
}

// exists v <Boolean combination of basics>  rewritten into an equivalent
// Boolean combination of basics.
Formula scoped_exists(const std::string& v, const Formula& body, GuardMode mode,
                      RewriteContext* ctx) {
  Formula dnf = to_dnf_over_basics(body, cqnf_basic, ctx);
  if (is_tv(dnf)) return dnf;  // domains are nonempty
  std::vector<Formula> out;
  for (const Formula& d : members(dnf, Kind::Or))
    out.push_back(scoped_conjunction(d, v, mode));
  return light_simplify(mk_or(std::move(out)));
}

Formula to_basics(const Formula& f, GuardMode mode, RewriteContext* ctx,
                  FreshNames& names);

// atleast n v <Boolean combination of basics> with n >= 2: keep the literal
// as a basic formula when its matrix fits form (d), otherwise lift the
// variable-free part out or fall back to the polynomial expansion.
Formula scoped_atleast(int n, const std::string& v, const Formula& body,
                       GuardMode mode, RewriteContext* ctx, FreshNames& names) {
  Formula m = to_dnf_over_basics(body, cqnf_basic, ctx);
  if (m.kind() == Kind::False) return mk_false();
  if (m.kind() == Kind::True) return mk_atleast(n, v, mk_true());
  if (!occurs_free_var(m, v))
    return light_simplify(mk_and({m, mk_atleast(n, v, mk_true())}));
  if (m.kind() != Kind::Or) {
    std::vector<Formula> stay, matrix;
    for (const Formula& l : members(m, Kind::And))
      (occurs_free_var(l, v) ? matrix : stay).push_back(l);
    bool pure = std::all_of(matrix.begin(), matrix.end(), [&](const Formula& l) {
      return unary_literal_on(l, v);
    });
    if (pure) {
      std::vector<Formula> uniq;
      for (const Formula& l : matrix) {
        for (const Formula& u : uniq)
          if (l == complement(u)) return mk_false();
        if (std::find(uniq.begin(), uniq.end(), l) == uniq.end())
          uniq.push_back(l);
      }
      Formula lit = mk_atleast(n, v, mk_and(std::move(uniq)));
      if (stay.empty()) return lit;
      stay.push_back(std::move(lit));
      return light_simplify(mk_and(std::move(stay)));
    }
  }
  // Equality on the bound variable or a disjunctive matrix: unfold the
  // counting quantifier into plain existentials and normalize those.
  Formula expanded = expand_exists_counting(n, v, m, ExpandMode::Poly, names);
  return to_basics(expanded, mode, ctx, names);
}

Formula to_basics(const Formula& f, GuardMode mode, RewriteContext* ctx,
                  FreshNames& names) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Eq:
      return f;
    case Kind::Not:
      return mk_not(to_basics(f.child(0), mode, ctx, names));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> ms;
      for (const Formula& k : f.kids())
        ms.push_back(to_basics(k, mode, ctx, names));
      return f.kind() == Kind::And ? mk_and(std::move(ms))
                                   : mk_or(std::move(ms));
    }
    case Kind::Exists:
      return scoped_exists(f.name(), to_basics(f.child(0), mode, ctx, names),
                           mode, ctx);
    case Kind::Forall: {
      Formula inner = to_basics(f.child(0), mode, ctx, names);
      return light_simplify(
          mk_not(scoped_exists(f.name(), mk_not(inner), mode, ctx)));
    }
    case Kind::AtLeast: {
      Formula inner = to_basics(f.child(0), mode, ctx, names);
      if (f.count() == 1) return scoped_exists(f.name(), inner, mode, ctx);
      return scoped_atleast(f.count(), f.name(), inner, mode, ctx, names);
    }
    case Kind::AllBut: {
      Formula inner = to_basics(f.child(0), mode, ctx, names);
      if (f.count() == 1)
        return light_simplify(
            mk_not(scoped_exists(f.name(), mk_not(inner), mode, ctx)));
      return light_simplify(mk_not(scoped_atleast(
          f.count(), f.name(), mk_not(inner), mode, ctx, names)));
    }
    default:
      throw Error(ErrorCode::Internal,
                  "predicate quantifier past the class check");
  }
}

}  // namespace

Formula counting_normal_form(const Formula& f, GuardMode mode,
                             RewriteContext* ctx) {
  FormulaClass c = classify(f);
  if (!class_leq(c, FormulaClass::MON_EQ))
    throw Error(ErrorCode::Class,
                std::string("counting normal form needs a monadic first-order "
                            "input, got class ") +
                    formula_class_name(c));
  FreshNames names(f);
  return light_simplify(to_basics(f, mode, ctx, names));
}

namespace {

Formula exists_for_atleast_one(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return f;
    case Kind::Not:
      return mk_not(exists_for_atleast_one(f.child(0)));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> ms;
      for (const Formula& k : f.kids()) ms.push_back(exists_for_atleast_one(k));
      return f.kind() == Kind::And ? mk_and(std::move(ms))
                                   : mk_or(std::move(ms));
    }
    case Kind::AtLeast:
      if (f.count() == 1) return mk_exists(f.name(), f.child(0));
      [[fallthrough]];
    default:
      throw Error(ErrorCode::Internal,
                  "equality-free normal form produced " + print(f));
  }
}

}  // namespace

Formula normal_form_noeq(const Formula& f, RewriteContext* ctx) {
  FormulaClass c = classify(f);
  if (!class_leq(c, FormulaClass::MON))
    throw Error(ErrorCode::Class,
                std::string("equality-free normal form needs a monadic input "
                            "without equality, got class ") +
                    formula_class_name(c));
  return exists_for_atleast_one(counting_normal_form(f, GuardMode::Conj, ctx));
}

std::optional<std::string> validate_cqnf(const Formula& f,
                                         bool allow_equality) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return std::nullopt;
    case Kind::Atom:
      if (f.args().size() > 1) return "atom of arity above one: " + print(f);
      return std::nullopt;
    case Kind::Eq:
      if (!allow_equality)
        return "equality in the equality-free normal form: " + print(f);
      return std::nullopt;
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
      for (const Formula& k : f.kids())
        if (auto v = validate_cqnf(k, allow_equality)) return v;
      return std::nullopt;
    case Kind::AtLeast:
      if (!allow_equality)
        return "counting literal in the equality-free normal form: " + print(f);
      return matrix_violation(f.child(0), f.name());
    case Kind::Exists:
      if (allow_equality)
        return "plain existential in counting normal form: " + print(f);
      return matrix_violation(f.child(0), f.name());
    default:
      return "quantifier not allowed in normal form: " + print(f);
  }
}

// --------------------------------------------------------------------------
// General cleanup
// --------------------------------------------------------------------------

namespace {

// Probe an equality-guard pullout at this quantifier; failures to match are
// not errors here.
Formula try_pullout(const Formula& q) {
  RuleId rule =
      q.kind() == Kind::Forall ? RuleId::PulloutAll : RuleId::PulloutEx;
  try {
    return apply_rule(q, rule, {}, Direction::R2L);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoMatch || e.code() == ErrorCode::SideCondition ||
        e.code() == ErrorCode::Capture)
      return q;
    throw;
  }
}

Formula simp_pass(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return f;
    case Kind::Eq:
      if (f.args()[0] == f.args()[1]) return mk_true();
      return f;
    case Kind::Not: {
      Formula b = simp_pass(f.child(0));
      if (b.kind() == Kind::True) return mk_false();
      if (b.kind() == Kind::False) return mk_true();
      if (b.kind() == Kind::Not) return b.child(0);
      return mk_not(std::move(b));
    }
    case Kind::And:
    case Kind::Or: {
      bool conjunction = f.kind() == Kind::And;
      Kind unit = conjunction ? Kind::True : Kind::False;
      Kind zero = conjunction ? Kind::False : Kind::True;
      std::vector<Formula> ms;
      for (const Formula& k : f.kids()) {
        Formula s = simp_pass(k);
        if (s.kind() == zero) return s;
        if (s.kind() == unit) continue;
        ms.push_back(std::move(s));
      }
      Formula built = conjunction ? mk_and(std::move(ms)) : mk_or(std::move(ms));
      if (built.kind() != f.kind()) return built;
      ms = built.kids();
      std::vector<Formula> uniq;
      for (const Formula& m : ms) {
        for (const Formula& u : uniq)
          if (m == complement(u)) return conjunction ? mk_false() : mk_true();
        if (std::find(uniq.begin(), uniq.end(), m) == uniq.end())
          uniq.push_back(m);
      }
      // absorption: a conjunction drops entailed members, a disjunction
      // drops entailing ones
      bool changed = true;
      while (changed) {
        changed = false;
        for (size_t i = 0; i < uniq.size() && !changed; ++i)
          for (size_t j = 0; j < uniq.size() && !changed; ++j) {
            if (i == j) continue;
            if (!entails_syntactic(uniq[i], uniq[j])) continue;
            uniq.erase(uniq.begin() +
                       static_cast<std::ptrdiff_t>(conjunction ? j : i));
            changed = true;
          }
      }
      return conjunction ? mk_and(std::move(uniq)) : mk_or(std::move(uniq));
    }
    case Kind::Forall:
    case Kind::Exists: {
      Formula b = simp_pass(f.child(0));
      if (is_tv(b)) return b;
      if (!occurs_free_var(b, f.name())) return b;
      Formula q = f.kind() == Kind::Forall ? mk_forall(f.name(), std::move(b))
                                           : mk_exists(f.name(), std::move(b));
      Formula pulled = try_pullout(q);
      if (!(pulled == q)) return simp_pass(pulled);
      return q;
    }
    case Kind::AtLeast: {
      Formula b = simp_pass(f.child(0));
      if (b.kind() == Kind::False) return mk_false();
      if (b.kind() == Kind::True && f.count() == 1) return mk_true();
      if (f.count() == 1 && !occurs_free_var(b, f.name())) return b;
      return mk_atleast(f.count(), f.name(), std::move(b));
    }
    case Kind::AllBut: {
      Formula b = simp_pass(f.child(0));
      if (b.kind() == Kind::True) return mk_true();
      if (b.kind() == Kind::False && f.count() == 1) return mk_false();
      if (f.count() == 1 && !occurs_free_var(b, f.name())) return b;
      return mk_allbut(f.count(), f.name(), std::move(b));
    }
    case Kind::ForallPred:
    case Kind::ExistsPred: {
      Formula b = simp_pass(f.child(0));
      if (is_tv(b)) return b;
      if (!occurs_pred(b, f.name())) return b;
      return f.kind() == Kind::ForallPred
                 ? mk_forall_pred(f.name(), f.pred_arity(), std::move(b))
                 : mk_exists_pred(f.name(), f.pred_arity(), std::move(b));
    }
  }
  throw Error(ErrorCode::Internal, "simplify: unknown kind");
}

}  // namespace

Formula simplify(const Formula& f) {
  Formula cur = f;
  for (int round = 0; round < 64; ++round) {
    Formula next = counting_simplify(simp_pass(cur));
    if (next == cur) return cur;
    cur = std::move(next);
  }
  return cur;
}

}  // namespace monel

#include "monel/rewrite.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "monel/syntax.hpp"

namespace monel {

namespace {

struct RuleInfo {
  RuleId id;
  const char* name;
  const char* label;
  bool entailment;
};

const RuleInfo kRules[] = {
    {RuleId::NotNot, "not-not", "I", false},
    {RuleId::NotAnd, "not-and", "VI", false},
    {RuleId::NotOr, "not-or", "VI", false},
    {RuleId::NotAll, "not-all", "VI*", false},
    {RuleId::NotEx, "not-ex", "VI*", false},
    {RuleId::AoAssoc, "ao-assoc", "II", false},
    {RuleId::AoComm, "ao-comm", "III", false},
    {RuleId::AoIdem, "ao-idem", "IV", false},
    {RuleId::TvNotT, "tv-not-t", "tv-not-t", false},
    {RuleId::TvNotF, "tv-not-f", "tv-not-f", false},
    {RuleId::TvAndT, "tv-and-t", "tv-and-t", false},
    {RuleId::TvAndF, "tv-and-f", "tv-and-f", false},
    {RuleId::TvOrT, "tv-or-t", "tv-or-t", false},
    {RuleId::TvOrF, "tv-or-f", "tv-or-f", false},
    {RuleId::TvQT, "tv-q-t", "tv-q-t", false},
    {RuleId::TvQF, "tv-q-f", "tv-q-f", false},
    {RuleId::ComplemAnd, "complem-and", "complem-and", false},
    {RuleId::ComplemOr, "complem-or", "complem-or", false},
    {RuleId::DistDnf, "dist-dnf", "VII", false},
    {RuleId::DistCnf, "dist-cnf", "VII", false},
    {RuleId::AllOutAnd, "all-out-and", "IV*", false},
    {RuleId::ExOutOr, "ex-out-or", "IV*", false},
    {RuleId::QOutAo, "q-out-ao", "II*", false},
    {RuleId::QuantDrop, "quant-drop", "quant-drop", false},
    {RuleId::QuantFlip, "quant-flip", "III*", false},
    {RuleId::VarRename, "var-rename", "var-rename", false},
    {RuleId::SubsAndAbsorp, "subs-and-absorp", "X", false},
    {RuleId::SubsOrAbsorp, "subs-or-absorp", "X", false},
    {RuleId::Taut, "taut", "taut", false},
    {RuleId::Subs, "subs", "IX", false},
    {RuleId::Unit, "unit", "IX", false},
    {RuleId::PulloutAll, "pullout-all", "XI", false},
    {RuleId::PulloutEx, "pullout-ex", "XI", false},
    {RuleId::InfV, "inf-v", "V", true},
    {RuleId::InfVQ, "inf-v-q", "V*", true},
    {RuleId::InfVbarPos, "inf-vbar-pos", "Vbar", true},
    {RuleId::InfVbarNeg, "inf-vbar-neg", "Vbar", true},
    {RuleId::InfVbarPosStar, "inf-vbar-pos-star", "Vbar*", true},
    {RuleId::InfVbarNegStar, "inf-vbar-neg-star", "Vbar*", true},
};

const RuleInfo& info(RuleId r) { return kRules[static_cast<int>(r)]; }

Error no_match(RuleId r, const char* why) {
  return Error(ErrorCode::NoMatch, std::string(rule_name(r)) + ": " + why);
}

bool is_tv(Kind k) { return k == Kind::True || k == Kind::False; }

Formulas erase_index(const Formulas& ms, std::size_t idx) {
  Formulas out;
  out.reserve(ms.size() - 1);
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (i != idx) out.push_back(ms[i]);
  return out;
}

bool contains(const Formulas& ms, const Formula& f) {
  return std::find(ms.begin(), ms.end(), f) != ms.end();
}

std::optional<std::size_t> index_of_kind(const Formulas& ms, Kind k) {
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (ms[i].kind() == k) return i;
  return std::nullopt;
}

// complement(ms[i]) == ms[j] covers both orders of a complementary pair.
std::optional<std::pair<std::size_t, std::size_t>> complementary_pair(
    const Formulas& ms) {
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      if (complement(ms[i]) == ms[j]) return std::make_pair(i, j);
  return std::nullopt;
}

Formula make_ao(Kind k, Formulas ms) {
  return k == Kind::And ? mk_and(std::move(ms)) : mk_or(std::move(ms));
}

Formula rebuild_quant(const Formula& q, Formula body) {
  switch (q.kind()) {
    case Kind::Forall: return mk_forall(q.name(), std::move(body));
    case Kind::Exists: return mk_exists(q.name(), std::move(body));
    case Kind::AtLeast: return mk_atleast(q.count(), q.name(), std::move(body));
    case Kind::AllBut: return mk_allbut(q.count(), q.name(), std::move(body));
    case Kind::ForallPred:
      return mk_forall_pred(q.name(), q.pred_arity(), std::move(body));
    case Kind::ExistsPred:
      return mk_exists_pred(q.name(), q.pred_arity(), std::move(body));
    default:
      throw Error(ErrorCode::Internal, "rebuild_quant: not a quantifier");
  }
}

// Free occurrence test matching the binder's role: variable name for
// individual quantifiers, predicate name for predicate quantifiers.
bool binder_occurs_free(const Formula& q, const Formula& in) {
  if (is_pred_quantifier(q.kind()))
    return free_symbols(in).preds.count(q.name()) != 0;
  return occurs_free_var(in, q.name());
}

std::string strip_digits(const std::string& s) {
  std::size_t end = s.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(s[end - 1]))) --end;
  std::string stem = s.substr(0, end);
  return stem.empty() ? "v" : stem;
}

// Clause machinery. For a Cnf matrix the matrix node is And and clauses are
// Or nodes or single literals; Dnf is the mirror image.
std::vector<Formula> clause_literals(const Formula& clause, Kind clause_kind) {
  if (clause.kind() == clause_kind) return clause.kids();
  return {clause};
}

using LitSet = std::set<Formula, FormulaLess>;

LitSet literal_set(const Formula& clause, Kind clause_kind) {
  LitSet s;
  for (const Formula& l : clause_literals(clause, clause_kind)) s.insert(l);
  return s;
}

bool clause_tautological(const Formula& clause, Kind clause_kind) {
  auto lits = clause_literals(clause, clause_kind);
  return complementary_pair(lits).has_value();
}

// Preorder search for an occurrence of g with the wanted polarity (+1 or -1)
// that is not inside the scope of a binder whose name belongs to `rigid`
// (the free symbols of the formulas being exchanged, minus any explicitly
// quantified ones). Subtrees under such binders are skipped entirely.
std::optional<Path> find_polar_occurrence(const Formula& f, const Formula& g,
                                          int want,
                                          const std::set<std::string>& rigid) {
  std::optional<Path> res;
  Path cur;
  auto go = [&](auto&& self, const Formula& node, int sign) -> bool {
    if (sign == want && node == g) {
      res = cur;
      return true;
    }
    if (is_quantifier(node.kind()) && rigid.count(node.name())) return false;
    int child_sign = node.kind() == Kind::Not ? -sign : sign;
    for (std::size_t i = 0; i < node.num_children(); ++i) {
      cur.push_back(static_cast<int>(i));
      if (self(self, node.child(i), child_sign)) return true;
      cur.pop_back();
    }
    return false;
  };
  go(go, f, +1);
  return res;
}

std::set<std::string> rigid_names(const Formula& g, const Formula& h,
                                  const std::set<std::string>& quantified) {
  std::set<std::string> rigid;
  for (const Formula* p : {&g, &h}) {
    FreeSymbols fs = free_symbols(*p);
    for (const auto& v : fs.vars)
      if (!quantified.count(v)) rigid.insert(v);
    for (const auto& [name, arity] : fs.preds) rigid.insert(name);
  }
  return rigid;
}

// Shared body of the four substitution entailments. The last conjunct is the
// implication disjunction, the remaining members form the frame the exchange
// happens in. `positive` selects the polarity of the exchanged occurrence;
// `quantified` lists variables that a universal prefix on the implication
// conjunct closes over.
Formula inf_vbar(RuleId r, const Formula& frame, bool positive,
                 const std::set<std::string>& quantified,
                 const Formula& implication) {
  if (implication.kind() != Kind::Or || implication.num_children() < 2)
    throw no_match(r, "last conjunct is not a disjunction");
  Formulas ms = implication.kids();
  Formula g, h;
  if (positive) {
    // (~G | H): the exchanged subformula is under the leading negation
    if (ms[0].kind() != Kind::Not)
      throw no_match(r, "leading disjunct is not negated");
    g = ms[0].child(0);
    h = mk_or(erase_index(ms, 0));
  } else {
    // (G | ~H): G leads, the remainder is ~H
    g = ms[0];
    Formula rest = mk_or(erase_index(ms, 0));
    h = complement(rest);
  }
  auto occ = find_polar_occurrence(frame, g, positive ? +1 : -1,
                                   rigid_names(g, h, quantified));
  if (!occ)
    throw no_match(r, "no occurrence of the exchanged subformula");
  return replace_at(frame, *occ, h);
}

Formula apply_local(const Formula& s, RuleId r, Direction dir,
                    const Formula& root);

}  // namespace

const char* rule_name(RuleId r) { return info(r).name; }
const char* rule_label(RuleId r) { return info(r).label; }
bool rule_is_entailment(RuleId r) { return info(r).entailment; }

std::string to_text(const Trace& t) {
  std::ostringstream os;
  for (const RewriteStep& s : t.steps) {
    os << rule_label(s.rule) << " @ root";
    for (int i : s.position) os << '.' << i;
    os << ' ' << (s.direction == Direction::L2R ? "L2R" : "R2L");
    if (s.dualized) os << " (dualized)";
    os << '\n';
    os << "  before: " << print(s.before) << '\n';
    os << "  after:  " << print(s.after) << '\n';
  }
  return os.str();
}

Formula apply_rule(const Formula& root, RuleId rule, const Path& position,
                   Direction direction, bool dualized) {
  if (rule_is_entailment(rule)) {
    if (direction == Direction::R2L)
      throw Error(ErrorCode::EntailmentReversed,
                  std::string(rule_name(rule)) +
                      ": entailments cannot be applied right to left");
    if (dualized)
      throw Error(ErrorCode::EntailmentReversed,
                  std::string(rule_name(rule)) +
                      ": dualizing an entailment reverses it");
  }
  Formula s = subformula_at(root, position);
  Formula out = dualized ? dual(apply_local(dual(s), rule, direction, dual(root)))
                         : apply_local(s, rule, direction, root);
  return replace_at(root, position, out);
}

namespace {

Formula local_not_all_not_ex(RuleId r, const Formula& s, Direction dir) {
  // NotAll: ~forall == exists ~ ; NotEx: ~exists == forall ~ .
  // The counting forms pair AllBut with AtLeast.
  bool all = r == RuleId::NotAll;
  if (dir == Direction::L2R) {
    if (s.kind() != Kind::Not) throw no_match(r, "not a negation");
    const Formula& q = s.child(0);
    if (!is_quantifier(q.kind()))
      throw no_match(r, "negation does not cover a quantifier");
    Formula nb = mk_not(q.child(0));
    if (all) {
      switch (q.kind()) {
        case Kind::Forall: return mk_exists(q.name(), std::move(nb));
        case Kind::AllBut:
          return mk_atleast(q.count(), q.name(), std::move(nb));
        case Kind::ForallPred:
          return mk_exists_pred(q.name(), q.pred_arity(), std::move(nb));
        default: throw no_match(r, "not a negated universal");
      }
    }
    switch (q.kind()) {
      case Kind::Exists: return mk_forall(q.name(), std::move(nb));
      case Kind::AtLeast: return mk_allbut(q.count(), q.name(), std::move(nb));
      case Kind::ExistsPred:
        return mk_forall_pred(q.name(), q.pred_arity(), std::move(nb));
      default: throw no_match(r, "not a negated existential");
    }
  }
  // R2L requires the body to be a literal negation node.
  if (s.num_children() != 1 || s.child(0).kind() != Kind::Not)
    throw no_match(r, "body is not a negation");
  Formula b = s.child(0).child(0);
  if (all) {
    switch (s.kind()) {
      case Kind::Exists: return mk_not(mk_forall(s.name(), std::move(b)));
      case Kind::AtLeast:
        return mk_not(mk_allbut(s.count(), s.name(), std::move(b)));
      case Kind::ExistsPred:
        return mk_not(mk_forall_pred(s.name(), s.pred_arity(), std::move(b)));
      default: throw no_match(r, "not an existential quantifier");
    }
  }
  switch (s.kind()) {
    case Kind::Forall: return mk_not(mk_exists(s.name(), std::move(b)));
    case Kind::AllBut:
      return mk_not(mk_atleast(s.count(), s.name(), std::move(b)));
    case Kind::ForallPred:
      return mk_not(mk_exists_pred(s.name(), s.pred_arity(), std::move(b)));
    default: throw no_match(r, "not a universal quantifier");
  }
}

Formula local_dist(RuleId r, const Formula& s, Direction dir) {
  // DistDnf: F & (G | H) == (F & G) | (F & H); DistCnf mirrors.
  Kind outer = r == RuleId::DistDnf ? Kind::And : Kind::Or;
  Kind inner = r == RuleId::DistDnf ? Kind::Or : Kind::And;
  if (dir == Direction::L2R) {
    if (s.kind() != outer) throw no_match(r, "connective mismatch");
    auto idx = index_of_kind(s.kids(), inner);
    if (!idx) throw no_match(r, "no member to distribute over");
    Formulas out;
    for (const Formula& piece : s.child(*idx).kids()) {
      Formulas ms = s.kids();
      ms[*idx] = piece;
      out.push_back(make_ao(outer, std::move(ms)));
    }
    return make_ao(inner, std::move(out));
  }
  // Factoring: exactly two clauses sharing a member.
  if (s.kind() != inner || s.num_children() != 2)
    throw no_match(r, "not a two-member matrix");
  const Formula& c1 = s.child(0);
  const Formula& c2 = s.child(1);
  if (c1.kind() != outer || c2.kind() != outer)
    throw no_match(r, "members are not clauses");
  for (std::size_t i = 0; i < c1.num_children(); ++i) {
    const Formula& common = c1.child(i);
    for (std::size_t j = 0; j < c2.num_children(); ++j) {
      if (c2.child(j) == common) {
        Formula r1 = make_ao(outer, erase_index(c1.kids(), i));
        Formula r2 = make_ao(outer, erase_index(c2.kids(), j));
        Formulas rest{std::move(r1), std::move(r2)};
        return make_ao(outer, {common, make_ao(inner, std::move(rest))});
      }
    }
  }
  throw no_match(r, "no common member to factor");
}

Formula local_merge_quant(RuleId r, const Formula& s, Direction dir) {
  // AllOutAnd: forall v F & forall v G == forall v (F & G); ExOutOr mirrors.
  // Predicate quantifiers merge the same way.
  bool all = r == RuleId::AllOutAnd;
  Kind conn = all ? Kind::And : Kind::Or;
  if (dir == Direction::L2R) {
    if (s.kind() != conn) throw no_match(r, "connective mismatch");
    const Formula& first = s.child(0);
    Kind qk = first.kind();
    if (all ? (qk != Kind::Forall && qk != Kind::ForallPred)
            : (qk != Kind::Exists && qk != Kind::ExistsPred))
      throw no_match(r, "members are not matching quantifiers");
    Formulas bodies;
    for (const Formula& m : s.kids()) {
      if (m.kind() != qk || m.name() != first.name() ||
          m.pred_arity() != first.pred_arity())
        throw no_match(r, "members are not matching quantifiers");
      bodies.push_back(m.child(0));
    }
    return rebuild_quant(first, make_ao(conn, std::move(bodies)));
  }
  Kind qk = s.kind();
  if (all ? (qk != Kind::Forall && qk != Kind::ForallPred)
          : (qk != Kind::Exists && qk != Kind::ExistsPred))
    throw no_match(r, "quantifier mismatch");
  if (s.child(0).kind() != conn) throw no_match(r, "body is not split");
  Formulas out;
  for (const Formula& m : s.child(0).kids())
    out.push_back(rebuild_quant(s, m));
  return make_ao(conn, std::move(out));
}

Formula local_q_out_ao(RuleId r, const Formula& s, Direction dir) {
  // Qv F ox G == Qv (F ox G) when v is not free in G. Counting existentials
  // only cross conjunctions, counting universals only disjunctions.
  auto combo_ok = [&](Kind qk, Kind conn) {
    if (qk == Kind::AtLeast) return conn == Kind::And;
    if (qk == Kind::AllBut) return conn == Kind::Or;
    return is_quantifier(qk);
  };
  if (dir == Direction::L2R) {
    if (s.kind() != Kind::And && s.kind() != Kind::Or)
      throw no_match(r, "not a connective");
    const Formula& q = s.child(0);
    if (!is_quantifier(q.kind()) || !combo_ok(q.kind(), s.kind()))
      throw no_match(r, "leading member is not a movable quantifier");
    Formulas rest = erase_index(s.kids(), 0);
    for (const Formula& m : rest) {
      if (binder_occurs_free(q, m))
        throw Error(ErrorCode::SideCondition,
                    std::string(rule_name(r)) +
                        ": bound name occurs free in a sibling");
    }
    Formulas body{q.child(0)};
    body.insert(body.end(), rest.begin(), rest.end());
    return rebuild_quant(q, make_ao(s.kind(), std::move(body)));
  }
  if (!is_quantifier(s.kind())) throw no_match(r, "not a quantifier");
  const Formula& body = s.child(0);
  if (body.kind() != Kind::And && body.kind() != Kind::Or)
    throw no_match(r, "body is not a connective");
  if (!combo_ok(s.kind(), body.kind()))
    throw no_match(r, "counting quantifier cannot cross this connective");
  Formulas stay, move;
  for (const Formula& m : body.kids())
    (binder_occurs_free(s, m) ? move : stay).push_back(m);
  if (stay.empty() || move.empty())
    throw no_match(r, "nothing to narrow the scope to");
  Formula inner = rebuild_quant(s, make_ao(body.kind(), std::move(move)));
  stay.push_back(std::move(inner));
  return make_ao(body.kind(), std::move(stay));
}

Formula local_pullout(RuleId r, const Formula& s, Direction dir) {
  // PulloutAll R2L: forall x (x != t | F[x]) -> F[t]; PulloutEx mirrors with
  // exists / conjunction / equation. L2R is parameterized (the term and the
  // fresh variable are free choices) and is exposed as circumlocute instead.
  if (dir == Direction::L2R)
    throw no_match(r, "introduction direction is circumlocute");
  bool univ = r == RuleId::PulloutAll;
  if (s.kind() != (univ ? Kind::Forall : Kind::Exists))
    throw no_match(r, "quantifier mismatch");
  const std::string& x = s.name();
  auto guard_term = [&](const Formula& lit) -> std::optional<Term> {
    const Formula& eq = univ ? (lit.kind() == Kind::Not ? lit.child(0) : lit)
                             : lit;
    if (univ && lit.kind() != Kind::Not) return std::nullopt;
    if (eq.kind() != Kind::Eq) return std::nullopt;
    const Term& a = eq.args()[0];
    const Term& b = eq.args()[1];
    Term vx = Term::var(x);
    if (a == vx && !(b == vx)) return b;
    if (b == vx && !(a == vx)) return a;
    return std::nullopt;
  };
  const Formula& body = s.child(0);
  if (auto t = guard_term(body)) {
    (void)t;
    // the guard is the entire body: forall x (x != t) == false[t] etc.
    return univ ? mk_false() : mk_true();
  }
  Kind conn = univ ? Kind::Or : Kind::And;
  if (body.kind() != conn) throw no_match(r, "body has no guard literal");
  for (std::size_t i = 0; i < body.num_children(); ++i) {
    if (auto t = guard_term(body.child(i))) {
      Formula rest = make_ao(conn, erase_index(body.kids(), i));
      return substitute(rest, x, *t);
    }
  }
  throw no_match(r, "body has no guard literal");
}

Formula local_inf_v(RuleId r, const Formula& s) {
  // (F | G) & (H | ~G) entails F | H, resolving on the first complementary
  // pair across the two disjunctions.
  bool quantified = r == RuleId::InfVQ;
  Formula lhs = s, rhs = s;
  std::string var;
  if (s.kind() != Kind::And || s.num_children() != 2)
    throw no_match(r, "not a binary conjunction");
  lhs = s.child(0);
  rhs = s.child(1);
  if (quantified) {
    if (lhs.kind() != Kind::Forall || rhs.kind() != Kind::Forall ||
        lhs.name() != rhs.name())
      throw no_match(r, "conjuncts are not matching universals");
    var = lhs.name();
    lhs = lhs.child(0);
    rhs = rhs.child(0);
  }
  if (lhs.kind() != Kind::Or || rhs.kind() != Kind::Or)
    throw no_match(r, "conjuncts are not disjunctions");
  for (std::size_t i = 0; i < lhs.num_children(); ++i) {
    for (std::size_t j = 0; j < rhs.num_children(); ++j) {
      if (complement(lhs.child(i)) == rhs.child(j)) {
        Formulas out = erase_index(lhs.kids(), i);
        Formulas rr = erase_index(rhs.kids(), j);
        out.insert(out.end(), rr.begin(), rr.end());
        Formula res = mk_or(std::move(out));
        return quantified ? mk_forall(var, std::move(res)) : res;
      }
    }
  }
  throw no_match(r, "no complementary pair to resolve");
}

Formula apply_local(const Formula& s, RuleId r, Direction dir,
                    const Formula& root) {
  switch (r) {
    case RuleId::NotNot: {
      if (dir == Direction::L2R) {
        if (s.kind() != Kind::Not || s.child(0).kind() != Kind::Not)
          throw no_match(r, "not a double negation");
        return s.child(0).child(0);
      }
      return mk_not(mk_not(s));
    }

    case RuleId::NotAnd:
    case RuleId::NotOr: {
      Kind conn = r == RuleId::NotAnd ? Kind::And : Kind::Or;
      Kind dual_conn = r == RuleId::NotAnd ? Kind::Or : Kind::And;
      if (dir == Direction::L2R) {
        if (s.kind() != Kind::Not || s.child(0).kind() != conn)
          throw no_match(r, "not a negated connective");
        Formulas out;
        for (const Formula& m : s.child(0).kids()) out.push_back(mk_not(m));
        return make_ao(dual_conn, std::move(out));
      }
      if (s.kind() != dual_conn) throw no_match(r, "connective mismatch");
      Formulas inner;
      for (const Formula& m : s.kids()) {
        if (m.kind() != Kind::Not) throw no_match(r, "member not negated");
        inner.push_back(m.child(0));
      }
      return mk_not(make_ao(conn, std::move(inner)));
    }

    case RuleId::NotAll:
    case RuleId::NotEx:
      return local_not_all_not_ex(r, s, dir);

    case RuleId::AoAssoc: {
      // the flattened n-ary representation makes regrouping the identity
      if (s.kind() != Kind::And && s.kind() != Kind::Or)
        throw no_match(r, "not a connective");
      return s;
    }

    case RuleId::AoComm: {
      if (s.kind() != Kind::And && s.kind() != Kind::Or)
        throw no_match(r, "not a connective");
      Formulas ms = s.kids();
      std::reverse(ms.begin(), ms.end());
      return make_ao(s.kind(), std::move(ms));
    }

    case RuleId::AoIdem: {
      if (dir == Direction::R2L)
        throw no_match(r, "duplication target is unspecified");
      if (s.kind() != Kind::And && s.kind() != Kind::Or)
        throw no_match(r, "not a connective");
      Formulas out;
      for (const Formula& m : s.kids())
        if (!contains(out, m)) out.push_back(m);
      if (out.size() == s.num_children())
        throw no_match(r, "no duplicate member");
      return make_ao(s.kind(), std::move(out));
    }

    case RuleId::TvNotT: {
      if (dir == Direction::L2R) {
        if (s.kind() != Kind::Not || s.child(0).kind() != Kind::True)
          throw no_match(r, "not a negated verum");
        return mk_false();
      }
      if (s.kind() != Kind::False) throw no_match(r, "not falsum");
      return mk_not(mk_true());
    }
    case RuleId::TvNotF: {
      if (dir == Direction::L2R) {
        if (s.kind() != Kind::Not || s.child(0).kind() != Kind::False)
          throw no_match(r, "not a negated falsum");
        return mk_true();
      }
      if (s.kind() != Kind::True) throw no_match(r, "not verum");
      return mk_not(mk_false());
    }

    case RuleId::TvAndT:
    case RuleId::TvAndF:
    case RuleId::TvOrT:
    case RuleId::TvOrF: {
      if (dir == Direction::R2L)
        throw no_match(r, "insertion point is unspecified");
      bool conj = r == RuleId::TvAndT || r == RuleId::TvAndF;
      bool annihilate = r == RuleId::TvAndF || r == RuleId::TvOrT;
      Kind conn = conj ? Kind::And : Kind::Or;
      Kind unit = (r == RuleId::TvAndT || r == RuleId::TvOrT) ? Kind::True
                                                              : Kind::False;
      if (s.kind() != conn) throw no_match(r, "connective mismatch");
      if (!index_of_kind(s.kids(), unit))
        throw no_match(r, "no truth-value member");
      if (annihilate) return unit == Kind::True ? mk_true() : mk_false();
      Formulas out;
      for (const Formula& m : s.kids())
        if (m.kind() != unit) out.push_back(m);
      return make_ao(conn, std::move(out));
    }

    case RuleId::TvQT:
    case RuleId::TvQF: {
      if (dir == Direction::R2L)
        throw no_match(r, "quantifier to introduce is unspecified");
      // valid for plain and predicate quantifiers; counting quantifiers
      // genuinely depend on the domain size and are excluded
      if (!is_quantifier(s.kind()) || is_counting(s.kind()))
        throw no_match(r, "not a plain quantifier");
      Kind want = r == RuleId::TvQT ? Kind::True : Kind::False;
      if (s.child(0).kind() != want)
        throw no_match(r, "body is not the truth value");
      return s.child(0);
    }

    case RuleId::ComplemAnd:
    case RuleId::ComplemOr: {
      if (dir == Direction::R2L)
        throw no_match(r, "complement pair is unspecified");
      Kind conn = r == RuleId::ComplemAnd ? Kind::And : Kind::Or;
      if (s.kind() != conn) throw no_match(r, "connective mismatch");
      if (!complementary_pair(s.kids()))
        throw no_match(r, "no complementary pair");
      return r == RuleId::ComplemAnd ? mk_false() : mk_true();
    }

    case RuleId::DistDnf:
    case RuleId::DistCnf:
      return local_dist(r, s, dir);

    case RuleId::AllOutAnd:
    case RuleId::ExOutOr:
      return local_merge_quant(r, s, dir);

    case RuleId::QOutAo:
      return local_q_out_ao(r, s, dir);

    case RuleId::QuantDrop: {
      if (dir == Direction::R2L)
        throw no_match(r, "quantifier to introduce is unspecified");
      if (!is_quantifier(s.kind())) throw no_match(r, "not a quantifier");
      if (is_counting(s.kind()) && s.count() != 1)
        throw no_match(r, "higher counting quantifiers are never vacuous");
      if (binder_occurs_free(s, s.child(0)))
        throw Error(ErrorCode::SideCondition,
                    "quant-drop: bound name occurs in the body");
      return s.child(0);
    }

    case RuleId::QuantFlip: {
      Kind k = s.kind();
      if (k != Kind::Forall && k != Kind::Exists && k != Kind::ForallPred &&
          k != Kind::ExistsPred)
        throw no_match(r, "not a flippable quantifier");
      const Formula& inner = s.child(0);
      if (inner.kind() != k)
        throw no_match(r, "inner quantifier differs in kind");
      return rebuild_quant(inner, rebuild_quant(s, inner.child(0)));
    }

    case RuleId::VarRename: {
      if (dir == Direction::R2L) throw no_match(r, "renaming left to right only");
      if (!is_individual_quantifier(s.kind()))
        throw no_match(r, "not an individual quantifier");
      std::string base = strip_digits(s.name());
      std::set<std::string> used = all_names(root);
      std::string w;
      for (int k = 1;; ++k) {
        w = base + std::to_string(k);
        if (!used.count(w)) break;
      }
      Formula body = substitute(s.child(0), s.name(), Term::var(w));
      switch (s.kind()) {
        case Kind::Forall: return mk_forall(w, std::move(body));
        case Kind::Exists: return mk_exists(w, std::move(body));
        case Kind::AtLeast: return mk_atleast(s.count(), w, std::move(body));
        default: return mk_allbut(s.count(), w, std::move(body));
      }
    }

    case RuleId::SubsAndAbsorp:
    case RuleId::SubsOrAbsorp: {
      if (dir == Direction::R2L)
        throw no_match(r, "absorbed member is unspecified");
      Kind conn = r == RuleId::SubsAndAbsorp ? Kind::And : Kind::Or;
      if (s.kind() != conn) throw no_match(r, "connective mismatch");
      for (std::size_t i = 0; i < s.num_children(); ++i) {
        for (std::size_t j = 0; j < s.num_children(); ++j) {
          if (i == j) continue;
          if (entails_syntactic(s.child(i), s.child(j))) {
            // drop the entailed conjunct resp. the entailing disjunct
            std::size_t victim = r == RuleId::SubsAndAbsorp ? j : i;
            return make_ao(conn, erase_index(s.kids(), victim));
          }
        }
      }
      throw no_match(r, "no absorbable member");
    }

    case RuleId::Taut: {
      if (dir == Direction::R2L) throw no_match(r, "clausal rules are one-way");
      if (s.kind() != Kind::And && s.kind() != Kind::Or)
        throw no_match(r, "not a clausal matrix");
      Kind ck = s.kind() == Kind::And ? Kind::Or : Kind::And;
      for (std::size_t i = 0; i < s.num_children(); ++i) {
        if (clause_tautological(s.child(i), ck))
          return make_ao(s.kind(), erase_index(s.kids(), i));
      }
      throw no_match(r, "no tautological clause");
    }

    case RuleId::Subs: {
      if (dir == Direction::R2L) throw no_match(r, "clausal rules are one-way");
      if (s.kind() != Kind::And && s.kind() != Kind::Or)
        throw no_match(r, "not a clausal matrix");
      Kind ck = s.kind() == Kind::And ? Kind::Or : Kind::And;
      std::vector<LitSet> sets;
      sets.reserve(s.num_children());
      for (const Formula& c : s.kids()) sets.push_back(literal_set(c, ck));
      for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = 0; j < sets.size(); ++j) {
          if (i == j) continue;
          if (std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(),
                            sets[i].end(), FormulaLess{}))
            return make_ao(s.kind(), erase_index(s.kids(), j));
        }
      }
      throw no_match(r, "no subsumed clause");
    }

    case RuleId::Unit: {
      if (dir == Direction::R2L) throw no_match(r, "clausal rules are one-way");
      if (s.kind() != Kind::And && s.kind() != Kind::Or)
        throw no_match(r, "not a clausal matrix");
      Kind ck = s.kind() == Kind::And ? Kind::Or : Kind::And;
      for (std::size_t i = 0; i < s.num_children(); ++i) {
        const Formula& unit_clause = s.child(i);
        if (unit_clause.kind() == ck) continue;
        Formula comp = complement(unit_clause);
        for (std::size_t j = 0; j < s.num_children(); ++j) {
          if (i == j) continue;
          Formulas lits = clause_literals(s.child(j), ck);
          for (std::size_t k = 0; k < lits.size(); ++k) {
            if (lits[k] == comp) {
              Formula reduced = make_ao(ck, erase_index(lits, k));
              Formulas ms = s.kids();
              ms[j] = std::move(reduced);
              return make_ao(s.kind(), std::move(ms));
            }
          }
        }
      }
      throw no_match(r, "no unit to propagate");
    }

    case RuleId::PulloutAll:
    case RuleId::PulloutEx:
      return local_pullout(r, s, dir);

    case RuleId::InfV:
    case RuleId::InfVQ:
      return local_inf_v(r, s);

    case RuleId::InfVbarPos:
    case RuleId::InfVbarNeg: {
      if (s.kind() != Kind::And)
        throw no_match(r, "not a conjunction");
      Formula frame = mk_and(erase_index(s.kids(), s.num_children() - 1));
      return inf_vbar(r, frame, r == RuleId::InfVbarPos, {}, s.kids().back());
    }

    case RuleId::InfVbarPosStar:
    case RuleId::InfVbarNegStar: {
      if (s.kind() != Kind::And)
        throw no_match(r, "not a conjunction");
      Formula frame = mk_and(erase_index(s.kids(), s.num_children() - 1));
      Formula imp = s.kids().back();
      std::set<std::string> quantified;
      while (imp.kind() == Kind::Forall) {
        quantified.insert(imp.name());
        imp = imp.child(0);
      }
      if (quantified.empty())
        throw no_match(r, "implication conjunct is not quantified");
      return inf_vbar(r, frame, r == RuleId::InfVbarPosStar, quantified, imp);
    }
  }
  throw Error(ErrorCode::Internal, "apply_local: unknown rule");
}

}  // namespace

bool entails_syntactic(const Formula& f, const Formula& g) {
  if (f == g) return true;
  if (f.kind() == Kind::False || g.kind() == Kind::True) return true;

  // counting-index comparisons over a shared variable and body
  auto body_matches = [](const Formula& a, const Formula& b) {
    return a.name() == b.name() && a.child(0) == b.child(0);
  };
  if (f.kind() == Kind::AtLeast && g.kind() == Kind::AtLeast &&
      body_matches(f, g) && f.count() >= g.count())
    return true;
  if (f.kind() == Kind::AllBut && g.kind() == Kind::AllBut &&
      body_matches(f, g) && f.count() <= g.count())
    return true;
  if (f.kind() == Kind::Exists && g.kind() == Kind::AtLeast &&
      body_matches(f, g) && g.count() == 1)
    return true;
  if (f.kind() == Kind::AtLeast && g.kind() == Kind::Exists &&
      body_matches(f, g))
    return true;
  if (f.kind() == Kind::Forall && g.kind() == Kind::AllBut && body_matches(f, g))
    return true;
  if (f.kind() == Kind::AllBut && g.kind() == Kind::Forall &&
      body_matches(f, g) && f.count() == 1)
    return true;

  if (f.kind() == Kind::And) {
    if (contains(f.kids(), g)) return true;
    if (g.kind() == Kind::And) {
      LitSet fs(f.kids().begin(), f.kids().end());
      bool all = true;
      for (const Formula& m : g.kids())
        if (!fs.count(m)) { all = false; break; }
      if (all) return true;
    }
  }
  if (g.kind() == Kind::Or) {
    if (contains(g.kids(), f)) return true;
    if (f.kind() == Kind::Or) {
      LitSet gs(g.kids().begin(), g.kids().end());
      bool all = true;
      for (const Formula& m : f.kids())
        if (!gs.count(m)) { all = false; break; }
      if (all) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Rule-loop helpers shared by the traced operations.

bool try_rule(Formula& f, RuleId r, const Path& p, Direction d,
              RewriteContext* ctx, bool dualized) {
  try {
    Formula g = apply_rule(f, r, p, d, dualized);
    if (ctx && ctx->trace)
      ctx->trace->steps.push_back({r, p, d, dualized, f, g});
    f = std::move(g);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoMatch || e.code() == ErrorCode::SideCondition)
      return false;
    throw;
  }
}

namespace {

bool try_rule_at(Formula& f, RuleId r, const Path& p, Direction d,
                 RewriteContext* ctx) {
  return try_rule(f, r, p, d, ctx, false);
}

// truth-value redex lookup, postorder (children first)
std::optional<std::pair<Path, RuleId>> find_tv_redex(const Formula& f,
                                                     Path& cur) {
  for (std::size_t i = 0; i < f.num_children(); ++i) {
    cur.push_back(static_cast<int>(i));
    if (auto hit = find_tv_redex(f.child(i), cur)) return hit;
    cur.pop_back();
  }
  auto here = [&](RuleId r) { return std::make_pair(cur, r); };
  switch (f.kind()) {
    case Kind::Not:
      if (f.child(0).kind() == Kind::True) return here(RuleId::TvNotT);
      if (f.child(0).kind() == Kind::False) return here(RuleId::TvNotF);
      break;
    case Kind::And:
      if (index_of_kind(f.kids(), Kind::False)) return here(RuleId::TvAndF);
      if (index_of_kind(f.kids(), Kind::True)) return here(RuleId::TvAndT);
      if (complementary_pair(f.kids())) return here(RuleId::ComplemAnd);
      break;
    case Kind::Or:
      if (index_of_kind(f.kids(), Kind::True)) return here(RuleId::TvOrT);
      if (index_of_kind(f.kids(), Kind::False)) return here(RuleId::TvOrF);
      if (complementary_pair(f.kids())) return here(RuleId::ComplemOr);
      break;
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ForallPred:
    case Kind::ExistsPred:
      if (f.child(0).kind() == Kind::True) return here(RuleId::TvQT);
      if (f.child(0).kind() == Kind::False) return here(RuleId::TvQF);
      break;
    default:
      break;
  }
  return std::nullopt;
}

// single-pass bottom-up equivalent of the tv rule loop
Formula simp_tv_fast(const Formula& f) {
  if (f.num_children() == 0) return f;
  Formulas ks;
  ks.reserve(f.num_children());
  for (const Formula& k : f.kids()) ks.push_back(simp_tv_fast(k));
  switch (f.kind()) {
    case Kind::Not:
      if (ks[0].kind() == Kind::True) return mk_false();
      if (ks[0].kind() == Kind::False) return mk_true();
      return mk_not(std::move(ks[0]));
    case Kind::And: {
      Formulas out;
      for (Formula& m : ks) {
        if (m.kind() == Kind::False) return mk_false();
        if (m.kind() != Kind::True) out.push_back(std::move(m));
      }
      Formula res = mk_and(std::move(out));
      // the complement check runs after construction: flattening a nested
      // connective member can surface a new complementary pair
      if (res.kind() == Kind::And && complementary_pair(res.kids()))
        return mk_false();
      return res;
    }
    case Kind::Or: {
      Formulas out;
      for (Formula& m : ks) {
        if (m.kind() == Kind::True) return mk_true();
        if (m.kind() != Kind::False) out.push_back(std::move(m));
      }
      Formula res = mk_or(std::move(out));
      if (res.kind() == Kind::Or && complementary_pair(res.kids()))
        return mk_true();
      return res;
    }
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ForallPred:
    case Kind::ExistsPred:
      if (is_tv(ks[0].kind())) return ks[0];
      return rebuild_quant(f, std::move(ks[0]));
    default:
      // counting quantifiers keep their body: their truth depends on the
      // domain size even over a constant body
      return rebuild_quant(f, std::move(ks[0]));
  }
}

}  // namespace

Formula simplify_truth_values(const Formula& f, RewriteContext* ctx) {
  if (!ctx || !ctx->trace) return simp_tv_fast(f);
  Formula cur = f;
  for (;;) {
    Path p;
    auto hit = find_tv_redex(cur, p);
    if (!hit) return cur;
    if (!try_rule_at(cur, hit->second, hit->first, Direction::L2R, ctx))
      throw Error(ErrorCode::Internal, "tv redex did not apply");
  }
}

namespace {

void validate_matrix(const Formula& m, MatrixPolarity pol) {
  if (is_tv(m.kind())) return;
  Kind mk = pol == MatrixPolarity::Cnf ? Kind::And : Kind::Or;
  Kind ck = pol == MatrixPolarity::Cnf ? Kind::Or : Kind::And;
  Formulas clauses = m.kind() == mk ? m.kids() : Formulas{m};
  for (const Formula& c : clauses) {
    if (c.kind() == mk)
      throw Error(ErrorCode::Shape, "matrix nested inside a clause");
    for (const Formula& l : clause_literals(c, ck)) {
      if (l.kind() == Kind::And || l.kind() == Kind::Or)
        throw Error(ErrorCode::Shape, "clause member is not a literal");
    }
  }
}

}  // namespace

Formula clause_simplify(const Formula& matrix, MatrixPolarity pol,
                        RewriteContext* ctx) {
  validate_matrix(matrix, pol);
  Kind mk = pol == MatrixPolarity::Cnf ? Kind::And : Kind::Or;
  Formula cur = matrix;
  while (cur.kind() == mk) {
    if (try_rule_at(cur, RuleId::Taut, {}, Direction::L2R, ctx)) continue;
    if (try_rule_at(cur, RuleId::Subs, {}, Direction::L2R, ctx)) continue;
    if (try_rule_at(cur, RuleId::Unit, {}, Direction::L2R, ctx)) continue;
    // unit propagation can leave truth-value members behind
    if (pol == MatrixPolarity::Cnf) {
      if (try_rule_at(cur, RuleId::TvAndF, {}, Direction::L2R, ctx)) continue;
      if (try_rule_at(cur, RuleId::TvAndT, {}, Direction::L2R, ctx)) continue;
    } else {
      if (try_rule_at(cur, RuleId::TvOrT, {}, Direction::L2R, ctx)) continue;
      if (try_rule_at(cur, RuleId::TvOrF, {}, Direction::L2R, ctx)) continue;
    }
    break;
  }
  // a lone surviving clause may still be tautological
  if (pol == MatrixPolarity::Cnf && cur.kind() == Kind::Or)
    try_rule_at(cur, RuleId::ComplemOr, {}, Direction::L2R, ctx);
  else if (pol == MatrixPolarity::Dnf && cur.kind() == Kind::And)
    try_rule_at(cur, RuleId::ComplemAnd, {}, Direction::L2R, ctx);
  return cur;
}

// ---------------------------------------------------------------------------
// Generalized disjunctive / conjunctive normal form. Connective nodes are
// always decomposed; is_basic is consulted for every other subformula.

namespace {

bool leaf_basic(const Formula& f, const IsBasic& is_basic) {
  return f.kind() != Kind::And && f.kind() != Kind::Or && is_basic(f);
}

// clause list with explicit literal vectors; the product keeps the later
// factor's index running fastest, matching stepwise distribution over the
// first nested connective
using ClauseList = std::vector<Formulas>;

std::size_t total_literals(const ClauseList& cl) {
  std::size_t n = 0;
  for (const Formulas& c : cl) n += c.size();
  return n;
}

ClauseList nf_clauses(const Formula& f, bool positive, bool dnf,
                      const IsBasic& is_basic, std::size_t limit) {
  if (leaf_basic(f, is_basic)) return {{positive ? f : mk_not(f)}};
  switch (f.kind()) {
    case Kind::Not:
      return nf_clauses(f.child(0), !positive, dnf, is_basic, limit);
    case Kind::And:
    case Kind::Or: {
      Kind eff = positive == (f.kind() == Kind::And) ? Kind::And : Kind::Or;
      bool product = dnf == (eff == Kind::And);
      if (product) {
        ClauseList acc{{}};
        for (const Formula& m : f.kids()) {
          ClauseList piece = nf_clauses(m, positive, dnf, is_basic, limit);
          ClauseList next;
          next.reserve(acc.size() * piece.size());
          for (const Formulas& c1 : acc) {
            for (const Formulas& c2 : piece) {
              Formulas merged = c1;
              merged.insert(merged.end(), c2.begin(), c2.end());
              next.push_back(std::move(merged));
            }
          }
          acc = std::move(next);
          if (total_literals(acc) > limit)
            throw Error(ErrorCode::SizeLimit,
                        "normal form exceeds the node limit");
        }
        return acc;
      }
      ClauseList out;
      for (const Formula& m : f.kids()) {
        ClauseList piece = nf_clauses(m, positive, dnf, is_basic, limit);
        out.insert(out.end(), piece.begin(), piece.end());
        if (total_literals(out) > limit)
          throw Error(ErrorCode::SizeLimit,
                      "normal form exceeds the node limit");
      }
      return out;
    }
    default:
      throw Error(ErrorCode::Shape,
                  "subformula is neither basic nor a Boolean connective");
  }
}

void validate_nf(const Formula& m, MatrixPolarity pol, const IsBasic& is_basic) {
  if (is_tv(m.kind())) return;
  Kind mkind = pol == MatrixPolarity::Cnf ? Kind::And : Kind::Or;
  Kind ckind = pol == MatrixPolarity::Cnf ? Kind::Or : Kind::And;
  Formulas clauses = m.kind() == mkind ? m.kids() : Formulas{m};
  for (const Formula& c : clauses) {
    for (const Formula& l : clause_literals(c, ckind)) {
      bool ok = leaf_basic(l, is_basic) ||
                (l.kind() == Kind::Not && leaf_basic(l.child(0), is_basic));
      if (!ok)
        throw Error(ErrorCode::Shape, "clause member is not a literal");
    }
  }
}

// first negation that must be pushed through structure, preorder
std::optional<std::pair<Path, RuleId>> find_push_redex(const Formula& f,
                                                       const IsBasic& is_basic,
                                                       Path& cur) {
  if (leaf_basic(f, is_basic)) return std::nullopt;
  if (f.kind() == Kind::Not) {
    const Formula& c = f.child(0);
    if (!leaf_basic(c, is_basic)) {
      switch (c.kind()) {
        case Kind::Not: return std::make_pair(cur, RuleId::NotNot);
        case Kind::And: return std::make_pair(cur, RuleId::NotAnd);
        case Kind::Or: return std::make_pair(cur, RuleId::NotOr);
        case Kind::True: return std::make_pair(cur, RuleId::TvNotT);
        case Kind::False: return std::make_pair(cur, RuleId::TvNotF);
        default:
          throw Error(ErrorCode::Shape,
                      "negation of a subformula that is not basic");
      }
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < f.num_children(); ++i) {
    cur.push_back(static_cast<int>(i));
    if (auto hit = find_push_redex(f.child(i), is_basic, cur)) return hit;
    cur.pop_back();
  }
  return std::nullopt;
}

std::optional<Path> find_dist_redex(const Formula& f, bool dnf,
                                    const IsBasic& is_basic, Path& cur) {
  if (leaf_basic(f, is_basic) || f.kind() == Kind::Not) return std::nullopt;
  Kind outer = dnf ? Kind::And : Kind::Or;
  Kind inner = dnf ? Kind::Or : Kind::And;
  if (f.kind() == outer && index_of_kind(f.kids(), inner)) return cur;
  for (std::size_t i = 0; i < f.num_children(); ++i) {
    cur.push_back(static_cast<int>(i));
    if (auto hit = find_dist_redex(f.child(i), dnf, is_basic, cur)) return hit;
    cur.pop_back();
  }
  return std::nullopt;
}

Formula normal_form_over_basics(const Formula& f, bool dnf,
                                const IsBasic& is_basic, RewriteContext* ctx) {
  std::size_t limit = ctx ? ctx->node_limit : RewriteContext{}.node_limit;
  MatrixPolarity pol = dnf ? MatrixPolarity::Dnf : MatrixPolarity::Cnf;
  Formula cur = simplify_truth_values(f, ctx);
  if (is_tv(cur.kind())) return cur;

  if (ctx && ctx->trace) {
    for (;;) {
      Path p;
      auto hit = find_push_redex(cur, is_basic, p);
      if (!hit) break;
      if (!try_rule_at(cur, hit->second, hit->first, Direction::L2R, ctx))
        throw Error(ErrorCode::Internal, "push redex did not apply");
    }
    for (;;) {
      Path p;
      auto at = find_dist_redex(cur, dnf, is_basic, p);
      if (!at) break;
      RuleId rule = dnf ? RuleId::DistDnf : RuleId::DistCnf;
      if (!try_rule_at(cur, rule, *at, Direction::L2R, ctx))
        throw Error(ErrorCode::Internal, "distribution redex did not apply");
      if (node_count(cur) > limit)
        throw Error(ErrorCode::SizeLimit, "normal form exceeds the node limit");
    }
  } else {
    ClauseList clauses = nf_clauses(cur, true, dnf, is_basic, limit);
    Formulas shaped;
    shaped.reserve(clauses.size());
    for (Formulas& c : clauses)
      shaped.push_back(dnf ? mk_and(std::move(c)) : mk_or(std::move(c)));
    cur = dnf ? mk_or(std::move(shaped)) : mk_and(std::move(shaped));
  }
  cur = clause_simplify(cur, pol, ctx);
  validate_nf(cur, pol, is_basic);
  return cur;
}

}  // namespace

Formula to_dnf_over_basics(const Formula& f, const IsBasic& is_basic,
                           RewriteContext* ctx) {
  return normal_form_over_basics(f, true, is_basic, ctx);
}

Formula to_cnf_over_basics(const Formula& f, const IsBasic& is_basic,
                           RewriteContext* ctx) {
  return normal_form_over_basics(f, false, is_basic, ctx);
}

Formula circumlocute(const Formula& f, const Term& t, const std::string& x,
                     CircumMode mode) {
  if (all_names(f).count(x) || (t.kind == TermKind::Var && t.name == x))
    throw Error(ErrorCode::Capture, "circumlocution variable is not fresh");
  if (t.kind == TermKind::Var && bound_var_names(f).count(t.name))
    throw Error(ErrorCode::Capture,
                "circumlocuted term is bound inside the formula");
  Formula fx = replace_term(f, t, Term::var(x));
  if (mode == CircumMode::Forall)
    return mk_forall(x, mk_or({mk_neq(Term::var(x), t), std::move(fx)}));
  return mk_exists(x, mk_and({mk_eq(Term::var(x), t), std::move(fx)}));
}

}  // namespace monel

#include "monel/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace monel {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::Arity: return "ArityError";
    case ErrorCode::BadCount: return "BadCount";
    case ErrorCode::BadArgs: return "BadArgs";
    case ErrorCode::Capture: return "CaptureError";
    case ErrorCode::Class: return "ClassError";
    case ErrorCode::Shape: return "ShapeError";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::SideCondition: return "SideConditionViolated";
    case ErrorCode::EntailmentReversed: return "EntailmentReversed";
    case ErrorCode::SizeLimit: return "SizeLimitExceeded";
    case ErrorCode::EliminandOccurs: return "EliminandOccurs";
    case ErrorCode::Polarity: return "PolarityViolation";
    case ErrorCode::EliminandInDefiniens: return "EliminandInDefiniens";
    case ErrorCode::NotFresh: return "NotFresh";
    case ErrorCode::Eligibility: return "EligibilityError";
    case ErrorCode::MissingSymbol: return "MissingSymbol";
    case ErrorCode::Budget: return "BudgetExceeded";
    case ErrorCode::Internal: return "InternalError";
  }
  return "Error";
}

const char* formula_class_name(FormulaClass c) {
  switch (c) {
    case FormulaClass::MON: return "MON";
    case FormulaClass::MON_EQ: return "MON=";
    case FormulaClass::QMON: return "QMON";
    case FormulaClass::QMON_EQ: return "QMON=";
    case FormulaClass::GENERAL: return "GENERAL";
  }
  return "?";
}

bool class_leq(FormulaClass a, FormulaClass b) {
  if (a == b) return true;
  if (b == FormulaClass::GENERAL) return true;
  if (a == FormulaClass::GENERAL) return false;
  if (a == FormulaClass::MON) return true;
  if (b == FormulaClass::QMON_EQ) return true;
  // remaining strict pairs among {MON_EQ, QMON}: incomparable
  return false;
}

namespace detail {

struct Node {
  Kind kind;
  int count = 0;
  int pred_arity = 0;
  std::string name;
  std::vector<Term> args;
  Formulas kids;
  std::uint64_t hash = 0;
};

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t str_hash(const std::string& s) {
  return std::hash<std::string>{}(s);
}

std::uint64_t node_hash(const Node& n) {
  std::uint64_t h = static_cast<std::uint64_t>(n.kind) * 0x100000001b3ull + 1469598103934665603ull;
  h = mix(h, static_cast<std::uint64_t>(n.count));
  h = mix(h, static_cast<std::uint64_t>(n.pred_arity));
  h = mix(h, str_hash(n.name));
  for (const Term& t : n.args) {
    h = mix(h, static_cast<std::uint64_t>(t.kind));
    h = mix(h, str_hash(t.name));
  }
  for (const Formula& k : n.kids) h = mix(h, k.hash());
  return h;
}

}  // namespace

Formula wrap(std::shared_ptr<const Node> n) { return Formula(std::move(n)); }

}  // namespace detail

using detail::Node;

// Formula accessors -----------------------------------------------------------

Kind Formula::kind() const { return node_->kind; }
int Formula::count() const { return node_->count; }
int Formula::pred_arity() const {
  if (node_->kind == Kind::Atom) return static_cast<int>(node_->args.size());
  return node_->pred_arity;
}
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formulas& Formula::kids() const { return node_->kids; }
const Formula& Formula::child(std::size_t i) const { return node_->kids[i]; }
std::size_t Formula::num_children() const { return node_->kids.size(); }
std::uint64_t Formula::hash() const { return node_->hash; }

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  const Node& a = *node_;
  const Node& b = *o.node_;
  if (a.hash != b.hash) return false;
  if (a.kind != b.kind || a.count != b.count || a.pred_arity != b.pred_arity ||
      a.name != b.name || a.args != b.args || a.kids.size() != b.kids.size())
    return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!(a.kids[i] == b.kids[i])) return false;
  return true;
}

// Constructors ----------------------------------------------------------------

namespace {

Formula make(Kind k, int count, int arity, std::string name,
             std::vector<Term> args, Formulas kids);

}  // namespace

Formula mk_true() { return make(Kind::True, 0, 0, "", {}, {}); }
Formula mk_false() { return make(Kind::False, 0, 0, "", {}, {}); }

Formula mk_atom(std::string pred, std::vector<Term> args) {
  if (pred.empty()) throw Error(ErrorCode::BadArgs, "empty predicate name");
  return make(Kind::Atom, 0, 0, std::move(pred), std::move(args), {});
}

Formula mk_eq(Term lhs, Term rhs) {
  return make(Kind::Eq, 0, 0, "", {std::move(lhs), std::move(rhs)}, {});
}

Formula mk_not(Formula f) {
  return make(Kind::Not, 0, 0, "", {}, {std::move(f)});
}

namespace {

Formula mk_ao(Kind k, Formulas subs) {
  Formulas flat;
  flat.reserve(subs.size());
  for (Formula& s : subs) {
    if (s.kind() == k) {
      for (const Formula& g : s.kids()) flat.push_back(g);
    } else {
      flat.push_back(std::move(s));
    }
  }
  if (flat.empty()) return k == Kind::And ? mk_true() : mk_false();
  if (flat.size() == 1) return flat.front();
  return make(k, 0, 0, "", {}, std::move(flat));
}

}  // namespace

Formula mk_and(Formulas subs) { return mk_ao(Kind::And, std::move(subs)); }
Formula mk_or(Formulas subs) { return mk_ao(Kind::Or, std::move(subs)); }

Formula mk_forall(std::string var, Formula body) {
  return make(Kind::Forall, 0, 0, std::move(var), {}, {std::move(body)});
}
Formula mk_exists(std::string var, Formula body) {
  return make(Kind::Exists, 0, 0, std::move(var), {}, {std::move(body)});
}

Formula mk_atleast(int n, std::string var, Formula body) {
  if (n < 1) throw Error(ErrorCode::BadCount, "counting index must be >= 1");
  return make(Kind::AtLeast, n, 0, std::move(var), {}, {std::move(body)});
}

Formula mk_allbut(int n, std::string var, Formula body) {
  if (n < 1) throw Error(ErrorCode::BadCount, "counting index must be >= 1");
  return make(Kind::AllBut, n, 0, std::move(var), {}, {std::move(body)});
}

Formula mk_forall_pred(std::string pred, int arity, Formula body) {
  if (arity < 0) throw Error(ErrorCode::BadArgs, "negative arity");
  return make(Kind::ForallPred, 0, arity, std::move(pred), {}, {std::move(body)});
}
Formula mk_exists_pred(std::string pred, int arity, Formula body) {
  if (arity < 0) throw Error(ErrorCode::BadArgs, "negative arity");
  return make(Kind::ExistsPred, 0, arity, std::move(pred), {}, {std::move(body)});
}

namespace {

Formula make(Kind k, int count, int arity, std::string name,
             std::vector<Term> args, Formulas kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->count = count;
  n->pred_arity = arity;
  n->name = std::move(name);
  n->args = std::move(args);
  n->kids = std::move(kids);
  n->hash = detail::node_hash(*n);
  return detail::wrap(std::move(n));
}

}  // namespace

bool is_quantifier(Kind k) {
  switch (k) {
    case Kind::Forall:
    case Kind::Exists:
    case Kind::AtLeast:
    case Kind::AllBut:
    case Kind::ForallPred:
    case Kind::ExistsPred:
      return true;
    default:
      return false;
  }
}

bool is_individual_quantifier(Kind k) {
  return k == Kind::Forall || k == Kind::Exists || k == Kind::AtLeast ||
         k == Kind::AllBut;
}

bool is_counting(Kind k) { return k == Kind::AtLeast || k == Kind::AllBut; }

bool is_pred_quantifier(Kind k) {
  return k == Kind::ForallPred || k == Kind::ExistsPred;
}

// Symbol traversal ------------------------------------------------------------

namespace {

void walk_free(const Formula& f, std::set<std::string>& bound_vars,
               std::set<std::string>& bound_preds, FreeSymbols& out) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Atom:
      if (!bound_preds.count(f.name()))
        out.preds[f.name()] = static_cast<int>(f.args().size());
      [[fallthrough]];
    case Kind::Eq:
      for (const Term& t : f.args()) {
        if (t.kind == TermKind::Const)
          out.consts.insert(t.name);
        else if (!bound_vars.count(t.name))
          out.vars.insert(t.name);
      }
      return;
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
      for (const Formula& k : f.kids())
        walk_free(k, bound_vars, bound_preds, out);
      return;
    case Kind::Forall:
    case Kind::Exists:
    case Kind::AtLeast:
    case Kind::AllBut: {
      bool was = bound_vars.count(f.name()) > 0;
      bound_vars.insert(f.name());
      walk_free(f.child(0), bound_vars, bound_preds, out);
      if (!was) bound_vars.erase(f.name());
      return;
    }
    case Kind::ForallPred:
    case Kind::ExistsPred: {
      bool was = bound_preds.count(f.name()) > 0;
      bound_preds.insert(f.name());
      walk_free(f.child(0), bound_vars, bound_preds, out);
      if (!was) bound_preds.erase(f.name());
      return;
    }
  }
}

}  // namespace

FreeSymbols free_symbols(const Formula& f) {
  FreeSymbols out;
  std::set<std::string> bv, bp;
  walk_free(f, bv, bp, out);
  return out;
}

bool occurs_free_var(const Formula& f, const std::string& var) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return false;
    case Kind::Atom:
    case Kind::Eq:
      for (const Term& t : f.args())
        if (t.kind == TermKind::Var && t.name == var) return true;
      return false;
    default:
      if (is_individual_quantifier(f.kind()) && f.name() == var) return false;
      for (const Formula& k : f.kids())
        if (occurs_free_var(k, var)) return true;
      return false;
  }
}

bool occurs_pred(const Formula& f, const std::string& pred) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Eq:
      return false;
    case Kind::Atom:
      return f.name() == pred;
    default:
      if (is_pred_quantifier(f.kind()) && f.name() == pred) return false;
      for (const Formula& k : f.kids())
        if (occurs_pred(k, pred)) return true;
      return false;
  }
}

bool occurs_term(const Formula& f, const Term& t) {
  if (t.kind == TermKind::Var) return occurs_free_var(f, t.name);
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return false;
    case Kind::Atom:
    case Kind::Eq:
      for (const Term& a : f.args())
        if (a == t) return true;
      return false;
    default:
      for (const Formula& k : f.kids())
        if (occurs_term(k, t)) return true;
      return false;
  }
}

std::set<std::string> bound_var_names(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (is_individual_quantifier(g.kind())) out.insert(g.name());
    for (const Formula& k : g.kids()) go(k);
  };
  go(f);
  return out;
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (!g.name().empty()) out.insert(g.name());
    for (const Term& t : g.args()) out.insert(t.name);
    for (const Formula& k : g.kids()) go(k);
  };
  go(f);
  return out;
}

// Substitution ----------------------------------------------------------------

namespace {

Formula subst_term(const Formula& f, const Term& from, const Term& to) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Atom:
    case Kind::Eq: {
      bool hit = false;
      std::vector<Term> args = f.args();
      for (Term& a : args)
        if (a == from) {
          a = to;
          hit = true;
        }
      if (!hit) return f;
      return f.kind() == Kind::Atom ? mk_atom(f.name(), std::move(args))
                                    : mk_eq(args[0], args[1]);
    }
    case Kind::Not:
      return mk_not(subst_term(f.child(0), from, to));
    case Kind::And:
    case Kind::Or: {
      Formulas ks;
      ks.reserve(f.num_children());
      for (const Formula& k : f.kids()) ks.push_back(subst_term(k, from, to));
      return f.kind() == Kind::And ? mk_and(std::move(ks)) : mk_or(std::move(ks));
    }
    case Kind::Forall:
    case Kind::Exists:
    case Kind::AtLeast:
    case Kind::AllBut: {
      if (from.kind == TermKind::Var && f.name() == from.name) return f;
      Formula b = subst_term(f.child(0), from, to);
      switch (f.kind()) {
        case Kind::Forall: return mk_forall(f.name(), std::move(b));
        case Kind::Exists: return mk_exists(f.name(), std::move(b));
        case Kind::AtLeast: return mk_atleast(f.count(), f.name(), std::move(b));
        default: return mk_allbut(f.count(), f.name(), std::move(b));
      }
    }
    case Kind::ForallPred:
      return mk_forall_pred(f.name(), f.pred_arity(),
                            subst_term(f.child(0), from, to));
    case Kind::ExistsPred:
      return mk_exists_pred(f.name(), f.pred_arity(),
                            subst_term(f.child(0), from, to));
  }
  throw Error(ErrorCode::Internal, "subst_term: unknown kind");
}

}  // namespace

Formula substitute(const Formula& f, const std::string& x, const Term& t) {
  if (t.kind == TermKind::Var && t.name != x && bound_var_names(f).count(t.name))
    throw Error(ErrorCode::Capture,
                "substituted variable '" + t.name + "' is bound in the formula");
  return subst_term(f, Term::var(x), t);
}

Formula replace_term(const Formula& f, const Term& from, const Term& to) {
  if (to.kind == TermKind::Var && to != from && bound_var_names(f).count(to.name))
    throw Error(ErrorCode::Capture,
                "replacement variable '" + to.name + "' is bound in the formula");
  return subst_term(f, from, to);
}

// complement / dual / nnf -----------------------------------------------------

Formula complement(const Formula& f) {
  if (f.kind() == Kind::Not) return f.child(0);
  return mk_not(f);
}

Formula dual(const Formula& f) {
  switch (f.kind()) {
    case Kind::True: return mk_false();
    case Kind::False: return mk_true();
    case Kind::Atom:
    case Kind::Eq: return f;
    case Kind::Not: return mk_not(dual(f.child(0)));
    case Kind::And:
    case Kind::Or: {
      Formulas ks;
      ks.reserve(f.num_children());
      for (const Formula& k : f.kids()) ks.push_back(dual(k));
      return f.kind() == Kind::And ? mk_or(std::move(ks)) : mk_and(std::move(ks));
    }
    case Kind::Forall: return mk_exists(f.name(), dual(f.child(0)));
    case Kind::Exists: return mk_forall(f.name(), dual(f.child(0)));
    case Kind::AtLeast: return mk_allbut(f.count(), f.name(), dual(f.child(0)));
    case Kind::AllBut: return mk_atleast(f.count(), f.name(), dual(f.child(0)));
    case Kind::ForallPred:
      return mk_exists_pred(f.name(), f.pred_arity(), dual(f.child(0)));
    case Kind::ExistsPred:
      return mk_forall_pred(f.name(), f.pred_arity(), dual(f.child(0)));
  }
  throw Error(ErrorCode::Internal, "dual: unknown kind");
}

namespace {

Formula nnf_go(const Formula& f, bool neg) {
  switch (f.kind()) {
    case Kind::True: return neg ? mk_false() : mk_true();
    case Kind::False: return neg ? mk_true() : mk_false();
    case Kind::Atom:
    case Kind::Eq: return neg ? mk_not(f) : f;
    case Kind::Not: return nnf_go(f.child(0), !neg);
    case Kind::And:
    case Kind::Or: {
      Formulas ks;
      ks.reserve(f.num_children());
      for (const Formula& k : f.kids()) ks.push_back(nnf_go(k, neg));
      bool conj = (f.kind() == Kind::And) != neg;
      return conj ? mk_and(std::move(ks)) : mk_or(std::move(ks));
    }
    case Kind::Forall:
      return neg ? mk_exists(f.name(), nnf_go(f.child(0), true))
                 : mk_forall(f.name(), nnf_go(f.child(0), false));
    case Kind::Exists:
      return neg ? mk_forall(f.name(), nnf_go(f.child(0), true))
                 : mk_exists(f.name(), nnf_go(f.child(0), false));
    case Kind::AtLeast:
      return neg ? mk_allbut(f.count(), f.name(), nnf_go(f.child(0), true))
                 : mk_atleast(f.count(), f.name(), nnf_go(f.child(0), false));
    case Kind::AllBut:
      return neg ? mk_atleast(f.count(), f.name(), nnf_go(f.child(0), true))
                 : mk_allbut(f.count(), f.name(), nnf_go(f.child(0), false));
    case Kind::ForallPred:
      return neg ? mk_exists_pred(f.name(), f.pred_arity(), nnf_go(f.child(0), true))
                 : mk_forall_pred(f.name(), f.pred_arity(), nnf_go(f.child(0), false));
    case Kind::ExistsPred:
      return neg ? mk_forall_pred(f.name(), f.pred_arity(), nnf_go(f.child(0), true))
                 : mk_exists_pred(f.name(), f.pred_arity(), nnf_go(f.child(0), false));
  }
  throw Error(ErrorCode::Internal, "nnf: unknown kind");
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_go(f, false); }

// Classification --------------------------------------------------------------

namespace {

struct ClassBits {
  bool eq = false;
  bool count_ge2 = false;
  bool pred_quant = false;
  bool poly = false;
};

void class_walk(const Formula& f, ClassBits& b) {
  switch (f.kind()) {
    case Kind::Eq: b.eq = true; return;
    case Kind::Atom:
      if (f.args().size() > 1) b.poly = true;
      return;
    case Kind::AtLeast:
    case Kind::AllBut:
      if (f.count() >= 2) b.count_ge2 = true;
      break;
    case Kind::ForallPred:
    case Kind::ExistsPred:
      b.pred_quant = true;
      if (f.pred_arity() > 1) b.poly = true;
      break;
    default: break;
  }
  for (const Formula& k : f.kids()) class_walk(k, b);
}

}  // namespace

FormulaClass classify(const Formula& f) {
  ClassBits b;
  class_walk(f, b);
  if (b.poly) return FormulaClass::GENERAL;
  bool eq = b.eq || b.count_ge2;
  if (b.pred_quant) return eq ? FormulaClass::QMON_EQ : FormulaClass::QMON;
  return eq ? FormulaClass::MON_EQ : FormulaClass::MON;
}

// Fresh names and bound renaming ----------------------------------------------

void FreshNames::absorb(const Formula& f) {
  for (const std::string& n : all_names(f)) used_.insert(n);
}

std::string FreshNames::fresh(const std::string& base) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back())))
    stem.pop_back();
  if (stem.empty()) stem = "v";
  for (;;) {
    std::string cand = stem + std::to_string(next_++);
    if (used_.insert(cand).second) return cand;
  }
}

// The fresh name is globally new, so direct term replacement cannot capture;
// inner binders of the old name shadow as before and subst stops at them.
Formula rename_bound(const Formula& f, FreshNames& names) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Eq:
      return f;
    case Kind::Not:
      return mk_not(rename_bound(f.child(0), names));
    case Kind::And:
    case Kind::Or: {
      Formulas ks;
      ks.reserve(f.num_children());
      for (const Formula& k : f.kids()) ks.push_back(rename_bound(k, names));
      return f.kind() == Kind::And ? mk_and(std::move(ks)) : mk_or(std::move(ks));
    }
    case Kind::Forall:
    case Kind::Exists:
    case Kind::AtLeast:
    case Kind::AllBut: {
      std::string nv = names.fresh(f.name());
      Formula body = subst_term(f.child(0), Term::var(f.name()), Term::var(nv));
      body = rename_bound(body, names);
      switch (f.kind()) {
        case Kind::Forall: return mk_forall(nv, std::move(body));
        case Kind::Exists: return mk_exists(nv, std::move(body));
        case Kind::AtLeast: return mk_atleast(f.count(), nv, std::move(body));
        default: return mk_allbut(f.count(), nv, std::move(body));
      }
    }
    case Kind::ForallPred:
    case Kind::ExistsPred: {
      Formula body = rename_bound(f.child(0), names);
      return f.kind() == Kind::ForallPred
                 ? mk_forall_pred(f.name(), f.pred_arity(), std::move(body))
                 : mk_exists_pred(f.name(), f.pred_arity(), std::move(body));
    }
  }
  throw Error(ErrorCode::Internal, "rename_bound: unknown kind");
}

Formula rename_bound(const Formula& f) {
  FreshNames names(f);
  return rename_bound(f, names);
}

// Positions -------------------------------------------------------------------

Formula subformula_at(const Formula& f, const Path& path) {
  Formula cur = f;
  for (int i : path) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur.num_children())
      throw Error(ErrorCode::NoMatch, "position does not exist");
    cur = cur.child(static_cast<std::size_t>(i));
  }
  return cur;
}

namespace {

Formula rebuild_with(const Formula& f, std::size_t idx, Formula replacement) {
  Formulas ks = f.kids();
  ks[idx] = std::move(replacement);
  switch (f.kind()) {
    case Kind::Not: return mk_not(std::move(ks[0]));
    case Kind::And: return mk_and(std::move(ks));
    case Kind::Or: return mk_or(std::move(ks));
    case Kind::Forall: return mk_forall(f.name(), std::move(ks[0]));
    case Kind::Exists: return mk_exists(f.name(), std::move(ks[0]));
    case Kind::AtLeast: return mk_atleast(f.count(), f.name(), std::move(ks[0]));
    case Kind::AllBut: return mk_allbut(f.count(), f.name(), std::move(ks[0]));
    case Kind::ForallPred:
      return mk_forall_pred(f.name(), f.pred_arity(), std::move(ks[0]));
    case Kind::ExistsPred:
      return mk_exists_pred(f.name(), f.pred_arity(), std::move(ks[0]));
    default:
      throw Error(ErrorCode::NoMatch, "position does not exist");
  }
}

}  // namespace

Formula replace_at(const Formula& f, const Path& path, const Formula& g) {
  if (path.empty()) return g;
  std::size_t idx = static_cast<std::size_t>(path.front());
  if (path.front() < 0 || idx >= f.num_children())
    throw Error(ErrorCode::NoMatch, "position does not exist");
  Path rest(path.begin() + 1, path.end());
  return rebuild_with(f, idx, replace_at(f.child(idx), rest, g));
}

std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  for (const Formula& k : f.kids()) n += node_count(k);
  return n;
}

bool formula_less(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.count() != b.count()) return a.count() < b.count();
  if (a.pred_arity() != b.pred_arity()) return a.pred_arity() < b.pred_arity();
  if (a.name() != b.name()) return a.name() < b.name();
  if (a.args() != b.args())
    return std::lexicographical_compare(a.args().begin(), a.args().end(),
                                        b.args().begin(), b.args().end());
  if (a.num_children() != b.num_children())
    return a.num_children() < b.num_children();
  for (std::size_t i = 0; i < a.num_children(); ++i) {
    if (a.child(i) != b.child(i)) return formula_less(a.child(i), b.child(i));
  }
  return false;
}

}  // namespace monel

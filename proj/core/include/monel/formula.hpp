#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "monel/error.hpp"

namespace monel {

// Terms are individual constants or individual variables; there are no
// function symbols. Which of the two an identifier denotes is fixed by the
// context that built the term (the parser binds occurrences under a
// quantifier as variables and defaults everything else to constants).
enum class TermKind { Var, Const };

struct Term {
  TermKind kind;
  std::string name;

  static Term var(std::string n) { return {TermKind::Var, std::move(n)}; }
  static Term konst(std::string n) { return {TermKind::Const, std::move(n)}; }

  bool operator==(const Term& o) const {
    return kind == o.kind && name == o.name;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const {
    if (kind != o.kind) return kind < o.kind;
    return name < o.name;
  }
};

enum class Kind {
  True,
  False,
  Atom,        // predicate applied to 0..n terms
  Eq,          // term equality
  Not,
  And,         // n-ary, flattened, 0 children denotes verum
  Or,          // n-ary, flattened, 0 children denotes falsum
  Forall,      // individual quantifier
  Exists,      // individual quantifier
  AtLeast,     // counting: at least n individuals satisfy the body
  AllBut,      // counting: all individuals but fewer than n satisfy the body
  ForallPred,  // second-order quantifier over a predicate
  ExistsPred,
};

// The five formula classes the calculus distinguishes, ordered by the
// sublattice MON <= MON_EQ <= QMON_EQ, MON <= QMON <= QMON_EQ <= GENERAL.
enum class FormulaClass { MON, MON_EQ, QMON, QMON_EQ, GENERAL };

const char* formula_class_name(FormulaClass c);
bool class_leq(FormulaClass a, FormulaClass b);

class Formula;
using Formulas = std::vector<Formula>;

namespace detail {
struct Node;
Formula wrap(std::shared_ptr<const Node> n);
}

// Immutable formula tree. Copies share structure; all rewriting builds new
// trees. Equality is structural (hash-accelerated).
class Formula {
 public:
  Formula() = default;  // empty handle; any use besides assignment is invalid

  Kind kind() const;
  int count() const;               // AtLeast / AllBut index n >= 1
  int pred_arity() const;          // ForallPred / ExistsPred
  const std::string& name() const; // Atom predicate, quantifier variable/predicate
  const std::vector<Term>& args() const;  // Atom arguments; Eq stores {lhs, rhs}
  const Formulas& kids() const;
  const Formula& child(std::size_t i) const;
  std::size_t num_children() const;
  std::uint64_t hash() const;
  bool valid() const { return node_ != nullptr; }

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  explicit Formula(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;

  friend Formula detail::wrap(std::shared_ptr<const detail::Node>);
};

Formula mk_true();
Formula mk_false();
Formula mk_atom(std::string pred, std::vector<Term> args);
inline Formula mk_atom(std::string pred) { return mk_atom(std::move(pred), {}); }
inline Formula mk_atom(std::string pred, Term t) {
  return mk_atom(std::move(pred), std::vector<Term>{std::move(t)});
}
Formula mk_eq(Term lhs, Term rhs);
Formula mk_not(Formula f);
// mk_and / mk_or flatten nested nodes of the same kind, normalize a single
// child to the child itself and an empty list to the truth-value constant.
// They perform no other simplification: duplicate members, constants among
// the members and complementary members are all preserved.
Formula mk_and(Formulas subs);
Formula mk_or(Formulas subs);
Formula mk_forall(std::string var, Formula body);
Formula mk_exists(std::string var, Formula body);
Formula mk_atleast(int n, std::string var, Formula body);  // throws BadCount if n < 1
Formula mk_allbut(int n, std::string var, Formula body);   // throws BadCount if n < 1
Formula mk_forall_pred(std::string pred, int arity, Formula body);
Formula mk_exists_pred(std::string pred, int arity, Formula body);

inline Formula mk_neq(Term lhs, Term rhs) {
  return mk_not(mk_eq(std::move(lhs), std::move(rhs)));
}

bool is_quantifier(Kind k);           // any of the six binder kinds
bool is_individual_quantifier(Kind k);  // Forall / Exists / AtLeast / AllBut
bool is_counting(Kind k);
bool is_pred_quantifier(Kind k);

struct FreeSymbols {
  std::set<std::string> vars;
  std::set<std::string> consts;
  std::map<std::string, int> preds;  // name -> arity
};

FreeSymbols free_symbols(const Formula& f);
bool occurs_free_var(const Formula& f, const std::string& var);
bool occurs_pred(const Formula& f, const std::string& pred);  // free occurrences
bool occurs_term(const Formula& f, const Term& t);            // free occurrences
std::set<std::string> bound_var_names(const Formula& f);
std::set<std::string> all_names(const Formula& f);  // every identifier, any role

// Replaces free occurrences of variable x by term t. Throws Capture if t is
// a variable that is bound anywhere in f; callers rename first.
Formula substitute(const Formula& f, const std::string& x, const Term& t);

// Replaces free occurrences of `from` (variable or constant) by `to`.
// Same capture discipline as substitute.
Formula replace_term(const Formula& f, const Term& from, const Term& to);

// complement(F) = G when F is not G, otherwise not F. No truth-value
// simplification happens here.
Formula complement(const Formula& f);

// Swaps verum/falsum, And/Or, Forall/Exists, AtLeast/AllBut, ForallPred/
// ExistsPred recursively; atoms and equalities are left alone and negation
// passes through. dual(dual(F)) == F.
Formula dual(const Formula& f);

// Pushes negation down to atoms, equalities and counting literals using
// double negation, De Morgan and the quantifier dualities (a counting
// quantifier under negation flips into its defined dual with the negation
// moving into the body).
Formula nnf(const Formula& f);

FormulaClass classify(const Formula& f);

// Monotone fresh-name source. Produces base + decimal suffix and never hands
// out a name it has seen or produced before.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(const Formula& seed) { absorb(seed); }

  void absorb(const Formula& f);
  void reserve(const std::string& name) { used_.insert(name); }
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
  int next_ = 1;
};

// Renames every binder to a globally fresh, pairwise distinct name, outermost
// first. The fresh base is the original name with trailing digits stripped.
Formula rename_bound(const Formula& f, FreshNames& names);
Formula rename_bound(const Formula& f);

// Positions are paths of child indices; every quantifier body is child 0.
using Path = std::vector<int>;

Formula subformula_at(const Formula& f, const Path& path);
Formula replace_at(const Formula& f, const Path& path, const Formula& g);
std::size_t node_count(const Formula& f);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const {
    return static_cast<std::size_t>(f.hash());
  }
};

// Structural total order consistent with operator==; used for canonical
// formula sets (clause subsumption, scope normalization).
bool formula_less(const Formula& a, const Formula& b);

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const {
    return formula_less(a, b);
  }
};

}  // namespace monel

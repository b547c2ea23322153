#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "monel/formula.hpp"

namespace monel {

// The rewriting rule catalog. Every rule is an equivalence except the InfV
// family, which are entailments (left-to-right weakening only).
enum class RuleId {
  NotNot,
  NotAnd,
  NotOr,
  NotAll,
  NotEx,
  AoAssoc,
  AoComm,
  AoIdem,
  TvNotT,
  TvNotF,
  TvAndT,
  TvAndF,
  TvOrT,
  TvOrF,
  TvQT,
  TvQF,
  ComplemAnd,
  ComplemOr,
  DistDnf,
  DistCnf,
  AllOutAnd,
  ExOutOr,
  QOutAo,
  QuantDrop,
  QuantFlip,
  VarRename,
  SubsAndAbsorp,
  SubsOrAbsorp,
  Taut,
  Subs,
  Unit,
  PulloutAll,
  PulloutEx,
  InfV,
  InfVQ,
  InfVbarPos,
  InfVbarNeg,
  InfVbarPosStar,
  InfVbarNegStar,
};

inline constexpr int kNumRules = 39;

// Stable kebab-case identifier, e.g. "not-all".
const char* rule_name(RuleId r);
// Historical catalog label where one exists (e.g. "VI*"); otherwise the
// same mnemonic as rule_name.
const char* rule_label(RuleId r);
bool rule_is_entailment(RuleId r);

enum class Direction { L2R, R2L };

// One rewriting step. Steps are self-contained: `position` addresses a
// subformula of `before`, and replaying the rule there yields `after`.
struct RewriteStep {
  RuleId rule;
  Path position;
  Direction direction = Direction::L2R;
  bool dualized = false;
  Formula before;
  Formula after;
};

struct Trace {
  std::vector<RewriteStep> steps;
};

// Line-oriented rendering: "<label> @ root[.i.j] <L2R|R2L>" followed by
// indented before/after formulas.
std::string to_text(const Trace& t);

struct RewriteContext {
  FreshNames fresh;
  Trace* trace = nullptr;
  std::size_t node_limit = 1'000'000;
};

// Applies `rule` at `position` in the given direction. With `dualized` set
// the rule is conjugated by dual(): the subformula is dualized, the rule
// applied, and the result dualized back, which is equivalence-preserving for
// every equivalence rule. Entailment rules reject both R2L and dualized
// application.
//
// Throws NoMatch when the subformula does not fit the rule pattern,
// SideConditionViolated for freeness violations, EntailmentReversed as
// described above.
Formula apply_rule(const Formula& root, RuleId rule, const Path& position,
                   Direction direction, bool dualized = false);

inline Formula apply_rule(const Formula& root, const RewriteStep& s) {
  return apply_rule(root, s.rule, s.position, s.direction, s.dualized);
}

struct RewriteContext;

// Probing form used by the strategy layers: applies the rule in place and
// appends a step to ctx->trace when tracing. Returns false (leaving f
// untouched) when the pattern does not match or a side condition fails.
bool try_rule(Formula& f, RuleId rule, const Path& position, Direction dir,
              RewriteContext* ctx = nullptr, bool dualized = false);

// Sound, incomplete entailment test used by the absorption rules: structural
// equality, truth-value extremes, counting-index comparisons on a shared
// body, conjunction supersets and disjunction memberships.
bool entails_syntactic(const Formula& f, const Formula& g);

// Fixpoint of the truth-value rules plus ComplemAnd/ComplemOr. For formulas
// without counting quantifiers no verum/falsum survives except as the whole
// formula; a counting quantifier may legitimately keep its constant body
// (e.g. "atleast 2 x. true" is not a truth value).
Formula simplify_truth_values(const Formula& f, RewriteContext* ctx = nullptr);

enum class MatrixPolarity { Cnf, Dnf };

// Tautology removal, subsumption and unit reduction to fixpoint on a clausal
// matrix (And of Ors for Cnf, Or of Ands for Dnf; degenerate single-clause
// and single-literal matrices are accepted). Clause members may be arbitrary
// non-And/Or formulas or their negations. Throws ShapeError otherwise.
Formula clause_simplify(const Formula& matrix, MatrixPolarity polarity,
                        RewriteContext* ctx = nullptr);

using IsBasic = std::function<bool(const Formula&)>;

// Boolean normal forms over arbitrary "basic" building blocks: negations are
// pushed down to basics (a negated basic is kept as a literal) and And/Or
// distributed until the result is an Or of Ands (resp. And of Ors) of
// basics/negated basics, then clause-simplified. Throws ShapeError when a
// leaf under the Boolean structure is neither basic nor a pushable
// connective, SizeLimitExceeded when the distribution exceeds
// ctx->node_limit nodes (default one million).
Formula to_dnf_over_basics(const Formula& f, const IsBasic& is_basic,
                           RewriteContext* ctx = nullptr);
Formula to_cnf_over_basics(const Formula& f, const IsBasic& is_basic,
                           RewriteContext* ctx = nullptr);

enum class CircumMode { Forall, Exists };

// Circumlocution of an argument term: F[t] becomes forall x. (x != t | F[x])
// or exists x. (x = t & F[x]), abstracting every free occurrence of t. The
// variable x must be fresh for F and t must not be a variable bound in F;
// violations throw CaptureError.
Formula circumlocute(const Formula& f, const Term& t, const std::string& x,
                     CircumMode mode);

}  // namespace monel

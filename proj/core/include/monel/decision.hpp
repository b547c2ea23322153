#pragma once

// Decision procedures. The centerpiece reduces validity and satisfiability
// of quantified relational monadic formulas with equality to the spectrum of
// a pure counting sentence: close the formula, eliminate all predicate
// quantifiers, normalize to counting form, read off the cardinalities.
// Around it sit the classical special cases: propositional deciders
// (substitution, conjunctive and disjunctive normal form), quantified
// Boolean formulas by inward propagation, and Quine's expansion as an
// alternative way to drive individual quantifiers inward.

#include <optional>
#include <string>

#include "monel/formula.hpp"
#include "monel/rewrite.hpp"

namespace monel {

// A pure counting sentence is true or false depending only on the domain
// cardinality, and from some cardinality on its value is constant. The
// spectrum records that cofinite value together with the finitely many
// exceptional cardinalities (all >= 1; domains are nonempty).
enum class SpectrumSign { TrueCofinitely, FalseCofinitely };

struct CardinalitySpectrum {
  SpectrumSign sign = SpectrumSign::TrueCofinitely;
  std::vector<int> exceptions;  // sorted, distinct, each >= 1

  // (sign == TrueCofinitely) XOR (n is an exception); n >= 1.
  bool truth(int n) const;
  bool all_true() const;  // true at every cardinality: validity
  bool any_true() const;  // true at some cardinality: satisfiability

  bool operator==(const CardinalitySpectrum& o) const {
    return sign == o.sign && exceptions == o.exceptions;
  }
  bool operator!=(const CardinalitySpectrum& o) const { return !(*this == o); }
};

// Narrative rendering, e.g. "true for all domain cardinalities with
// exception of 1, 2".
std::string to_text(const CardinalitySpectrum& s);

struct Verdict {
  bool valid = false;
  bool satisfiable = false;  // valid implies satisfiable
  std::optional<CardinalitySpectrum> witness_spectrum;
  std::optional<Trace> trace;
};

// A pure counting formula is built from literals  atleast n x. true  (and
// truth-value constants) under negation, conjunction and disjunction only.
bool is_pure_counting(const Formula& f);

// Exact spectrum of a pure counting formula. Routes through the disjunctive
// normal form: each conjunctive clause is satisfied exactly on an interval
// of cardinalities, with a lower limit from its positive literals and an
// upper limit from its negated ones; the spectrum is the union of those
// intervals. Throws ShapeError off the fragment.
CardinalitySpectrum decide_pure_counting(const Formula& f);

// Closure used by the decidability reduction: binds the free predicates,
// then the free individual variables, then the constants of F, in that
// order from the outside in. Constants are renamed to fresh variables so
// that they can be quantified. The sorted name order within each group
// makes the result deterministic.
Formula close_universally(const Formula& f);
Formula close_existentially(const Formula& f);

// Decides a formula of class <= QMON_EQ (ClassError otherwise). The valid
// field comes from the universal closure, the satisfiable field from the
// existential closure; each closure is eliminated, normalized to counting
// form, and read off as a spectrum. witness_spectrum is the spectrum of the
// closure that names the operation (universal for decide_validity,
// existential for decide_satisfiability), and with_trace records the
// counting-normalization steps of that same run. On closed inputs the two
// operations agree completely.
Verdict decide_validity(const Formula& f, bool with_trace = false);
Verdict decide_satisfiability(const Formula& f, bool with_trace = false);

// Substitution method for formulas whose predicates are all nullary (Boolean
// structure, predicate quantifiers allowed; anything else throws
// ClassError): a quantifier exists2 p / forall2 p holds iff the body holds
// under one / both of the instantiations p := true, p := false, applied
// recursively; free predicates are tabulated the same way, making the
// formula valid when every row evaluates to true and satisfiable when some
// row does.
Verdict prop_decide_substitution(const Formula& f);

// Normal-form deciders for the same fragment. Predicate quantifiers are
// first removed innermost-first by the normal-form steps themselves: an
// existential quantifier distributes over the disjunctive normal form of
// its body, where dropping the quantified literal from each clause
// eliminates it; a universal quantifier dually over the conjunctive normal
// form. On the quantifier-free remainder, prop_decide_cnf reads validity
// off the conjunctive normal form (every clause contains a complementary
// pair) and derives satisfiability from the negation; prop_decide_dnf reads
// satisfiability off the disjunctive normal form (some clause is free of
// complementary pairs) and derives validity from the negation.
Verdict prop_decide_cnf(const Formula& f);
Verdict prop_decide_dnf(const Formula& f);

// Decides a closed formula with only nullary predicates (ClassError
// otherwise) by propagating the predicate quantifiers inward until every
// one stands in a block  exists2 p. p  or  exists2 p. (~p),  then replacing
// the blocks with verum and simplifying truth values.
Verdict qbf_decide_inward(const Formula& f);

// One application of Quine's expansion. f must be  exists x. B  or
// forall x. B  with the given variable (ShapeError otherwise), and g a
// subformula of B that has no free occurrence of x and whose free symbols
// are not captured by a binder inside B; occurrences of g under such a
// binder denote something else and are left alone, and when no occurrence
// remains the step throws EligibilityError. Returns the raw expansion
//   exists x. B  ==  (g | exists x. B[g:=false]) & (~g | exists x. B[g:=true])
//   forall x. B  ==  (g & forall x. B[g:=true]) | (~g & forall x. B[g:=false])
// without simplification.
Formula quine_step(const Formula& f, const Formula& g, const std::string& x);

// Exhaustively rewrites innermost quantified subformulas with quine_step,
// always expanding a maximal subformula free of the quantified variable and
// simplifying truth values and complementary guards after each step. The
// result is equivalent to f and free of quantifier scopes that contain
// subformulas independent of their variable. Quantifiers without an
// eligible subformula are left unchanged.
Formula quine_expand(const Formula& f);

// Decision by Quine's route: quine_expand drives the quantifiers inward,
// then the result is decided exactly like decide_validity /
// decide_satisfiability (whose distribution-based normalization covers the
// scopes the expansion cannot split). Requires class <= MON (ClassError
// otherwise); verdict fields and witness_spectrum follow the decide_validity
// conventions.
Verdict quine_decide(const Formula& f, bool with_trace = false);

}  // namespace monel

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "monel/formula.hpp"

namespace monel {

// Extension of one predicate over domain {0, ..., domain_size-1}: the set of
// argument tuples it holds of. A nullary predicate is true iff the empty
// tuple is present.
struct PredExt {
  int arity = 0;
  std::set<std::vector<int>> tuples;
};

// A finite interpretation. Domains are nonempty throughout the library
// (domain_size >= 1); free variables and constants are interpreted alike as
// domain elements.
struct Interpretation {
  int domain_size = 1;
  std::map<std::string, PredExt> preds;
  std::map<std::string, int> consts;
  std::map<std::string, int> vars;
};

struct OracleOptions {
  int max_domain = 3;
  // Total number of interpretations examined across all domain sizes.
  std::uint64_t budget = 8'000'000;
  // Guard: domain sizes beyond 6 must be requested explicitly.
  bool allow_large_domains = false;
};

// Evaluates under the given interpretation. Counting quantifiers count
// witnesses; predicate quantifiers enumerate all extensions of the stated
// arity. Throws MissingSymbol for symbols the interpretation lacks, Arity on
// tuple-width mismatch, Budget when a predicate quantifier would enumerate
// more than 2^25 extensions.
bool evaluate(const Formula& f, const Interpretation& i);

// Joint signature of a set of formulas; conflicting arities raise Arity.
struct Signature {
  std::map<std::string, int> preds;
  std::set<std::string> consts;
  std::set<std::string> vars;
};
Signature signature_of(const std::vector<Formula>& fs);

// First interpretation (domain sizes ascending, then lexicographic over
// predicate extensions in name order, then constants, then free variables)
// on which F and G differ; nullopt when none exists up to max_domain.
std::optional<Interpretation> check_equiv(const Formula& f, const Formula& g,
                                          const OracleOptions& opts = {});

// First model of F that falsifies G.
std::optional<Interpretation> check_entails(const Formula& f, const Formula& g,
                                            const OracleOptions& opts = {});

std::optional<Interpretation> find_model(const Formula& f,
                                         const OracleOptions& opts = {});
std::optional<Interpretation> find_countermodel(const Formula& f,
                                                const OracleOptions& opts = {});

// Sufficient domain size for validity/satisfiability of a first-order MON=
// formula: q * 2^m with q the quantifier rank (a counting quantifier of index
// n contributes n) and m the number of predicate symbols; at least 1.
std::uint64_t small_model_bound(const Formula& f);

std::string describe(const Interpretation& i);

}  // namespace monel

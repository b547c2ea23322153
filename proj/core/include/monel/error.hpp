#pragma once

#include <stdexcept>
#include <string>

namespace monel {

// Every contract violation in the library throws Error with a code that
// identifies the violated precondition. Codes are stable API.
enum class ErrorCode {
  Syntax,          // surface syntax parse failure
  Arity,           // one predicate used with two different arities
  BadCount,        // counting quantifier index < 1
  BadArgs,         // malformed argument combination for an op
  Capture,         // substitution or abstraction would capture a variable
  Class,           // formula outside the class an op is defined for
  Shape,           // formula does not have the shape an op requires
  NoMatch,         // rewrite rule pattern does not match at the position
  SideCondition,   // rule pattern matches but a side condition fails
  EntailmentReversed, // entailment-only rule applied right-to-left
  SizeLimit,       // node-count ceiling exceeded during distribution
  EliminandOccurs, // eliminand predicate occurs where it must not
  Polarity,        // occurrence polarity requirement violated
  EliminandInDefiniens,
  NotFresh,        // name required to be fresh already occurs
  Eligibility,     // no eligible subformula for an expansion step
  MissingSymbol,   // interpretation lacks a symbol the formula uses
  Budget,          // interpretation-count ceiling exceeded
  Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace monel

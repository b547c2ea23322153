#pragma once

#include <string>

#include "monel/formula.hpp"

namespace monel {

// Parses one formula in the surface syntax:
//
//   formula := iff
//   iff     := imp ('<->' imp)*          right-associative, sugar
//   imp     := or ('->' or)*             right-associative, sugar
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '~' unary | quant | atom | '(' formula ')' | 'true' | 'false'
//   quant   := ('forall'|'exists') var '.' unary
//            | 'atleast' INT var '.' unary
//            | 'allbut' INT var '.' unary
//            | ('forall2'|'exists2') pred '.' unary
//   atom    := IDENT | IDENT '(' term (',' term)* ')'
//            | term '=' term | term '!=' term
//   term    := IDENT
//
// '->' and '<->' are parse-time sugar (A -> B becomes ~A | B, A <-> B becomes
// (~A | B) & (~B | A)); the tree never contains them. '#' starts a comment
// running to end of line. Identifiers under an enclosing individual binder
// are variables, all other term identifiers default to constants. A predicate
// used with two different arities raises ArityError; the arity of a
// quantified predicate is inferred from its occurrences (0 if it has none).
Formula parse(const std::string& text);

// Prints in the same syntax with minimal parentheses; quantifier bodies are
// parenthesized whenever they are not atom-like. parse(print(F)) == F.
std::string print(const Formula& f);

std::string print(const Term& t);

}  // namespace monel

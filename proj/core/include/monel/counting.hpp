#pragma once

// Counting quantifiers and the counting-quantifier normal form (CQNF).
//
// A formula is in counting-quantifier normal form when it is a Boolean
// combination of *basic* formulas:
//   (a) a nullary predicate atom,
//   (b) a unary predicate atom over a constant or free variable,
//   (c) an equality between two terms (only in the variant with equality),
//   (d) a counting literal  atleast n x. (L1 & ... & Lm)  whose matrix is a
//       conjunction of pairwise different, pairwise non-complementary unary
//       literals on the bound variable (m = 0 yields  atleast n x. true).
// In particular no quantifier scope contains another quantifier, so the
// quantifier structure of the input has been dissolved into cardinality
// constraints plus ground facts.

#include <optional>
#include <string>
#include <vector>

#include "monel/formula.hpp"
#include "monel/rewrite.hpp"

namespace monel {

// How counting quantifiers unfold into plain first-order quantifiers.
//   Poly: polynomial-size block of n quantifiers over renamed copies.
//   Lin:  linear-size nesting that keeps the original bound variable inside.
enum class ExpandMode { Poly, Lin };

// atleast n x. F  unfolded into plain quantifiers.
//   Poly: exists x1..xn (F[x1] & ... & F[xn] & /\_{i<j} xi != xj)
//   Lin:  forall x1..x_{n-1} exists x (F[x] & /\_{i<n} x != xi)
// Fresh names derive from x with numeric suffixes; the overload without a
// FreshNames argument seeds freshness from the body and x alone.
Formula expand_exists_counting(int n, const std::string& x, const Formula& body,
                               ExpandMode mode, FreshNames& names);
Formula expand_exists_counting(int n, const std::string& x, const Formula& body,
                               ExpandMode mode);

// allbut n x. F  unfolded into plain quantifiers.
//   Poly: forall x1..xn (F[x1] | ... | F[xn] | \/_{i<j} xi = xj)
//   Lin:  exists x1..x_{n-1} forall x (F[x] | \/_{i<n} x = xi)
Formula expand_forall_counting(int n, const std::string& x, const Formula& body,
                               ExpandMode mode, FreshNames& names);
Formula expand_forall_counting(int n, const std::string& x, const Formula& body,
                               ExpandMode mode);

// Counting-specific simplifications, applied bottom-up:
//   atleast n x. false == false          allbut n x. true == true
//   atleast 1 x. true  == true           allbut 1 x. false == false
// plus absorption between quantifier members of one conjunction or
// disjunction when one syntactically entails the other (for example
// atleast 2 x. p(x) & atleast 5 x. p(x)  collapses to  atleast 5 x. p(x)).
// Note that  atleast n x. true  (n >= 2) and  allbut n x. false  are kept:
// they constrain the domain cardinality.
Formula counting_simplify(const Formula& f);

// "No distinct terms": NDT(F, x, T, m) states that no m terms of T are
// pairwise distinct witnesses of F, as the conjunction over all m-element
// subsets S of T of
//     \/_{t in S} ~F[t]  |  \/_{ti,tj in S, i<j} ti = tj.
// Preconditions (BadArguments otherwise): the terms of T are pairwise
// distinct, differ from x, and do not occur in F; 1 <= m <= |T|.
Formula ndt(const Formula& body, const std::string& x,
            const std::vector<Term>& terms, int m);

// How a guarded existential is rephrased with counting literals.
enum class GuardMode { Disj, Conj };

// Equivalent replacement for  exists x (F[x] & /\_i x != t_i)  in which x no
// longer occurs free under any plain quantifier:
//   Disj: \/_{1<=m<=n} (atleast m x. F & NDT(m))  |  atleast n+1 x. F
//   Conj: atleast 1 x. F  &  /\_{1<=m<=n} (atleast m+1 x. F | NDT(m))
// With no guard terms both modes yield  atleast 1 x. F.  The terms must be
// pairwise distinct, differ from x, and not occur in F (BadArguments).
Formula eliminate_guarded_exists(const Formula& body, const std::string& x,
                                 const std::vector<Term>& terms, GuardMode mode);

// Counting-quantifier normal form. Requires a monadic first-order input
// (equality and counting quantifiers allowed, ClassViolation otherwise).
// The result is an equivalent Boolean combination of basic formulas whose
// free symbols all occur in the input. Intermediate disjunctive normal forms
// respect ctx->node_limit when a context is given (SizeLimitExceeded).
Formula counting_normal_form(const Formula& f, GuardMode mode = GuardMode::Conj,
                             RewriteContext* ctx = nullptr);

// Equality-free variant: requires a monadic input without equality and
// without proper counting (ClassViolation otherwise) and produces a Boolean
// combination of basic formulas where the counting literals (d) degenerate
// to plain existentials  exists x. (L1 & ... & Lm)  and no equality occurs.
Formula normal_form_noeq(const Formula& f, RewriteContext* ctx = nullptr);

// Checks the CQNF shape described at the top of this header. Returns
// std::nullopt when f is in normal form, otherwise a description of the
// first offending subformula. With allow_equality the basic forms are
// (a)-(d) and plain quantifiers are rejected; without it the equality-free
// shape is checked instead: no equality, no counting literals, and
// existentials must carry a literal matrix.
std::optional<std::string> validate_cqnf(const Formula& f, bool allow_equality);

// General-purpose equivalence-preserving cleanup used after normal forms and
// predicate elimination: truth-value simplification, reflexive equalities,
// counting identities, duplicate and absorbed members of conjunctions and
// disjunctions, complementary members, vacuous quantifiers, and equality
// guard pullout, iterated to a fixpoint.
Formula simplify(const Formula& f);

}  // namespace monel

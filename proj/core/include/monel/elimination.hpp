#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monel/formula.hpp"

namespace monel {

// Predicate-quantifier elimination for relational monadic logic.
//
// The central shape is the Hauptform: an existential predicate quantifier
// whose argument is a conjunction of four groups of counting-quantified
// clauses, each clause containing exactly one literal of the quantified
// predicate on the shared bound variable:
//
//   exists2 p. (  /\_i allbut a_i x. (A_i | p(x))
//               & /\_i allbut b_i x. (B_i | ~p(x))
//               & /\_i atleast c_i x. (C_i & p(x))
//               & /\_i atleast d_i x. (D_i & ~p(x)) )
//
// with every A_i, B_i, C_i, D_i free of p. The non-generalized variant uses
// plain forall/exists binders (all counts 1). On this shape the quantifier
// can be eliminated in closed form; arbitrary monadic formulas are first
// brought into it via the counting normal form.

// One clause of a Hauptform group: the counting index and the p-free part,
// expressed over the shared bound variable.
struct HauptformMember {
  int count = 1;
  Formula body;
};

struct Hauptform {
  std::string pred;  // the quantified predicate (unary)
  std::string var;   // shared bound variable of all four groups
  // generalized: groups use counting quantifiers (allbut/atleast with their
  // counts); otherwise plain forall/exists and every count must be 1.
  bool generalized = true;
  std::vector<HauptformMember> a;  // universal, clause (A_i | p x)
  std::vector<HauptformMember> b;  // universal, clause (B_i | ~p x)
  std::vector<HauptformMember> c;  // existential, clause (C_i & p x)
  std::vector<HauptformMember> d;  // existential, clause (D_i & ~p x)
};

// Renders the four-block formula shown above. Throws EliminandOccurs when a
// group body mentions the predicate, ShapeError when generalized is unset
// but a count exceeds 1, BadCount for counts < 1.
Formula render_hauptform(const Hauptform& h);

// Parses an `exists2 p. (...)` formula of the four-block shape back into the
// structured form; group bodies are rewritten onto one shared variable.
// Throws ShapeError when the body does not match.
Hauptform match_hauptform(const Formula& f);

// The one-step elimination kernel:
//   exists2 p. ((forall x. (A | p(x))) & (forall x. (B | ~p(x))))
//   ==  forall x. (A | B)
// Returns the right-hand side unsimplified. Throws EliminandOccurs if p
// occurs in A or B.
Formula basic_elim(const std::string& x, const Formula& a, const Formula& b,
                   const std::string& p);

// Equivalence-preserving preparation step: returns a formula equivalent to
// `exists2 p. f` in which p occurs only inside positive subformulas that
// match the generalized Hauptform. Works by counting normal form, a
// disjunctive normal form over the basic blocks, removal of contradictory
// disjuncts, distribution of the predicate quantifier, miniscoping, and the
// guarded rewriting of atoms p(t) / ~p(t) into allbut-1 clauses. Requires a
// relational monadic first-order argument (ClassError otherwise) and a unary
// predicate. When p does not occur the quantifier is simply dropped.
Formula build_hauptform(const std::string& p, const Formula& f);

// Elimination of a quantified nullary predicate: returns a p-free formula
// equivalent to `exists2 p. f`. After normalization every occurrence of p
// sits in a positive subformula `exists2 p. p` or `exists2 p. ~p`, both of
// which reduce to verum. ClassError when f is not relational monadic
// first-order or p occurs with nonzero arity.
Formula normalize_nullary(const std::string& p, const Formula& f);

// The pieces produced by expanding a Hauptform's counting quantifiers into
// the shape the one-step kernel accepts:
//   exists prefix... (guard & exists2 p. ((forall var. (a | p var))
//                                       & (forall var. (b | ~p var))))
// is equivalent to the rendered Hauptform.
struct BasicElimInput {
  std::vector<std::string> prefix;  // existential variables, outermost first
  Formula guard;
  Formula a;
  Formula b;
};

// Expands a Hauptform into the kernel shape: universal counting clauses are
// unrolled into equality disjuncts over fresh witnesses, existential ones
// into instantiated witnesses guarded by disequalities. Fresh variables are
// drawn from `names` when given (and recorded there), otherwise from the
// rendered Hauptform's own name pool.
BasicElimInput hauptform_to_basic(const Hauptform& h,
                                  FreshNames* names = nullptr);

// Full elimination of one quantified predicate (nullary or unary): returns a
// simplified formula equivalent to `exists2 p. f` in which p is
// syntactically absent and whose free symbols are among those of f.
// ClassError when f is not relational monadic first-order. When p does not
// occur in f, f is returned unchanged.
Formula eliminate_predicate(const std::string& p, const Formula& f);

// Eliminates every predicate quantifier: universal ones are rewritten to
// negated existential ones, then innermost-first (leftmost among siblings)
// each existential predicate quantifier is eliminated. Input must be
// relational monadic second-order (ClassError otherwise); the result is
// first-order and equivalent. First-order input is returned unchanged.
Formula eliminate_all(const Formula& f);

// Equality-free variant: f must contain no equality and no counting
// quantifier (ClassError otherwise), p unary. Produces the closed-form
// resultant built from the plain-quantifier Hauptform:
//
//   forall x. (/\ A_i | /\ B_i)
//   & exists u_1..u_c v_1..v_d. ( /\_{i,j} u_i != v_j
//                               & /\_i (C_i[u_i] & /\_j B_j[u_i])
//                               & /\_i (D_i[v_i] & /\_j A_j[v_i]) )
//
// per disjunct, without final simplification (equality may appear in the
// result even though the input has none).
Formula eliminate_noeq(const std::string& p, const Formula& f);

// The closed-form resultant above for a single plain-quantifier Hauptform,
// unsimplified. Throws ShapeError when h.generalized is set.
Formula hauptform_elim_noeq(const Hauptform& h, FreshNames* names = nullptr);

// Schröder's weakened resultant "from the raw": drops the disequality
// conjuncts, instantiating the existential groups against the full
// universal parts instead:
//   forall x. (A | B) & /\_i exists x. (C_i & B) & /\_i exists x. (D_i & A)
// with A = /\ A_i, B = /\ B_i. The exact resultant entails this one, and
// they coincide when both existential groups are empty. Requires a
// plain-quantifier Hauptform (ShapeError otherwise).
Formula crude_resultant(const Hauptform& h);

// Simultaneous elimination of p_1..p_n from the full 2^n-clause shape
//   /\_{S subset of {1..n}} forall x. (F_S | \/_{i in S} p_i(x)
//                                          | \/_{i not in S} ~p_i(x))
// yielding `forall x. \/_S F_S`. Clauses may bind different variables; they
// are aligned to the first clause's. Throws ShapeError when the input does
// not match the shape and EliminandOccurs when some p_i occurs in a
// remainder F_S.
Formula simultaneous_elim(const std::vector<std::string>& ps,
                          const Formula& f);

// Definition introduction: replaces the indicated occurrences, each of which
// must instantiate g (with t_i for x), by atoms p(t_i) and conjoins the
// definition of p:
//   exists2 p. ((forall x. ((~p(x) | g) & (p(x) | ~g))) & f')
// Throws NotFresh when p already occurs anywhere in f or g, CaptureError
// when an occurrence sits where a free variable of g (other than x) is
// bound, NoMatch when a position does not instantiate g, BadArgs for
// overlapping positions or when x is not free in g.
Formula intro_definition(const Formula& f, const std::string& x,
                         const Formula& g, const std::vector<Path>& occurrences,
                         const std::string& p);

// Inverse: f must be `exists2 p. (...)` with one conjunct of the definition
// shape above (the biconditional may come in either clause order); every
// other occurrence p(t) is replaced by g[t] and the definition dropped.
// Throws ShapeError when no definition conjunct is found, CaptureError as
// above, ArityError for occurrences of p with arity other than one.
Formula expand_definition(const Formula& f, const std::string& p);

enum class DefDirection {
  Imp,     // definition clause forall x. (p(x) -> g): occurrences positive
  RevImp,  // definition clause forall x. (p(x) <- g): occurrences negative
};

// Ackermann's lemma: given the definition half `forall x. (p x -> g)` (resp.
// `<-`), the conjunction `exists2 p. (def & f)` is equivalent to f with
// every atom p(t) replaced by g[t], provided every occurrence of p in f has
// the polarity matching the direction. Returns the replaced f, raw.
// Throws PolarityViolation on a mismatched occurrence,
// EliminandInDefiniens when p occurs in g, CaptureError as above.
Formula ackermann_lemma_elim(const std::string& p, DefDirection dir,
                             const std::string& x, const Formula& g,
                             const Formula& f);

// Ackermann's quantifier switching: for p of arity n+1 whose every
// occurrence in f has x as first argument (p and x nowhere rebound in f),
//   exists2 p. forall x. f[p(x,t...)]  ==  forall x. exists2 q. f[q(t...)]
// with q a fresh predicate of arity n. Given the matrix f, returns the
// right-hand side. When p does not occur, returns `forall x. f` with no
// second-order quantifier. Throws ShapeError when an occurrence lacks x in
// first position or p / x is rebound.
Formula quantifier_switch(const std::string& p, const std::string& x,
                          const Formula& f);

// One shorthand introduced by the monadic encoding: atom
// pred(args[0..k-1]) with the slot `hole` abstracted, i.e. shorthand(t)
// stands for the original atom with t in that slot. hole < 0 encodes a
// fully fixed atom abbreviated by a nullary shorthand.
struct DecodeEntry {
  std::string shorthand;
  std::string pred;
  std::vector<Term> args;
  int hole = -1;
};

struct MonadizeResult {
  // Encoded body: every atom of arity >= 2 replaced by a shorthand atom;
  // includes the linking constraint when the eliminand needed two
  // shorthands.
  Formula body;
  // Shorthands standing for the eliminand, in quantification order
  // (eliminate back to front for innermost-first order).
  std::vector<std::string> eliminands;
  // Decode entries for the shorthands of the other predicates.
  std::vector<DecodeEntry> decode;
};

// Monadic shorthand encoding for a relational body under `exists2 phi`:
// every atom of arity two or more must have at most one argument position
// filled by a locally bound variable; such atoms become unary (or nullary)
// shorthand predicates keyed by the fixed remainder. Two shorthand patterns
// for the eliminand itself are admitted when they abstract different
// argument positions and agree elsewhere; their single common instance is
// then tied by the linking constraint
//   (phi1(s) & phi2(t)) | (~phi1(s) & ~phi2(t)).
// Returns nullopt when no such encoding exists (e.g. an atom relates two
// bound variables). f must be first-order (ClassError otherwise).
std::optional<MonadizeResult> polyadic_monadize(const Formula& f,
                                                const std::string& phi);

// Replaces shorthand atoms by the original atoms they abbreviate.
Formula monadize_decode(const Formula& f,
                        const std::vector<DecodeEntry>& decode);

// eliminate_all extended to relational bodies: when a quantified predicate's
// body is not monadic, the monadic shorthand encoding is attempted, the
// encoded problem eliminated and the result decoded. Throws
// Error(Eligibility) when the encoding fails.
Formula eliminate_general(const Formula& f);

}  // namespace monel

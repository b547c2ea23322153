#include <doctest.h>

#include "monel/formula.hpp"
#include "monel/syntax.hpp"

using namespace monel;

namespace {
void roundtrips(const std::string& src) {
  Formula f = parse(src);
  Formula g = parse(print(f));
  CHECK(f == g);
}
}  // namespace

TEST_SUITE("syntax") {

TEST_CASE("basic parses") {
  CHECK(parse("true").kind() == Kind::True);
  CHECK(parse("p").kind() == Kind::Atom);
  CHECK(parse("p").pred_arity() == 0);
  CHECK(parse("p(a)").pred_arity() == 1);
  CHECK(parse("f(x, y)").pred_arity() == 2);
  CHECK(parse("a = b").kind() == Kind::Eq);
  Formula neq = parse("a != b");
  CHECK(neq.kind() == Kind::Not);
  CHECK(neq.child(0).kind() == Kind::Eq);
}

TEST_CASE("precedence and associativity") {
  Formula f = parse("p | q & r");
  REQUIRE(f.kind() == Kind::Or);
  CHECK(f.child(1).kind() == Kind::And);

  // n-ary collection at one level
  CHECK(parse("p & q & r").num_children() == 3);
  CHECK(parse("p | q | r").num_children() == 3);
}

TEST_CASE("quantifier binds tightly") {
  // the body is the next unary item; use parentheses for a wider scope
  Formula f = parse("forall x. p(x) & q");
  REQUIRE(f.kind() == Kind::And);
  CHECK(f.child(0).kind() == Kind::Forall);

  Formula g = parse("forall x. (p(x) & q(x))");
  REQUIRE(g.kind() == Kind::Forall);
  CHECK(g.child(0).kind() == Kind::And);

  Formula h = parse("exists x. forall y. f(x, y)");
  REQUIRE(h.kind() == Kind::Exists);
  CHECK(h.child(0).kind() == Kind::Forall);
}

TEST_CASE("implication sugar desugars") {
  CHECK(parse("p -> q") == parse("~p | q"));
  CHECK(parse("p -> q -> r") == parse("~p | (~q | r)"));
  CHECK(parse("p <-> q") == parse("(~p | q) & (~q | p)"));
}

TEST_CASE("binder stack resolves identifiers") {
  // unbound identifiers are constants
  Formula f = parse("p(x)");
  CHECK(f.args()[0].kind == TermKind::Const);

  Formula g = parse("exists x. p(x)");
  CHECK(g.child(0).args()[0].kind == TermKind::Var);

  // innermost binder wins
  Formula h = parse("exists x. forall x. p(x)");
  CHECK(h.child(0).child(0).args()[0] == Term::var("x"));

  // a constant and a bound variable sharing a name stay distinct
  Formula k = parse("p(x) & exists x. p(x)");
  CHECK(k.child(0).args()[0].kind == TermKind::Const);
  CHECK(k.child(1).child(0).args()[0].kind == TermKind::Var);
}

TEST_CASE("counting quantifiers") {
  Formula f = parse("atleast 3 x. p(x)");
  CHECK(f.kind() == Kind::AtLeast);
  CHECK(f.count() == 3);
  Formula g = parse("allbut 2 x. p(x)");
  CHECK(g.kind() == Kind::AllBut);
  CHECK(g.count() == 2);
  CHECK_THROWS_AS(parse("atleast 0 x. p(x)"), Error);
}

TEST_CASE("predicate quantifiers infer arity from occurrences") {
  Formula f = parse("exists2 p. forall x. p(x)");
  CHECK(f.kind() == Kind::ExistsPred);
  CHECK(f.pred_arity() == 1);

  Formula g = parse("forall2 q. (q | ~q)");
  CHECK(g.pred_arity() == 0);

  // no occurrence at all: arity zero
  Formula h = parse("exists2 p. true");
  CHECK(h.pred_arity() == 0);

  CHECK_THROWS_AS(parse("exists2 p. (p(a) & p)"), Error);
}

TEST_CASE("arity consistency is enforced") {
  CHECK_THROWS_AS(parse("p(a) & p(a, b)"), Error);
  CHECK_THROWS_AS(parse("p & p(a)"), Error);
  // shadowed predicate may differ in arity from the outer one
  Formula f = parse("p(a) & exists2 p. p(a, b)");
  CHECK(f.valid());
}

TEST_CASE("comments and whitespace") {
  Formula f = parse("p(a) # trailing comment\n & q  # another\n");
  CHECK(f == parse("p(a) & q"));
}

TEST_CASE("errors carry positions") {
  try {
    parse("p &\n  |");
    FAIL("expected syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Syntax);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse(""), Error);
  CHECK_THROWS_AS(parse("p q"), Error);
  CHECK_THROWS_AS(parse("forall. p"), Error);
  CHECK_THROWS_AS(parse("p("), Error);
}

TEST_CASE("printer emits minimal parentheses") {
  CHECK(print(parse("p & (q | r)")) == "p & (q | r)");
  CHECK(print(parse("(p & q) | r")) == "p & q | r");
  CHECK(print(parse("~(p & q)")) == "~(p & q)");
  CHECK(print(parse("~p & q")) == "~p & q");
  CHECK(print(parse("a != b")) == "a != b");
}

TEST_CASE("round trips") {
  roundtrips("true");
  roundtrips("~false");
  roundtrips("p(a) & q(b) | r");
  roundtrips("forall x. (p(x) -> exists y. (q(y) & x != y))");
  roundtrips("atleast 2 x. (p(x) & ~q(x))");
  roundtrips("allbut 1 x. (p(x) | x = a)");
  roundtrips("exists2 p. ((forall x. (p(x) | q(x))) & exists x. ~p(x))");
  roundtrips("~(p | ~(q & ~r))");
  roundtrips("(exists x. p(x)) & q");
  roundtrips("forall x. forall y. (f(x, y) | x = y)");
}

}  // TEST_SUITE

#include <doctest.h>

#include "monel/formula.hpp"
#include "monel/syntax.hpp"

using namespace monel;

TEST_SUITE("formula") {

TEST_CASE("constructors flatten and normalize") {
  Formula p = mk_atom("p");
  Formula q = mk_atom("q");
  Formula r = mk_atom("r");

  CHECK(mk_and({}) == mk_true());
  CHECK(mk_or({}) == mk_false());
  CHECK(mk_and({p}) == p);
  CHECK(mk_or({q}) == q);

  Formula nested = mk_and({p, mk_and({q, r})});
  REQUIRE(nested.kind() == Kind::And);
  CHECK(nested.num_children() == 3);
  CHECK(nested == mk_and({mk_and({p, q}), r}));

  // no implicit simplification beyond flattening
  Formula dup = mk_and({p, p});
  CHECK(dup.num_children() == 2);
  Formula with_true = mk_or({p, mk_false()});
  CHECK(with_true.num_children() == 2);
}

TEST_CASE("counting constructors reject indices below one") {
  CHECK_THROWS_AS(mk_atleast(0, "x", mk_true()), Error);
  CHECK_THROWS_AS(mk_allbut(0, "x", mk_true()), Error);
  CHECK(mk_atleast(1, "x", mk_true()).count() == 1);
}

TEST_CASE("atleast one and plain exists are distinct nodes") {
  Formula a = parse("atleast 1 x. p(x)");
  Formula b = parse("exists x. p(x)");
  CHECK(a != b);
  CHECK(a.kind() == Kind::AtLeast);
  CHECK(b.kind() == Kind::Exists);
}

TEST_CASE("free_symbols") {
  Formula f = parse("p(a) & exists x. (q(x) | x = b) & r");
  FreeSymbols fs = free_symbols(f);
  CHECK(fs.consts == std::set<std::string>{"a", "b"});
  CHECK(fs.vars.empty());
  CHECK(fs.preds.size() == 3);
  CHECK(fs.preds.at("p") == 1);
  CHECK(fs.preds.at("r") == 0);

  Formula closed = parse("exists2 p. forall x. p(x)");
  FreeSymbols cs = free_symbols(closed);
  CHECK(cs.vars.empty());
  CHECK(cs.consts.empty());
  CHECK(cs.preds.empty());
}

TEST_CASE("substitute replaces free occurrences only") {
  // free variables are built programmatically; the parser reads unbound
  // identifiers as constants
  Formula f = mk_and({mk_atom("p", Term::var("x")),
                      mk_exists("x", mk_atom("q", Term::var("x")))});
  Formula g = substitute(f, "x", Term::konst("a"));
  CHECK(print(g) == "p(a) & (exists x. q(x))");

  Formula h = mk_forall("y", mk_eq(Term::var("x"), Term::var("y")));
  CHECK_THROWS_AS(substitute(h, "x", Term::var("y")), Error);
}

TEST_CASE("free_symbols after substitute") {
  Formula f = mk_or({mk_atom("p", Term::var("x")),
                     mk_atom("q", Term::var("y"))});
  Formula g = substitute(f, "x", Term::konst("a"));
  FreeSymbols fs = free_symbols(g);
  CHECK(fs.vars == std::set<std::string>{"y"});
  CHECK(fs.consts == std::set<std::string>{"a"});
}

TEST_CASE("complement strips one negation") {
  Formula p = parse("p(a)");
  CHECK(complement(p) == mk_not(p));
  CHECK(complement(mk_not(p)) == p);
  CHECK(complement(mk_true()) == mk_not(mk_true()));
}

TEST_CASE("dual is an involution and swaps counting kinds") {
  Formula f = parse("atleast 2 x. p(x)");
  Formula d = dual(f);
  CHECK(print(d) == "allbut 2 x. p(x)");
  CHECK(dual(d) == f);

  Formula g = parse("forall x. (p(x) & true) | exists2 q. q");
  CHECK(dual(dual(g)) == g);
  CHECK(print(dual(g)) == "(exists x. (p(x) | false)) & (forall2 q. q)");
}

TEST_CASE("nnf pushes negation to literals and counting duals") {
  CHECK(print(nnf(parse("~atleast 2 x. p(x)"))) == "allbut 2 x. (~p(x))");
  CHECK(print(nnf(parse("~(p & ~q)"))) == "~p | q");
  CHECK(print(nnf(parse("~forall x. p(x)"))) == "exists x. (~p(x))");
  CHECK(print(nnf(parse("~exists2 p. p"))) == "forall2 p. (~p)");
  CHECK(print(nnf(parse("~true"))) == "false");
}

TEST_CASE("classify") {
  CHECK(classify(parse("forall x. p(x)")) == FormulaClass::MON);
  CHECK(classify(parse("exists x. x = a")) == FormulaClass::MON_EQ);
  CHECK(classify(parse("atleast 2 x. p(x)")) == FormulaClass::MON_EQ);
  CHECK(classify(parse("atleast 1 x. p(x)")) == FormulaClass::MON);
  CHECK(classify(parse("exists2 p. forall x. p(x)")) == FormulaClass::QMON);
  CHECK(classify(parse("exists2 p. forall x. (p(x) | x = a)")) ==
        FormulaClass::QMON_EQ);
  CHECK(classify(parse("f(x, y)")) == FormulaClass::GENERAL);

  CHECK(class_leq(FormulaClass::MON, FormulaClass::MON_EQ));
  CHECK(class_leq(FormulaClass::MON, FormulaClass::QMON));
  CHECK(class_leq(FormulaClass::QMON, FormulaClass::QMON_EQ));
  CHECK(class_leq(FormulaClass::MON_EQ, FormulaClass::QMON_EQ));
  CHECK(!class_leq(FormulaClass::MON_EQ, FormulaClass::QMON));
  CHECK(!class_leq(FormulaClass::QMON, FormulaClass::MON_EQ));
  CHECK(class_leq(FormulaClass::QMON_EQ, FormulaClass::GENERAL));
}

TEST_CASE("rename_bound gives pairwise distinct fresh binders") {
  Formula f = parse("(exists x. p(x)) | exists x. q(x)");
  Formula g = rename_bound(f);
  CHECK(print(g) == "(exists x1. p(x1)) | (exists x2. q(x2))");

  Formula h = rename_bound(parse("exists x. exists x. p(x)"));
  CHECK(print(h) == "exists x1. (exists x2. p(x2))");
}

TEST_CASE("positions address children with quantifier body at zero") {
  Formula f = parse("p & forall x. (q(x) | r(x))");
  Formula body = mk_or({mk_atom("q", Term::var("x")),
                        mk_atom("r", Term::var("x"))});
  CHECK(subformula_at(f, {1, 0}) == body);
  CHECK(subformula_at(f, {1, 0, 1}).name() == "r");
  Formula g = replace_at(f, {0}, parse("s"));
  CHECK(print(g) == "s & (forall x. (q(x) | r(x)))");
  CHECK_THROWS_AS(subformula_at(f, {5}), Error);
}

TEST_CASE("node_count") {
  CHECK(node_count(parse("p & q")) == 3);
  CHECK(node_count(parse("forall x. p(x)")) == 2);
}

}  // TEST_SUITE

#include <doctest.h>

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "monel/counting.hpp"
#include "monel/elimination.hpp"
#include "monel/error.hpp"
#include "monel/formula.hpp"
#include "monel/oracle.hpp"
#include "monel/rewrite.hpp"
#include "monel/syntax.hpp"
#include "testgen.hpp"

using namespace monel;

namespace {

Formula P(const std::string& s) { return parse(s); }

// Parses a formula in which x is a free *variable*; a bare identifier would
// otherwise denote a constant.
Formula B1(const std::string& s) {
  return parse("forall x. (" + s + ")").child(0);
}

void check_oracle_equiv(const Formula& f, const Formula& g,
                        int max_domain = 3) {
  OracleOptions opts;
  opts.max_domain = max_domain;
  auto sep = check_equiv(f, g, opts);
  if (sep) {
    CAPTURE(print(f));
    CAPTURE(print(g));
    CAPTURE(describe(*sep));
  }
  CHECK_FALSE(sep.has_value());
}

ErrorCode code_of(const std::function<void()>& op) {
  try {
    op();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Internal;
}

// Every identifier of `small` also occurs in `big` (the eliminand aside,
// elimination introduces no new vocabulary beyond bound names).
bool free_symbols_subset(const Formula& small, const Formula& big,
                         const std::string& dropped) {
  FreeSymbols s = free_symbols(small);
  FreeSymbols b = free_symbols(big);
  for (const auto& v : s.vars)
    if (!b.vars.count(v)) return false;
  for (const auto& c : s.consts)
    if (!b.consts.count(c)) return false;
  for (const auto& [p, a] : s.preds) {
    if (p == dropped) return false;
    if (!b.preds.count(p)) return false;
  }
  return true;
}

Formula wrap_exists(const std::string& p, const Formula& f) {
  return mk_exists_pred(p, 1, f);
}

}  // namespace

TEST_CASE("hauptform rendering and matching round-trip") {
  Hauptform h;
  h.pred = "p";
  h.var = "x";
  h.a.push_back({2, B1("q(x)")});
  h.b.push_back({1, B1("~r(x)")});
  h.c.push_back({3, B1("s(x)")});
  h.d.push_back({1, mk_true()});

  Formula r = render_hauptform(h);
  CHECK(print(r) ==
        "exists2 p. ((allbut 2 x. (q(x) | p(x))) & (allbut 1 x. (~r(x) | "
        "~p(x))) & (atleast 3 x. (s(x) & p(x))) & (atleast 1 x. (true & "
        "~p(x))))");

  Hauptform h2 = match_hauptform(r);
  CHECK(h2.pred == "p");
  CHECK(h2.var == "x");
  CHECK(h2.generalized);
  REQUIRE(h2.a.size() == 1);
  REQUIRE(h2.b.size() == 1);
  REQUIRE(h2.c.size() == 1);
  REQUIRE(h2.d.size() == 1);
  CHECK(h2.a[0].count == 2);
  CHECK(h2.c[0].count == 3);
  CHECK(render_hauptform(h2) == r);

  SUBCASE("matching renames group bodies onto the shared variable") {
    Formula mixed = P(
        "exists2 p. ((forall x. (q(x) | p(x))) & (exists y. (s(y) & "
        "p(y))))");
    Hauptform hm = match_hauptform(mixed);
    CHECK(hm.var == "x");
    CHECK_FALSE(hm.generalized);
    REQUIRE(hm.c.size() == 1);
    CHECK(print(hm.c[0].body) == "s(x)");
  }

  SUBCASE("plain form with empty groups accepts a bare truth body") {
    Hauptform ht = match_hauptform(mk_exists_pred("p", 1, mk_true()));
    CHECK(ht.a.empty());
    CHECK(ht.c.empty());
  }

  SUBCASE("render rejects group bodies mentioning the predicate") {
    Hauptform bad;
    bad.pred = "p";
    bad.var = "x";
    bad.a.push_back({1, B1("p(x)")});
    CHECK(code_of([&] { render_hauptform(bad); }) ==
          ErrorCode::EliminandOccurs);
  }

  SUBCASE("plain form rejects counts above one") {
    Hauptform bad;
    bad.pred = "p";
    bad.var = "x";
    bad.generalized = false;
    bad.a.push_back({2, B1("q(x)")});
    CHECK(code_of([&] { render_hauptform(bad); }) == ErrorCode::Shape);
  }

  SUBCASE("match rejects shapes outside the four-group format") {
    CHECK(code_of([&] { match_hauptform(P("p(a)")); }) == ErrorCode::Shape);
    CHECK(code_of([&] {
      match_hauptform(P("exists2 p. (p(a) & (forall x. (q(x) | p(x))))"));
    }) == ErrorCode::Shape);
    // predicate occurring outside its own literal
    CHECK(code_of([&] {
      match_hauptform(P("exists2 p. (forall x. (p(a) | p(x)))"));
    }) == ErrorCode::Shape);
    // two literals of the predicate in one clause
    CHECK(code_of([&] {
      match_hauptform(P("exists2 p. (forall x. (p(x) | ~p(x)))"));
    }) == ErrorCode::Shape);
    // clause without any literal of the predicate
    CHECK(code_of([&] {
      match_hauptform(
          P("exists2 p. ((forall x. q(x)) & (exists x. p(x)))"));
    }) == ErrorCode::Shape);
  }
}

TEST_CASE("kernel equivalence for one positive and one negative clause") {
  Formula a = B1("q(x)");
  Formula b = B1("~r(x)");
  Formula k = basic_elim("x", a, b, "p");
  CHECK(print(k) == "forall x. (q(x) | ~r(x))");

  // exists2 p. (forall x. (A | p x) & forall x. (B | ~p x))  ==  forall x. (A | B)
  Formula lhs = P(
      "exists2 p. ((forall x. (q(x) | p(x))) & (forall x. (~r(x) | "
      "~p(x))))");
  check_oracle_equiv(lhs, k);

  CHECK(code_of([&] { basic_elim("x", B1("p(x)"), b, "p"); }) ==
        ErrorCode::EliminandOccurs);
  CHECK(code_of([&] { basic_elim("x", a, B1("~p(x)"), "p"); }) ==
        ErrorCode::EliminandOccurs);
}

TEST_CASE("hauptform expansion into kernel inputs") {
  Hauptform h;
  h.pred = "p";
  h.var = "x";
  h.a.push_back({2, B1("q(x)")});
  h.b.push_back({1, B1("~r(x)")});
  h.c.push_back({3, B1("s(x)")});
  h.d.push_back({1, mk_true()});

  BasicElimInput in = hauptform_to_basic(h);
  REQUIRE(in.prefix ==
          std::vector<std::string>{"x1", "u2", "u3", "u4", "v5"});
  CHECK(print(in.guard) ==
        "s(u2) & u2 != u3 & u2 != u4 & s(u3) & u3 != u4 & s(u4) & true");
  CHECK(print(in.a) == "(q(x) | x = x1) & x != u2 & x != u3 & x != u4");
  CHECK(print(in.b) == "~r(x) & x != v5");

  // assembling prefix, guard and kernel reproduces the quantified statement
  Formula body = mk_and({in.guard, basic_elim(h.var, in.a, in.b, h.pred)});
  for (auto i = in.prefix.rbegin(); i != in.prefix.rend(); ++i)
    body = mk_exists(*i, body);
  check_oracle_equiv(render_hauptform(h), body, 4);

  SUBCASE("witness counts follow the group counts") {
    Hauptform g;
    g.pred = "p";
    g.var = "x";
    g.c.push_back({2, B1("q(x)")});
    BasicElimInput gi = hauptform_to_basic(g);
    CHECK(gi.prefix.size() == 2);  // two instances for a count-2 block
    Hauptform u;
    u.pred = "p";
    u.var = "x";
    u.a.push_back({3, B1("q(x)")});
    BasicElimInput ui = hauptform_to_basic(u);
    CHECK(ui.prefix.size() == 2);  // two exception points for count 3
  }
}

TEST_CASE("nullary predicate quantifiers reduce to both instantiations") {
  CHECK(normalize_nullary("p", P("p")) == mk_true());
  CHECK(normalize_nullary("p", P("~p")) == mk_true());
  CHECK(print(normalize_nullary("p", P("p & q"))) == "q");
  CHECK(print(normalize_nullary("p", P("(p | q) & (~p | r)"))) == "r | q");
  CHECK(normalize_nullary("p", P("p & ~p")) == mk_false());

  check_oracle_equiv(mk_exists_pred("p", 0, P("(p | q) & (~p | r)")),
                     normalize_nullary("p", P("(p | q) & (~p | r)")));

  // untouched when the predicate is absent
  CHECK(normalize_nullary("p", P("q & r")) == P("q & r"));
  // a unary occurrence is not a nullary elimination problem
  CHECK(code_of([&] { normalize_nullary("p", P("p(a)")); }) ==
        ErrorCode::Class);
}

TEST_CASE("middle-term elimination reproduces the classical conclusions") {
  // "no q is p" and "some r is q" conclude "some r is not p"
  Formula ferio =
      P("(forall x. (~q(x) | ~p(x))) & (exists x. (r(x) & q(x)))");
  Formula rf = eliminate_predicate("q", ferio);
  CHECK(print(rf) == "exists u1. (r(u1) & ~p(u1))");
  check_oracle_equiv(wrap_exists("q", ferio), rf);

  // "all q are p", "all q are r", "some q exists" conclude "some r is p"
  Formula darapti = P(
      "(forall x. (~q(x) | p(x))) & (forall x. (~q(x) | r(x))) & (exists x. "
      "q(x))");
  Formula rd = eliminate_predicate("q", darapti);
  CHECK(print(rd) == "exists u1. (p(u1) & r(u1))");
  check_oracle_equiv(wrap_exists("q", darapti), rd);

  // two negative particular premises still yield a two-element consequence
  Formula partic =
      P("(exists x. (p(x) & ~q(x))) & (exists x. (q(x) & ~r(x)))");
  Formula rp = eliminate_predicate("q", partic);
  CHECK(print(rp) == "exists u1. (exists v2. (~r(u1) & p(v2) & u1 != v2))");
  check_oracle_equiv(wrap_exists("q", partic), rp);
}

TEST_CASE("single predicate elimination on mixed atom and counting inputs") {
  Formula ab = P("p(a) & ~p(b)");
  Formula rab = eliminate_predicate("p", ab);
  CHECK(print(rab) == "a != b");
  check_oracle_equiv(wrap_exists("p", ab), rab);

  CHECK(eliminate_predicate("p", P("p(a)")) == mk_true());
  CHECK(eliminate_predicate("p", P("~p(a)")) == mk_true());

  Formula a2 = P("atleast 2 x. (q(x) & p(x))");
  Formula ra2 = eliminate_predicate("p", a2);
  CHECK(print(ra2) == "exists u1. (exists u2. (q(u1) & u1 != u2 & q(u2)))");
  check_oracle_equiv(wrap_exists("p", a2), ra2);

  // vacuous cases
  CHECK(eliminate_predicate("p", P("q(a)")) == P("q(a)"));
  CHECK(eliminate_predicate("p", P("p & q")) == P("q"));  // nullary route

  // class restriction
  CHECK(code_of([&] { eliminate_predicate("p", B1("p(x) & f(x,x)")); }) ==
        ErrorCode::Class);
}

TEST_CASE("randomized elimination agrees with the finite-model oracle") {
  testgen::Gen g(991);
  testgen::FormulaOpts o;
  o.preds = {"p", "q", "r"};
  o.consts = {"a", "b"};
  o.max_count = 2;
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    Formula f = testgen::rand_formula(g, o, 3);
    Formula r = eliminate_predicate("p", f);
    CAPTURE(print(f));
    CAPTURE(print(r));
    CHECK_FALSE(occurs_pred(r, "p"));
    CHECK(free_symbols_subset(r, mk_or({f, P("a = b")}), "p"));
    OracleOptions oo;
    oo.max_domain = 3;
    auto c = check_equiv(wrap_exists("p", f), r, oo);
    if (c) CAPTURE(describe(*c));
    CHECK_FALSE(c.has_value());
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("quantified statements eliminate completely, innermost first") {
  Formula ferio = P(
      "exists2 q. ((forall x. (~q(x) | ~p(x))) & (exists x. (r(x) & "
      "q(x))))");
  Formula rf = eliminate_all(ferio);
  CHECK(print(rf) == "exists u1. (r(u1) & ~p(u1))");
  check_oracle_equiv(ferio, rf);
  check_oracle_equiv(rf, P("exists u. (r(u) & ~p(u))"));

  // chained middle terms: the innermost quantifier is resolved first
  Formula comp = P(
      "exists2 q1. exists2 q2. ((forall x. (~q1(x) | p(x))) & (forall x. "
      "(~q2(x) | r(x))) & (exists x. (q1(x) & q2(x))))");
  Formula rc = eliminate_all(comp);
  CHECK(print(rc) == "exists u2. (r(u2) & p(u2))");
  check_oracle_equiv(comp, rc);
  check_oracle_equiv(rc, P("exists u. (r(u) & p(u))"));

  // universal predicate quantifiers go through their existential duals
  CHECK(eliminate_all(P("forall2 p. forall x. (p(x) | ~p(x))")) ==
        mk_true());
  CHECK(eliminate_all(P("forall2 p. exists x. p(x)")) == mk_false());
  CHECK(eliminate_all(P("exists2 p. forall x. p(x)")) == mk_true());

  // first-order input is returned untouched
  Formula fo = P("(forall x. (q(x) | ~r(x))) & q(a)");
  CHECK(eliminate_all(fo) == fo);

  // class restriction: polyadic bodies are out of scope here
  CHECK(code_of([&] {
    eliminate_all(P("exists2 p. (p(a) & f(a,b))"));
  }) == ErrorCode::Class);

  SUBCASE("randomized second-order statements") {
    testgen::Gen g(313);
    testgen::FormulaOpts o;
    o.preds = {"p", "q"};
    o.consts = {"a"};
    o.max_count = 2;
    for (int i = 0; i < 25; ++i) {
      Formula body = testgen::rand_formula(g, o, 2);
      Formula f = g.coin()
                      ? wrap_exists("p", body)
                      : mk_forall_pred("p", 1, body);
      Formula r = eliminate_all(f);
      CAPTURE(print(f));
      CAPTURE(print(r));
      CHECK(class_leq(classify(r), FormulaClass::MON_EQ));
      OracleOptions oo;
      oo.max_domain = 3;
      auto c = check_equiv(f, r, oo);
      if (c) CAPTURE(describe(*c));
      CHECK_FALSE(c.has_value());
    }
  }
}

TEST_CASE("equality-free closed form") {
  Formula ferio =
      P("(forall x. (~q(x) | ~p(x))) & (exists x. (r(x) & q(x)))");
  Formula rn = eliminate_noeq("q", ferio);
  CHECK(print(rn) ==
        "(forall x. (true | ~p(x))) & (exists u1. (r(u1) & ~p(u1)))");
  check_oracle_equiv(wrap_exists("q", ferio), rn);

  // purely universal premises keep only the leading clause
  Formula univ = P("forall x. (~p(x) | q(x))");
  Formula ru = eliminate_noeq("p", univ);
  CHECK(print(ru) == "forall x. (true | q(x))");
  check_oracle_equiv(wrap_exists("p", univ), ru);

  // one positive and one negative witness force two distinct elements
  Formula two = P("(exists x. p(x)) & (exists x. ~p(x))");
  Formula rt = eliminate_noeq("p", two);
  CHECK(print(rt) ==
        "(forall x. (true | true)) & (exists u1. (exists v2. (u1 != v2 & "
        "true & true)))");
  check_oracle_equiv(wrap_exists("p", two), rt);

  // the predicate may be absent
  Formula fo = P("forall x. q(x)");
  CHECK(eliminate_noeq("p", fo) == fo);

  // equality and counting are outside the equality-free fragment
  CHECK(code_of([&] { eliminate_noeq("p", P("p(a) & a = b")); }) ==
        ErrorCode::Class);
  CHECK(code_of([&] {
    eliminate_noeq("p", P("atleast 2 x. p(x)"));
  }) == ErrorCode::Class);
  CHECK(code_of([&] { eliminate_noeq("p", P("p & q")); }) ==
        ErrorCode::Class);

  SUBCASE("closed form rejects counting groups") {
    Hauptform h;
    h.pred = "p";
    h.var = "x";
    h.c.push_back({2, B1("q(x)")});
    CHECK(code_of([&] { hauptform_elim_noeq(h); }) == ErrorCode::Shape);
  }

  SUBCASE("randomized agreement with the counting-form eliminator") {
    testgen::Gen g(4242);
    testgen::FormulaOpts o;
    o.preds = {"p", "q", "r"};
    o.consts = {"a"};
    o.allow_eq = false;
    o.allow_counting = false;
    for (int i = 0; i < 40; ++i) {
      Formula f = testgen::rand_formula(g, o, 3);
      Formula r = eliminate_noeq("p", f);
      CAPTURE(print(f));
      CAPTURE(print(r));
      CHECK_FALSE(occurs_pred(r, "p"));
      OracleOptions oo;
      oo.max_domain = 3;
      auto c = check_equiv(wrap_exists("p", f), r, oo);
      if (c) CAPTURE(describe(*c));
      CHECK_FALSE(c.has_value());
    }
  }
}

TEST_CASE("crude resultant is entailed but strictly weaker") {
  Hauptform h = match_hauptform(P(
      "exists2 q. ((forall x. (~q(x) | ~p(x))) & (exists x. (r(x) & "
      "q(x))))"));
  Formula cr = crude_resultant(h);
  CHECK(print(cr) ==
        "(forall x. (true | ~p(x))) & (exists x. (r(x) & ~p(x)))");
  OracleOptions oo;
  auto ce = check_entails(render_hauptform(h), cr, oo);
  if (ce) CAPTURE(describe(*ce));
  CHECK_FALSE(ce.has_value());

  // canonical separator: two witnesses of opposite sign need two elements,
  // which the crude form cannot express
  Formula sep = P("(exists x. (p(x) & q(x))) & (exists x. (~q(x) & p(x)))");
  Hauptform hs = match_hauptform(wrap_exists("q", sep));
  Formula exact = eliminate_predicate("q", sep);
  Formula crude = crude_resultant(hs);
  CHECK(print(exact) ==
        "exists u1. (exists v2. (p(u1) & p(v2) & u1 != v2))");
  auto fwd = check_entails(wrap_exists("q", sep), crude, oo);
  CHECK_FALSE(fwd.has_value());
  auto strict = check_entails(crude, exact, oo);
  REQUIRE(strict.has_value());  // a countermodel: crude holds, exact fails
  CHECK(describe(*strict).find("domain") != std::string::npos);

  CHECK(code_of([&] {
    Hauptform bad;
    bad.pred = "p";
    bad.var = "x";
    bad.c.push_back({2, B1("q(x)")});
    crude_resultant(bad);
  }) == ErrorCode::Shape);
}

TEST_CASE("simultaneous elimination over a full sign table") {
  Formula f = P(
      "(forall x. (a(x) | p1(x) | p2(x))) & (forall x. (b(x) | p1(x) | "
      "~p2(x))) & (forall x. (c(x) | ~p1(x) | p2(x))) & (forall x. (d(x) | "
      "~p1(x) | ~p2(x)))");
  Formula r = simultaneous_elim({"p1", "p2"}, f);
  CHECK(print(r) == "forall x. (a(x) | b(x) | c(x) | d(x))");
  check_oracle_equiv(
      mk_exists_pred("p1", 1, mk_exists_pred("p2", 1, f)), r);

  SUBCASE("single predicate, clause variables aligned") {
    Formula g = P("(forall x. (a(x) | p(x))) & (forall y. (b(y) | ~p(y)))");
    Formula rg = simultaneous_elim({"p"}, g);
    CHECK(print(rg) == "forall x. (a(x) | b(x))");
    check_oracle_equiv(wrap_exists("p", g), rg);
  }

  SUBCASE("shape violations are rejected") {
    CHECK(code_of([&] { simultaneous_elim({}, f); }) == ErrorCode::Shape);
    CHECK(code_of([&] { simultaneous_elim({"p1", "p1"}, f); }) ==
          ErrorCode::Shape);
    // wrong clause count for two predicates
    CHECK(code_of([&] {
      simultaneous_elim({"p1", "p2"},
                        P("forall x. (a(x) | p1(x) | p2(x))"));
    }) == ErrorCode::Shape);
    // a clause missing one predicate
    CHECK(code_of([&] {
      simultaneous_elim(
          {"p1"},
          P("(forall x. (a(x) | p1(x))) & (forall x. b(x))"));
    }) == ErrorCode::Shape);
    // duplicated sign pattern
    CHECK(code_of([&] {
      simultaneous_elim(
          {"p1"},
          P("(forall x. (a(x) | p1(x))) & (forall x. (b(x) | p1(x)))"));
    }) == ErrorCode::Shape);
    // eliminand hiding inside a remainder
    CHECK(code_of([&] {
      simultaneous_elim(
          {"p1"},
          P("(forall x. ((exists y. p1(y)) | p1(x))) & (forall x. (b(x) | "
            "~p1(x)))"));
    }) == ErrorCode::EliminandOccurs);
  }

  SUBCASE("randomized full tables") {
    testgen::Gen g(77);
    testgen::FormulaOpts o;
    o.preds = {"q", "r"};
    o.consts = {"a"};
    o.allow_eq = false;
    o.allow_counting = false;
    for (int i = 0; i < 12; ++i) {
      Formulas clauses;
      for (int s = 0; s < 4; ++s) {
        std::vector<std::string> scope{"x"};
        Formula frame = testgen::rand_formula(g, o, 1, scope);
        Formulas lits{frame};
        lits.push_back((s & 1) ? B1("p1(x)") : B1("~p1(x)"));
        lits.push_back((s & 2) ? B1("p2(x)") : B1("~p2(x)"));
        clauses.push_back(mk_forall("x", mk_or(std::move(lits))));
      }
      Formula table = mk_and(std::move(clauses));
      Formula res = simultaneous_elim({"p1", "p2"}, table);
      CAPTURE(print(table));
      CAPTURE(print(res));
      OracleOptions oo;
      auto c = check_equiv(
          mk_exists_pred("p1", 1, mk_exists_pred("p2", 1, table)), res, oo);
      if (c) CAPTURE(describe(*c));
      CHECK_FALSE(c.has_value());
    }
  }
}

TEST_CASE("definition introduction and expansion") {
  Formula f = P("(q(a) & r(c)) | s(b)");
  Formula g = mk_and({mk_atom("q", Term::var("x")), P("r(c)")});
  Formula d = intro_definition(f, "x", g, {Path{0}}, "dd");
  CHECK(print(d) ==
        "exists2 dd. ((forall x. ((~dd(x) | q(x) & r(c)) & (dd(x) | ~(q(x) "
        "& r(c))))) & (dd(a) | s(b)))");
  check_oracle_equiv(f, d);
  CHECK(expand_definition(d, "dd") == f);

  SUBCASE("expansion accepts the parsed biconditional layout") {
    Formula pb = P(
        "exists2 d. ((forall x. (d(x) <-> (q(x) & r(x)))) & (d(a) | "
        "d(b)))");
    Formula pe = expand_definition(pb, "d");
    CHECK(print(pe) == "q(a) & r(a) | q(b) & r(b)");
    check_oracle_equiv(pb, pe);
    // a definition with no further conjuncts is simply true
    CHECK(expand_definition(P("exists2 d. (forall x. (d(x) <-> q(x)))"),
                            "d") == mk_true());
  }

  SUBCASE("multiple occurrences abstract consistently") {
    Formula m = P("(q(a) & r(c)) | ~(q(b) & r(c))");
    Formula dm = intro_definition(m, "x", g, {Path{0}, Path{1, 0}}, "dd");
    check_oracle_equiv(m, dm);
    CHECK(expand_definition(dm, "dd") == m);
  }

  SUBCASE("argument errors") {
    // the new name must be fresh
    CHECK(code_of([&] {
      intro_definition(f, "x", g, {Path{0}}, "q");
    }) == ErrorCode::NotFresh);
    // the abstraction variable must occur in the definiens
    CHECK(code_of([&] {
      intro_definition(f, "y", g, {Path{0}}, "dd");
    }) == ErrorCode::BadArgs);
    // overlapping positions
    CHECK(code_of([&] {
      intro_definition(f, "x", g, {Path{0}, Path{0, 0}}, "dd");
    }) == ErrorCode::BadArgs);
    // position not matching the definiens
    CHECK(code_of([&] {
      intro_definition(f, "x", g, {Path{1}}, "dd");
    }) == ErrorCode::NoMatch);
    // a free variable of the definiens bound at the occurrence
    Formula fc = P("exists y. ((q(a) & r(y)) | s(y))");
    Formula gc =
        mk_and({mk_atom("q", Term::var("x")), mk_atom("r", Term::var("y"))});
    CHECK(code_of([&] {
      intro_definition(fc, "x", gc, {Path{0, 0}}, "dd");
    }) == ErrorCode::Capture);
    // expansion needs the quantifier and the definition clause
    CHECK(code_of([&] { expand_definition(P("q(a)"), "d"); }) ==
          ErrorCode::Shape);
    CHECK(code_of([&] {
      expand_definition(P("exists2 d. (d(a) & q(a))"), "d");
    }) == ErrorCode::Shape);
  }
}

TEST_CASE("one-sided definitions eliminate by direct replacement") {
  Formula g = mk_atom("q", Term::var("x"));

  Formula fpos = P("p(a) & (s(b) | p(b))");
  Formula rp = ackermann_lemma_elim("p", DefDirection::Imp, "x", g, fpos);
  CHECK(print(rp) == "q(a) & (s(b) | q(b))");
  check_oracle_equiv(
      mk_exists_pred("p", 1,
                     mk_and({P("forall x. (~p(x) | q(x))"), fpos})),
      rp);

  Formula fneg = P("~p(a) & (s(b) | ~p(b))");
  Formula rn = ackermann_lemma_elim("p", DefDirection::RevImp, "x", g, fneg);
  CHECK(print(rn) == "~q(a) & (s(b) | ~q(b))");
  check_oracle_equiv(
      mk_exists_pred("p", 1,
                     mk_and({P("forall x. (p(x) | ~q(x))"), fneg})),
      rn);

  // a composite definiens lands substituted at every occurrence
  Formula gc = mk_or({mk_atom("q", Term::var("x")), P("s(c)")});
  Formula rc =
      ackermann_lemma_elim("p", DefDirection::Imp, "x", gc, P("p(a)"));
  CHECK(print(rc) == "q(a) | s(c)");

  SUBCASE("polarity and capture are enforced") {
    CHECK(code_of([&] {
      ackermann_lemma_elim("p", DefDirection::Imp, "x", g, P("~p(a)"));
    }) == ErrorCode::Polarity);
    CHECK(code_of([&] {
      ackermann_lemma_elim("p", DefDirection::RevImp, "x", g, P("p(a)"));
    }) == ErrorCode::Polarity);
    CHECK(code_of([&] {
      ackermann_lemma_elim("p", DefDirection::Imp, "x", B1("p(x)"),
                           P("p(a)"));
    }) == ErrorCode::EliminandInDefiniens);
    Formula gy =
        mk_and({mk_atom("q", Term::var("x")), mk_atom("r", Term::var("y"))});
    CHECK(code_of([&] {
      ackermann_lemma_elim("p", DefDirection::Imp, "x", gy,
                           P("exists y. p(y)"));
    }) == ErrorCode::Capture);
    // double negation restores the polarity
    Formula dn = ackermann_lemma_elim("p", DefDirection::Imp, "x", g,
                                      P("~(~p(a))"));
    CHECK(print(dn) == "~(~q(a))");
  }
}

TEST_CASE("first-argument switching trades quantifier order") {
  Formula m = B1(
      "(exists y. (a(x,y) & f(x,y))) & (exists z. (b(x,z) & ~f(x,z)))");
  Formula sw = quantifier_switch("f", "x", m);
  CHECK(print(sw) ==
        "forall x. (exists2 q1. ((exists y. (a(x, y) & q1(y))) & (exists z. "
        "(b(x, z) & ~q1(z)))))");
  check_oracle_equiv(mk_exists_pred("f", 2, mk_forall("x", m)), sw, 2);

  // an absent predicate leaves a plain universal closure
  CHECK(print(quantifier_switch("f", "x", B1("q(x)"))) == "forall x. q(x)");

  // unary predicates switch to propositional instances
  Formula m1 = B1("p(x) | q(x)");
  Formula s1 = quantifier_switch("p", "x", m1);
  CHECK(print(s1) == "forall x. (exists2 q1. (q1 | q(x)))");
  check_oracle_equiv(mk_exists_pred("p", 1, mk_forall("x", m1)), s1);

  SUBCASE("shape violations") {
    CHECK(code_of([&] {
      quantifier_switch("f", "x", B1("f(a,x)"));
    }) == ErrorCode::Shape);
    CHECK(code_of([&] {
      quantifier_switch("f", "x", P("exists x. f(x,a)"));
    }) == ErrorCode::Shape);
    CHECK(code_of([&] {
      quantifier_switch("f", "x", B1("f(x,a) & (exists2 f. f(x,b))"));
    }) == ErrorCode::Shape);
    CHECK(code_of([&] { quantifier_switch("f", "x", P("f & q(a)")); }) ==
          ErrorCode::Shape);
  }
}

TEST_CASE("polyadic atoms reduce to unary shorthands when one slot varies") {
  // one bound argument per occurrence, matching patterns across clauses
  Formula s1 = P(
      "(forall z. (f(x,z) | p(z,y) | h(z,y))) & (forall z. (g(x,z) | "
      "~p(z,y) | h(z,y)))");
  auto r1 = polyadic_monadize(s1, "p");
  REQUIRE(r1.has_value());
  CHECK(print(r1->body) ==
        "(forall z. (f2(z) | p1(z) | h3(z))) & (forall z. (g4(z) | ~p1(z) | "
        "h3(z)))");
  CHECK(r1->eliminands == std::vector<std::string>{"p1"});
  REQUIRE(r1->decode.size() == 3);
  CHECK(r1->decode[0].shorthand == "f2");
  CHECK(r1->decode[0].pred == "f");
  CHECK(r1->decode[0].hole == 1);
  CHECK(r1->decode[0].args[0] == Term::konst("x"));
  CHECK(r1->decode[1].shorthand == "h3");
  CHECK(r1->decode[1].hole == 0);
  CHECK(r1->decode[2].shorthand == "g4");
  // decoding restores every shorthand except the eliminand's, which is
  // destined for elimination rather than re-expansion
  CHECK(print(monadize_decode(r1->body, r1->decode)) ==
        "(forall z. (f(x, z) | p1(z) | h(z, y))) & (forall z. (g(x, z) | "
        "~p1(z) | h(z, y)))");

  // two eliminand patterns with different varying slots get linked
  Formula s4 = P(
      "(forall z. (f(x,z) | p(z,y))) & (forall z. (~p(x,z) | g(z,y)))");
  auto r4 = polyadic_monadize(s4, "p");
  REQUIRE(r4.has_value());
  CHECK(print(r4->body) ==
        "(forall z. (f3(z) | p1(z))) & (forall z. (~p2(z) | g4(z))) & "
        "(p1(x) & p2(y) | ~p1(x) & ~p2(y))");
  CHECK(r4->eliminands == std::vector<std::string>{"p1", "p2"});

  SUBCASE("unencodable shapes are reported") {
    // a relation between two locally bound variables
    Formula bad = mk_not(P(
        "p(x,y) | (exists v. ((forall u. (~p(x,u) | f(u,v))) & g(v,y)))"));
    CHECK_FALSE(polyadic_monadize(bad, "p").has_value());
    // two eliminand patterns varying in the same slot
    CHECK_FALSE(
        polyadic_monadize(P("forall z. (p(z,a) | p(z,b))"), "p").has_value());
    // three patterns
    CHECK_FALSE(polyadic_monadize(
                    P("(forall z. p(z,a)) & (forall z. p(a,z)) & (forall z. "
                      "(p(b,z) | q(z)))"),
                    "p")
                    .has_value());
  }

  SUBCASE("fully fixed polyadic atoms become propositional shorthands") {
    Formula fx = P("f(a,b) & (exists z. (q(z) | f(a,b)))");
    auto rf = polyadic_monadize(fx, "p");
    REQUIRE(rf.has_value());
    CHECK(print(rf->body) == "f1 & (exists z. (q(z) | f1))");
    CHECK(rf->eliminands.empty());
    REQUIRE(rf->decode.size() == 1);
    CHECK(rf->decode[0].hole == -1);
    CHECK(monadize_decode(rf->body, rf->decode) == fx);
  }

  SUBCASE("second-order bodies are rejected") {
    CHECK(code_of([&] {
      polyadic_monadize(P("exists2 q. (q(a) & p(a,b))"), "p");
    }) == ErrorCode::Class);
  }
}

TEST_CASE("general elimination covers encodable polyadic inputs") {
  Formula s1 = P(
      "exists2 p. ((forall z. (f(x,z) | p(z,y) | h(z,y))) & (forall z. "
      "(g(x,z) | ~p(z,y) | h(z,y))))");
  Formula r1 = eliminate_general(s1);
  CHECK(print(r1) == "forall z1. (f(x, z1) | h(z1, y) | g(x, z1))");
  check_oracle_equiv(s1, r1, 2);
  check_oracle_equiv(r1, P("forall z. (f(x,z) | g(x,z) | h(z,y))"), 2);

  Formula s2 = P(
      "forall2 p. ((exists u. (p(x,u) & f(u,y))) | (forall v. (~p(x,v) | "
      "g(v,y))))");
  Formula r2 = eliminate_general(s2);
  CHECK(print(r2) == "~(exists u2. (~g(u2, y) & ~f(u2, y)))");
  check_oracle_equiv(s2, r2, 2);
  check_oracle_equiv(r2, P("forall v. (g(v,y) | f(v,y))"), 2);

  Formula s4 = P(
      "exists2 p. ((forall z. (f(x,z) | p(z,y))) & (forall z. (~p(x,z) | "
      "g(z,y))))");
  Formula r4 = eliminate_general(s4);
  CHECK(print(r4) == "g(y, y) | f(x, x)");
  check_oracle_equiv(s4, r4, 2);

  // the known inexpressible case is reported, not mangled
  CHECK(code_of([&] {
    eliminate_general(
        P("forall2 p. (p(x,y) | (exists v. ((forall u. (~p(x,u) | f(u,v))) "
          "& g(v,y))))"));
  }) == ErrorCode::Eligibility);

  // monadic second-order inputs take the ordinary route
  Formula mono = P("exists2 q. (q(a) & ~q(b))");
  CHECK(print(eliminate_general(mono)) == "a != b");

  // first-order input is untouched
  Formula fo = B1("f(x,x) | q(x)");
  CHECK(eliminate_general(fo) == fo);
}

TEST_CASE("choice-style statements eliminate after switching") {
  Formula ex26 = P(
      "exists2 f. ((forall x. exists y. (a(x,y) & f(x,y))) & (forall x. "
      "exists z. (b(x,z) & ~f(x,z))))");
  // both argument slots vary with bound variables: not directly encodable
  CHECK(code_of([&] { eliminate_general(ex26); }) == ErrorCode::Eligibility);

  // merging the universal scopes enables the switch
  Formula merged =
      apply_rule(ex26, RuleId::AllOutAnd, Path{0}, Direction::L2R);
  CHECK(print(merged) ==
        "exists2 f. (forall x. ((exists y. (a(x, y) & f(x, y))) & (exists "
        "z. (b(x, z) & ~f(x, z)))))");
  Formula matrix = subformula_at(merged, Path{0, 0});
  Formula switched = quantifier_switch("f", "x", matrix);
  CHECK(print(switched) ==
        "forall x. (exists2 q1. ((exists y. (a(x, y) & q1(y))) & (exists z. "
        "(b(x, z) & ~q1(z)))))");
  check_oracle_equiv(ex26, switched, 2);

  Formula done = eliminate_general(switched);
  CHECK(print(done) ==
        "forall x. (exists u2. (exists v3. (a(x, u2) & b(x, v3) & u2 != "
        "v3)))");
  check_oracle_equiv(switched, done, 2);
  check_oracle_equiv(
      done, P("forall x. exists y. exists z. (a(x,y) & b(x,z) & ~(y = z))"),
      3);
}

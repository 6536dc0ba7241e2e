#include "support.hpp"

using namespace ustar;
using test::ex;

namespace {

const char* kChart = R"({"theory":"sl","states":["x","x'"],"root":"x","beta":{
  "x":[["a","x'"],["b","✓"]],"x'":[["c","x'"],["d","✓"]]}})";

StarTerm star_term(const Theory& th, const std::string& text) { return parse_star_term(text, th); }

}  // namespace

TEST_SUITE("solve") {
  TEST_CASE("factorize examples") {
    System chart = test::load(kChart);
    Labelling lab{{{1, "c", 1}}};
    Theory sl = Theory::sl();

    Split<Move> at_loop = factorize(chart, lab, 1);
    CHECK(at_loop.s == star_term(sl, "u + v"));
    CHECK(at_loop.left == Term<Move>::variable(test::to("c", 1)));
    CHECK(at_loop.right == Term<Move>::variable(test::tick("d")));

    Split<Move> at_root = factorize(chart, lab, 0);
    CHECK(at_root.s == star_term(sl, "u + v"));
    CHECK(at_root.left == Term<Move>::apply(Symbol::zero()));
    std::map<Move, MVal<Move>> units;
    for (const Move& m : supp(chart.beta[0])) units[m] = eta(sl, m);
    CHECK(eval_term(sl, at_root.right, units) == chart.beta[0]);

    System ca = test::load(R"({"theory":"ca","states":["x"],"root":"x","beta":{
      "x":[{"p":"1/2","a":"a","t":"x"},{"p":"1/2","a":"b","t":"✓"}]}})");
    Split<Move> c = factorize(ca, Labelling{{{0, "a", 0}}}, 0);
    CHECK(c.s == star_term(Theory::ca(), "(u (+1/2) v) (+1) 0"));
    CHECK(c.left == Term<Move>::variable(test::to("a", 0)));
    CHECK(c.right == Term<Move>::variable(test::tick("b")));
  }

  TEST_CASE("tau examples") {
    Theory sl = Theory::sl();
    System two = reachable(sl, ex(sl, "(a;b) *{u+v} c"));
    Labelling lab = syntactic_labelling(two);
    Solver solver(two, lab);
    CHECK(decide_equiv(sl, solver.tau(1, 0), ex(sl, "b")));
    CHECK(decide_equiv(sl, solver.phi(1), Expr::seq(solver.tau(1, 0), solver.phi(0))));
    CHECK_THROWS_AS(solver.tau(0, 1), Error);

    // A direct body edge back to the loop head.
    System direct = test::load(R"({"theory":"sl","states":["x","y"],"root":"x","beta":{
      "x":[["a","y"],["e","✓"]],"y":[["d","x"]]}})");
    Labelling dl{{{0, "a", 1}}};
    REQUIRE(check_well_layered(direct, dl).ok());
    Solver ds(direct, dl);
    CHECK(decide_equiv(sl, ds.tau(1, 0), ex(sl, "d")));
  }

  TEST_CASE("canonical solution of the example chart") {
    Theory sl = Theory::sl();
    System chart = test::load(kChart);
    Labelling lab{{{1, "c", 1}}};
    SolutionMap phi = canonical_solution(chart, lab);
    CHECK(phi[1] == ex(sl, "c *{u + v} d"));
    CHECK(phi[0] == ex(sl, "0 *{u + v} (a ; c *{u + v} d + b)"));
    CHECK(decide_equiv(sl, phi[0], ex(sl, "b + a;(c *{u+v} d)")));
    CHECK(check_solution(chart, phi));

    SolutionMap wrong = phi;
    wrong[0] = ex(sl, "a");
    CHECK_FALSE(check_solution(chart, wrong));

    CHECK_THROWS_AS(canonical_solution(chart, Labelling{}), Error);
  }

  TEST_CASE("single-state loops") {
    Theory sl = Theory::sl();
    System s = test::load(R"({"theory":"sl","states":["x"],"root":"x","beta":{"x":[["a","x"],["b","✓"]]}})");
    SolutionMap phi = canonical_solution(s, Labelling{{{0, "a", 0}}});
    CHECK(phi[0] == ex(sl, "a *{u + v} b"));
    CHECK(bisimilar(reachable(sl, phi[0]), 0, reachable(sl, ex(sl, "a *{u+v} b")), 0));

    Theory ca = Theory::ca();
    System c = test::load(R"({"theory":"ca","states":["x"],"root":"x","beta":{
      "x":[{"p":"1/2","a":"a","t":"x"},{"p":"1/2","a":"b","t":"✓"}]}})");
    SolutionMap cphi = canonical_solution(c, Labelling{{{0, "a", 0}}});
    CHECK(cphi[0] == ex(ca, "a *{(u (+1/2) v) (+1) 0} b"));
    CHECK(decide_equiv(ca, cphi[0], ex(ca, "a *{u (+1/2) v} b")));
  }

  TEST_CASE("the inclusion map is a solution") {
    for (const Theory& th : standard_theories()) {
      for (const Expr& e : corpus(th)) {
        System sys = reachable(th, e);
        CHECK_MESSAGE(check_solution(sys, sys.exprs), print(e));
      }
    }
  }

  TEST_CASE("roundtrip examples") {
    Theory sl = Theory::sl();
    CHECK(decide_equiv(sl, roundtrip(sl, ex(sl, "a")).result, ex(sl, "a")));
    Roundtrip r = roundtrip(sl, ex(sl, "(a+a) *{u+v} b"));
    CHECK(decide_equiv(sl, r.result, ex(sl, "a *{u+v} b")));
    CHECK(r.quotient.system.size() == 1);
    CHECK(check_well_layered(r.quotient.system, r.labelling).ok());

    Theory gc = Theory::gc({"p"});
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
      Expr e = random_expr(rng, gc);
      CHECK_MESSAGE(decide_equiv(gc, roundtrip(gc, e).result, e), print(e));
    }
  }

  TEST_CASE("roundtrip on the corpus") {
    for (const Theory& th : standard_theories()) {
      CAPTURE(th.selector());
      for (const Expr& e : corpus(th)) {
        auto r = check_roundtrip(th, e);
        CHECK_MESSAGE(r.ok, print(e), ": ", r.detail);
      }
    }
  }

  TEST_CASE("solutionhood and the intermediate lemma on the corpus") {
    for (const Theory& th : standard_theories()) {
      CAPTURE(th.selector());
      for (const Expr& e : corpus(th)) {
        System sys = reachable(th, e);
        Labelling lab = syntactic_labelling(sys);
        auto s = check_solutionhood(sys, lab);
        CHECK_MESSAGE(s.ok, print(e), ": ", s.detail);
        auto l = check_intermediate_lemma(sys, lab);
        CHECK_MESSAGE(l.ok, print(e), ": ", l.detail);
      }
    }
  }

  TEST_CASE("uniqueness and pullback on random systems") {
    for (const Theory& th : standard_theories()) {
      CAPTURE(th.selector());
      Rng rng(41);
      for (int i = 0; i < 30; ++i) {
        System sys = random_system(rng, th, 5);
        auto u = check_uniqueness(sys);
        CHECK_MESSAGE(u.ok, u.detail);
        auto p = check_pullback(sys);
        CHECK_MESSAGE(p.ok, p.detail);
      }
    }
  }

  TEST_CASE("shrinking finds a smaller failing expression") {
    Theory sl = Theory::sl();
    Expr big = ex(sl, "(a + b ; c) *{u + v} (c ; d)");
    auto mentions_d = [](const Expr& e) { return print(e).find('d') != std::string::npos; };
    Expr small = shrink_expr(big, mentions_d);
    CHECK(small == Expr::act("d"));
  }
}

#include "support.hpp"

using namespace ustar;
using test::ex;

namespace {

std::string show_step(const Theory& th, const std::string& text) {
  return format_value(th, step(th, ex(th, text)), format_expr_move);
}

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("step examples") {
    Theory sl = Theory::sl();
    CHECK(show_step(sl, "a + b") == "{(a, ✓), (b, ✓)}");
    CHECK(show_step(sl, "(a + b) ; c") == "{(a, c), (b, c)}");
    CHECK(show_step(sl, "(a + b) *{u + v} c") ==
          "{(a, (a + b) *{u + v} c), (b, (a + b) *{u + v} c), (c, ✓)}");
    CHECK(show_step(sl, "0") == "{}");
    CHECK(show_step(sl, "a *{v} b") == "{(b, ✓)}");
    CHECK(show_step(Theory::ca(), "a (+1/3) b ; a") == "{(a, ✓): 1/3, (b, a): 2/3}");
    CHECK(show_step(Theory::ga({"p"}), "a +[p] 0") == "{0: ⊥, 1: (a, ✓)}");
    CHECK(show_step(Theory::smod(SemiringKind::Naturals), "2 . a (+) a") == "{(a, ✓): 3}");
  }

  TEST_CASE("actions step to their unit") {
    for (const Theory& th : standard_theories()) CHECK(step(th, Expr::act("q")) == eta(th, ExprMove{"q", std::nullopt}));
  }

  TEST_CASE("reachable examples") {
    Theory sl = Theory::sl();
    System one = reachable(sl, ex(sl, "a"));
    CHECK(one.size() == 1);
    CHECK(test::show(one, one.beta[0]) == "{(a, ✓)}");

    System star = reachable(sl, ex(sl, "a *{u+v} b"));
    CHECK(star.size() == 1);
    CHECK(test::show(star, star.beta[0]) == "{(a, s0), (b, ✓)}");

    System two = reachable(sl, ex(sl, "(a;b) *{u+v} c"));
    REQUIRE(two.size() == 2);
    CHECK(two.exprs[1] == ex(sl, "b ; ((a ; b) *{u + v} c)"));
  }

  TEST_CASE("reachable is a subsystem bounded by U(e)") {
    for (const Theory& th : standard_theories()) {
      CAPTURE(th.selector());
      for (const Expr& e : corpus(th)) {
        auto r = check_subsystem(th, e);
        CHECK_MESSAGE(r.ok, print(e), ": ", r.detail);
      }
      Rng rng(8);
      for (int i = 0; i < 200; ++i) {
        Expr e = random_expr(rng, th);
        auto r = check_subsystem(th, e);
        CHECK_MESSAGE(r.ok, print(e), ": ", r.detail);
      }
    }
  }

  TEST_CASE("relabelling semantics agrees with term substitution") {
    for (const Theory& th : standard_theories()) {
      Rng rng(9);
      for (int i = 0; i < 200; ++i) {
        Expr e = random_expr(rng, th);
        auto r = check_substitution_semantics(th, e);
        CHECK_MESSAGE(r.ok, th.selector(), " ", print(e));
      }
    }
  }

  TEST_CASE("system documents round trip") {
    Theory sl = Theory::sl();
    Json doc = export_system(reachable(sl, ex(sl, "a")));
    CHECK(doc == Json::parse(R"({"theory":"sl","states":["s0"],"root":"s0","beta":{"s0":[["a","✓"]]}})"));

    for (const Theory& th : standard_theories()) {
      Rng rng(10);
      for (int i = 0; i < 50; ++i) {
        System sys = random_system(rng, th, 5);
        System back = load_system(Json::parse(export_system(sys).dump()));
        CHECK(back.names == sys.names);
        CHECK(back.root == sys.root);
        CHECK(back.beta == sys.beta);
        CHECK(back.theory == sys.theory);
      }
    }
  }

  TEST_CASE("guarded and probabilistic documents") {
    System g = test::load(R"({"theory":"gc:tests=p","states":["x"],"root":"x",
      "beta":{"x":{"0":[{"p":"1/2","a":"a","t":"x"}],"1":[{"p":"1","a":"b","t":"✓"}]}}})");
    CHECK(test::show(g, g.beta[0]) == "{0: {(a, x): 1/2}, 1: {(b, ✓): 1}}");
    System w = test::load(R"({"theory":"smod:rat","states":["x"],"root":"x",
      "beta":{"x":[{"w":"1/2","a":"a","t":"x"},{"w":"1","a":"a","t":"x"}]}})");
    CHECK(test::show(w, w.beta[0]) == "{(a, x): 3/2}");
  }

  TEST_CASE("malformed documents are rejected") {
    const char* bad[] = {
        R"({"theory":"sl","states":["s0"],"root":"s0","beta":{"s0":[["a","zz"]]}})",
        R"({"theory":"sl","states":["s0"],"root":"s1","beta":{"s0":[]}})",
        R"({"theory":"sl","states":["s0"],"root":"s0","beta":{}})",
        R"({"theory":"sl","states":["s0","s0"],"root":"s0","beta":{"s0":[]}})",
        R"({"theory":"sl","states":["s0"],"root":"s0","beta":{"s0":[], "s9":[]}})",
        R"({"theory":"sl","states":["s0"],"root":"s0","beta":{"s0":[["A","✓"]]}})",
        R"({"theory":"ca","states":["s0"],"root":"s0","beta":{"s0":[{"p":"3/4","a":"a","t":"✓"},{"p":"1/2","a":"b","t":"✓"}]}})",
        R"({"theory":"ca","states":["s0"],"root":"s0","beta":{"s0":[{"p":"0","a":"a","t":"✓"}]}})",
        R"({"theory":"smod:nat","states":["s0"],"root":"s0","beta":{"s0":[{"w":"0","a":"a","t":"✓"}]}})",
        R"({"theory":"smod:nat","states":["s0"],"root":"s0","beta":{"s0":[{"w":"1/2","a":"a","t":"✓"}]}})",
        R"({"theory":"ga:tests=p","states":["s0"],"root":"s0","beta":{"s0":{"0":null}}})",
        R"({"theory":"ga:tests=p","states":["s0"],"root":"s0","beta":{"s0":{"0":null,"1":null,"2":null}}})",
        R"({"states":["s0"],"root":"s0","beta":{"s0":[]}})",
        R"([1,2])",
    };
    for (const char* doc : bad) {
      CAPTURE(doc);
      CHECK_THROWS_AS(test::load(doc), Error);
    }
    CHECK_THROWS_AS(test::load(bad[0]), SchemaError);
  }

  TEST_CASE("dot export") {
    Theory ca = Theory::ca();
    std::string dot = export_dot(reachable(ca, ex(ca, "a *{u (+1/2) v} b")));
    CHECK(dot.find("\"s0\" -> \"s0\" [label=\"a 1/2\"]") != std::string::npos);
    CHECK(dot.find("\"s0\" -> \"✓\" [label=\"b 1/2\"]") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
  }

  TEST_CASE("unfolding one step") {
    Theory sl = Theory::sl();
    Expr e = ex(sl, "(a ; b) *{u + v} c");
    CHECK(print(unfold_expr(sl, step(sl, e))) == "a ; b ; (a ; b) *{u + v} c + c");
  }
}

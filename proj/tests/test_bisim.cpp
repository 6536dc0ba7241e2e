#include "support.hpp"

using namespace ustar;
using test::ex;

namespace {

bool equiv(const Theory& th, const std::string& a, const std::string& b) { return decide_equiv(th, ex(th, a), ex(th, b)); }

}  // namespace

TEST_SUITE("bisim") {
  TEST_CASE("refine examples") {
    System loops = test::load(R"({"theory":"sl","states":["x","y"],"root":"x","beta":{"x":[["a","x"]],"y":[["a","y"]]}})");
    CHECK(refine(loops) == Partition{0, 0});
    CHECK(brute_bisim(loops) == Partition{0, 0});
    System diff = test::load(R"({"theory":"sl","states":["x","y"],"root":"x","beta":{"x":[["a","✓"]],"y":[["b","✓"]]}})");
    CHECK(refine(diff) == Partition{0, 1});
    System single = test::load(R"({"theory":"sl","states":["x"],"root":"x","beta":{"x":[]}})");
    CHECK(brute_bisim(single) == Partition{0});
  }

  TEST_CASE("refine matches the brute-force oracle on random systems") {
    for (const Theory& th : standard_theories()) {
      CAPTURE(th.selector());
      Rng rng(13);
      for (int i = 0; i < 60; ++i) {
        auto r = check_oracle(random_system(rng, th, 6));
        CHECK_MESSAGE(r.ok, r.detail);
      }
    }
  }

  TEST_CASE("probabilistic masses distinguish states") {
    System s = test::load(R"({"theory":"ca","states":["x","y","z"],"root":"x","beta":{
      "x":[{"p":"1/2","a":"a","t":"y"},{"p":"1/2","a":"a","t":"z"}],
      "y":[{"p":"1","a":"b","t":"✓"}],
      "z":[{"p":"1/2","a":"b","t":"✓"}]}})");
    CHECK(refine(s) == Partition{0, 1, 2});
    System t = test::load(R"({"theory":"ca","states":["x","y","z"],"root":"x","beta":{
      "x":[{"p":"1/2","a":"a","t":"y"},{"p":"1/2","a":"a","t":"z"}],
      "y":[{"p":"1","a":"b","t":"✓"}],
      "z":[{"p":"1","a":"b","t":"✓"}]}})");
    CHECK(refine(t) == Partition{0, 1, 1});
  }

  TEST_CASE("brute force refuses large systems") {
    Rng rng(1);
    System big = random_system(rng, Theory::sl(), 1);
    big.names.clear();
    big.beta.clear();
    for (int i = 0; i < 9; ++i) {
      big.names.push_back("x" + std::to_string(i));
      big.beta.push_back(zero_value<Move>(big.theory));
    }
    CHECK_THROWS_AS(brute_bisim(big), BoundError);
  }

  TEST_CASE("bisimilar examples") {
    Theory sl = Theory::sl();
    CHECK(bisimilar(reachable(sl, ex(sl, "a + a")), 0, reachable(sl, ex(sl, "a")), 0));
    CHECK_FALSE(bisimilar(reachable(sl, ex(sl, "a")), 0, reachable(sl, ex(sl, "b")), 0));
    // The chart of (a+b)*c read off the classical star rules.
    System chart = test::load(R"({"theory":"sl","states":["r"],"root":"r","beta":{"r":[["a","r"],["b","r"],["c","✓"]]}})");
    CHECK(bisimilar(reachable(sl, ex(sl, "(a+b) *{u+v} c")), 0, chart, 0));
    CHECK_THROWS_AS(bisimilar(reachable(sl, ex(sl, "a")), 0, reachable(Theory::ca(), ex(Theory::ca(), "a")), 0),
                    TheoryMismatch);
  }

  TEST_CASE("decide_equiv examples") {
    Theory sl = Theory::sl();
    CHECK(equiv(sl, "(a+b);c", "a;c + b;c"));
    CHECK(equiv(sl, "a *{u+v} b", "a;(a *{u+v} b) + b"));
    CHECK_FALSE(equiv(sl, "a", "a;a"));
    // a^(u) b behaves as a loop with no exit.
    CHECK(equiv(sl, "a *{u} b", "a *{u + v} 0"));
    CHECK(equiv(sl, "a *{v} b", "b"));
    CHECK(equiv(Theory::ca(), "a *{(u (+1/2) v) (+1) 0} b", "a *{u (+1/2) v} b"));
    CHECK_FALSE(equiv(Theory::ca(), "a (+1/2) b", "a (+1/3) b"));
    CHECK(equiv(Theory::ca(), "a (+1/2) a", "a"));
    CHECK_FALSE(equiv(Theory::smod(SemiringKind::Naturals), "a (+) a", "a"));
    CHECK(equiv(Theory::smod(SemiringKind::Booleans), "a (+) a", "a"));
    CHECK(equiv(Theory::smod(SemiringKind::Naturals), "a (+) a", "2 . a"));
    CHECK(equiv(Theory::ga({"p"}), "a +[p] b", "b +[!p] a"));
    CHECK_FALSE(equiv(Theory::ga({"p"}), "a +[p] b", "b +[p] a"));
  }

  TEST_CASE("decide_equiv is an equivalence on the corpus") {
    for (const Theory& th : {Theory::sl(), Theory::ca(), Theory::ga({"p"})}) {
      std::vector<Expr> c = corpus(th);
      std::size_t n = std::min<std::size_t>(c.size(), 14);
      std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) eq[i][j] = decide_equiv(th, c[i], c[j]);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(eq[i][i]);
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(eq[i][j] == eq[j][i]);
          for (std::size_t k = 0; k < n; ++k)
            if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
        }
      }
    }
  }

  TEST_CASE("minimize examples") {
    System dup = test::load(R"({"theory":"sl","states":["x","y"],"root":"x","beta":{"x":[["a","✓"]],"y":[["a","✓"]]}})");
    Quotient q = minimize(dup);
    CHECK(q.system.size() == 1);
    CHECK(q.h == std::vector<StateId>{0, 0});

    Theory sl = Theory::sl();
    System minimal = reachable(sl, ex(sl, "(a;b) *{u+v} c"));
    Quotient same = minimize(minimal);
    CHECK(same.system.size() == minimal.size());
    CHECK(same.h == std::vector<StateId>{0, 1});

    Quotient m = minimize(reachable(sl, ex(sl, "(a+a) *{u+v} b")));
    CHECK(bisimilar(m.system, m.system.root, reachable(sl, ex(sl, "a *{u+v} b")), 0));
  }

  TEST_CASE("minimize yields a homomorphism and is idempotent") {
    for (const Theory& th : standard_theories()) {
      Rng rng(17);
      for (int i = 0; i < 40; ++i) {
        System sys = random_system(rng, th, 6);
        Quotient q = minimize(sys);
        auto h = [&](const Move& o) { return Move{o.action, o.target ? std::optional<StateId>(q.h[*o.target]) : std::nullopt}; };
        for (StateId x = 0; x < sys.size(); ++x) CHECK(mval_map(th, h, sys.beta[x]) == q.system.beta[q.h[x]]);
        CHECK(refine(q.system) == [&] {
          Partition p(q.system.size());
          for (StateId x = 0; x < p.size(); ++x) p[x] = x;
          return p;
        }());
        Quotient again = minimize(q.system);
        CHECK(again.system.size() == q.system.size());
        CHECK(again.system.beta == q.system.beta);
      }
    }
  }

  TEST_CASE("axiom soundness on random instances") {
    for (const Theory& th : standard_theories()) {
      CAPTURE(th.selector());
      Rng rng(19);
      for (Axiom ax : all_axioms()) {
        for (int i = 0; i < 25; ++i) {
          auto r = check_axiom(th, random_axiom_instance(rng, th, ax, {}));
          CHECK_MESSAGE(r.ok, r.detail);
        }
      }
    }
  }

  TEST_CASE("an expression is equivalent to its unfolded step") {
    for (const Theory& th : standard_theories())
      for (const Expr& e : corpus(th)) CHECK_MESSAGE(decide_equiv(th, e, unfold_expr(th, step(th, e))), print(e));
  }
}

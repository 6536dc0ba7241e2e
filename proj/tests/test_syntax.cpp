#include "support.hpp"

using namespace ustar;
using test::ex;

TEST_SUITE("syntax") {
  TEST_CASE("parse examples") {
    Theory sl = Theory::sl();
    Expr e = ex(sl, "(a + b) ; c");
    REQUIRE(e.kind() == Expr::Kind::Seq);
    CHECK(e.left() == Expr::op(Symbol::join(), {Expr::act("a"), Expr::act("b")}));
    CHECK(e.right() == Expr::act("c"));

    Expr s = ex(sl, "a *{u + v} b");
    REQUIRE(s.kind() == Expr::Kind::Star);
    CHECK(s.left() == Expr::act("a"));
    CHECK(s.star_term() == StarTerm::apply(Symbol::join(), {StarTerm::variable(Slot::U), StarTerm::variable(Slot::V)}));
    CHECK(s.right() == Expr::act("b"));

    Expr c = ex(Theory::ca(), "a *{u (+1/2) v} b");
    CHECK(c.star_term().sym == Symbol::prob(Rational(1, 2)));
    CHECK(ex(Theory::ca(), "a (+ 2/4) b") == ex(Theory::ca(), "a (+1/2) b"));
  }

  TEST_CASE("precedence and associativity") {
    Theory sl = Theory::sl();
    CHECK(ex(sl, "a ; b + c") == ex(sl, "(a ; b) + c"));
    CHECK(ex(sl, "a ; b ; c") == ex(sl, "a ; (b ; c)"));
    CHECK(ex(sl, "a + b + c") == ex(sl, "a + (b + c)"));
    CHECK(ex(sl, "a *{u + v} b ; c") == ex(sl, "(a *{u + v} b) ; c"));
    CHECK(ex(sl, "a *{u} b *{v} c") == ex(sl, "a *{u} (b *{v} c)"));
    Theory nat = Theory::smod(SemiringKind::Naturals);
    CHECK(ex(nat, "2 . a ; b (+) c") == ex(nat, "(2 . (a ; b)) (+) c"));
    Theory gc = Theory::gc({"p"});
    CHECK_THROWS_AS(ex(gc, "a +[p] b (+1/2) c"), ParseError);
    CHECK(ex(gc, "a +[p] (b (+1/2) c)").kind() == Expr::Kind::Op);
  }

  TEST_CASE("print examples") {
    Theory sl = Theory::sl();
    CHECK(print(Expr::star(Expr::act("a"), parse_star_term("u+v", sl), Expr::act("b"))) == "a *{u + v} b");
    CHECK(print(Expr::seq(Expr::seq(Expr::act("a"), Expr::act("b")), Expr::act("c"))) == "(a ; b) ; c");
    CHECK(print(Expr::zero()) == "0");
    CHECK(print(ex(Theory::ca(), "a *{(u (+1/2) v) (+1) 0} b")) == "a *{(u (+1/2) v) (+1) 0} b");
    CHECK(print(ex(Theory::smod(SemiringKind::Rationals), "1/2 . (a (+) b) (+) c")) == "1/2 . (a (+) b) (+) c");
    CHECK(print(ex(Theory::ga({"p", "q"}), "a +[p&!q] b")) == "a +[p & !q] b");
  }

  TEST_CASE("parse errors carry positions") {
    Theory sl = Theory::sl();
    try {
      ex(sl, "a + ");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(ex(sl, "a +"), ParseError);
    CHECK_THROWS_AS(ex(sl, "a b"), ParseError);
    CHECK_THROWS_AS(ex(sl, "(a"), ParseError);
    CHECK_THROWS_AS(ex(sl, "A"), ParseError);
    CHECK_THROWS_AS(ex(sl, "a *{w} b"), ParseError);
    CHECK_THROWS_AS(ex(sl, "a (+1/2) b"), ParseError);
    CHECK_THROWS_AS(ex(Theory::ga({"p"}), "a +[r] b"), ParseError);
    CHECK_THROWS_AS(ex(Theory::ca(), "a (+3/2) b"), ParseError);
    CHECK_THROWS_AS(ex(Theory::ca(), "a (+1/0) b"), ParseError);
    CHECK_THROWS_AS(ex(Theory::smod(SemiringKind::Naturals), "1/2 . a"), ParseError);
    CHECK_THROWS_AS(ex(Theory::smod(SemiringKind::Naturals), "2 a"), ParseError);
    CHECK_THROWS_AS(ex(sl, "a + b (+) c"), ParseError);
    CHECK_THROWS_AS(ex(sl, ""), ParseError);
  }

  TEST_CASE("star height") {
    Theory sl = Theory::sl();
    CHECK(star_height(ex(sl, "a")) == 0);
    CHECK(star_height(ex(sl, "a *{u+v} b")) == 1);
    CHECK(star_height(ex(sl, "(a *{u+v} b) *{u+v} c")) == 2);
    CHECK(star_height(ex(sl, "a *{u+v} (b *{u+v} c)")) == 1);
  }

  TEST_CASE("U(e)") {
    Theory sl = Theory::sl();
    CHECK(compute_U(ex(sl, "a")) == std::set<Expr>{ex(sl, "a")});
    CHECK(compute_U(ex(sl, "a ; b")) == std::set<Expr>{ex(sl, "a ; b"), ex(sl, "b")});
    Expr star = ex(sl, "a *{u+v} b");
    CHECK(compute_U(star) == std::set<Expr>{star, Expr::seq(ex(sl, "a"), star), ex(sl, "b")});
  }

  TEST_CASE("print then parse is the identity on random expressions") {
    Rng rng(21);
    GenOptions opt;
    opt.max_size = 14;
    for (const Theory& th : standard_theories()) {
      CAPTURE(th.selector());
      for (int i = 0; i < 300; ++i) {
        Expr e = random_expr(rng, th, opt);
        auto r = check_print_parse(th, e);
        CHECK_MESSAGE(r.ok, r.detail);
      }
    }
  }

  TEST_CASE("structural equality and hashing") {
    Theory sl = Theory::sl();
    Expr a = ex(sl, "(a + b) *{u + v} c");
    Expr b = ex(sl, "(a+b)*{u+v}c");
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
    CHECK(a != ex(sl, "(b + a) *{u + v} c"));
    CHECK(Expr() == Expr::zero());
  }

  TEST_CASE("checking against a theory") {
    Expr e = ex(Theory::sl(), "a + b");
    CHECK_THROWS_AS(check_expr(Theory::ca(), e), TheoryMismatch);
    CHECK_NOTHROW(check_expr(Theory::sl(), e));
    CHECK_THROWS_AS(reachable(Theory::ca(), e), TheoryMismatch);
  }
}

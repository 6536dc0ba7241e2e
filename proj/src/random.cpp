#include "ustar/random.hpp"

#include <array>

namespace ustar {

Rational random_probability(Rng& rng) {
  static const std::array<Rational, 7> pool{Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                            Rational(2, 3), Rational(3, 4), Rational(1)};
  return pool[uniform(rng, 0, pool.size() - 1)];
}

Rational random_weight(Rng& rng, const Theory& th, bool allow_zero) {
  std::vector<Rational> pool;
  switch (th.semiring().kind) {
    case SemiringKind::Naturals: pool = {0, 1, 2, 3}; break;
    case SemiringKind::Booleans: pool = {0, 1}; break;
    case SemiringKind::Rationals: pool = {0, Rational(1, 2), 1, Rational(3, 2), 2}; break;
  }
  if (!allow_zero) pool.erase(pool.begin());
  return pool[uniform(rng, 0, pool.size() - 1)];
}

BExpr random_bexpr(Rng& rng, const Theory& th, int depth) {
  const auto& tests = th.tests();
  std::size_t pick = uniform(rng, 0, depth > 0 ? 5 : 2);
  if (tests.empty() && pick == 0) pick = 1;
  switch (pick) {
    case 0:
    case 1: {
      if (tests.empty()) return (rng() & 1) ? BExpr::truth() : BExpr::falsity();
      std::size_t i = uniform(rng, 0, tests.size() - 1);
      return BExpr::test(tests[i], i);
    }
    case 2: return (rng() & 1) ? BExpr::truth() : BExpr::falsity();
    case 3: return BExpr::negate(random_bexpr(rng, th, depth - 1));
    case 4: return BExpr::conj(random_bexpr(rng, th, depth - 1), random_bexpr(rng, th, depth - 1));
    default: return BExpr::disj(random_bexpr(rng, th, depth - 1), random_bexpr(rng, th, depth - 1));
  }
}

Symbol random_binary_symbol(Rng& rng, const Theory& th) {
  switch (th.kind()) {
    case TheoryKind::SL: return Symbol::join();
    case TheoryKind::GA: return Symbol::guard(make_guard(th, random_bexpr(rng, th)));
    case TheoryKind::CA: return Symbol::prob(random_probability(rng));
    case TheoryKind::GC:
      return (rng() & 1) ? Symbol::guard(make_guard(th, random_bexpr(rng, th))) : Symbol::prob(random_probability(rng));
    case TheoryKind::SMOD: return Symbol::sum();
  }
  return Symbol::zero();
}

namespace {

template <class V, class Leaf>
Term<V> gen_term(Rng& rng, const Theory& th, std::size_t size, Leaf&& leaf) {
  bool smod = th.kind() == TheoryKind::SMOD;
  if (size >= 3 && uniform(rng, 0, 3) != 0) {
    std::size_t left = uniform(rng, 1, size - 2);
    Term<V> l = gen_term<V>(rng, th, left, leaf);
    Term<V> r = gen_term<V>(rng, th, size - 1 - left, leaf);
    return Term<V>::apply(random_binary_symbol(rng, th), {std::move(l), std::move(r)});
  }
  if (smod && size >= 2 && uniform(rng, 0, 2) == 0)
    return Term<V>::apply(Symbol::scale(random_weight(rng, th)), {gen_term<V>(rng, th, size - 1, leaf)});
  if (uniform(rng, 0, 7) == 0) return Term<V>::apply(Symbol::zero());
  return Term<V>::variable(leaf());
}

}  // namespace

Term<std::size_t> random_term(Rng& rng, const Theory& th, std::size_t vars, std::size_t size) {
  return gen_term<std::size_t>(rng, th, std::max<std::size_t>(size, 1), [&] { return uniform(rng, 0, vars - 1); });
}

StarTerm random_star_term(Rng& rng, const Theory& th, std::size_t size) {
  return gen_term<Slot>(rng, th, uniform(rng, 1, std::max<std::size_t>(size, 1)),
                        [&] { return (rng() & 1) ? Slot::U : Slot::V; });
}

Expr random_expr_of_size(Rng& rng, const Theory& th, std::size_t size, const GenOptions& opt) {
  bool smod = th.kind() == TheoryKind::SMOD;
  if (size <= 1 || (size == 2 && !smod)) {
    if (uniform(rng, 0, 9) == 0) return Expr::zero();
    return Expr::act(opt.actions[uniform(rng, 0, opt.actions.size() - 1)]);
  }
  if (size == 2 || (smod && uniform(rng, 0, 5) == 0))
    return Expr::op(Symbol::scale(random_weight(rng, th)), {random_expr_of_size(rng, th, size - 1, opt)});
  // A star spends part of the budget on its parameter, so it needs room for
  // two operands and a term.
  if (size >= 4 && uniform(rng, 0, 2) == 0) {
    std::size_t t = uniform(rng, 1, std::min(std::max<std::size_t>(opt.max_term_size, 1), size - 3));
    StarTerm st = random_star_term(rng, th, t);
    std::size_t left = uniform(rng, 1, size - 2 - st.size());
    Expr l = random_expr_of_size(rng, th, left, opt);
    Expr r = random_expr_of_size(rng, th, size - 1 - st.size() - left, opt);
    return Expr::star(std::move(l), std::move(st), std::move(r));
  }
  std::size_t left = uniform(rng, 1, size - 2);
  Expr l = random_expr_of_size(rng, th, left, opt);
  Expr r = random_expr_of_size(rng, th, size - 1 - left, opt);
  if (rng() & 1) return Expr::op(random_binary_symbol(rng, th), {std::move(l), std::move(r)});
  return Expr::seq(std::move(l), std::move(r));
}

Expr random_expr(Rng& rng, const Theory& th, const GenOptions& opt) {
  std::size_t size = uniform(rng, 1, std::max<std::size_t>(opt.max_size, 1));
  // Without a unary operator no expression has two nodes.
  if (size == 2 && th.kind() != TheoryKind::SMOD && opt.max_size >= 3) size = 3;
  return random_expr_of_size(rng, th, size, opt);
}

System random_system(Rng& rng, const Theory& th, std::size_t max_states, std::size_t max_actions) {
  const std::size_t n = uniform(rng, 1, std::max<std::size_t>(max_states, 1));
  const std::size_t base = uniform(rng, 1, n);
  static const std::array<const char*, 4> names{"a", "b", "c", "d"};
  const std::size_t actions = std::clamp<std::size_t>(max_actions, 1, names.size());

  std::vector<Move> elems;
  for (std::size_t a = 0; a < actions; ++a) {
    elems.push_back(Move{names[a], std::nullopt});
    for (StateId t = 0; t < base; ++t) elems.push_back(Move{names[a], t});
  }

  std::vector<StateId> rep(n);
  for (StateId x = 0; x < n; ++x) rep[x] = x < base ? x : uniform(rng, 0, base - 1);
  std::vector<std::vector<StateId>> copies(base);
  for (StateId x = 0; x < n; ++x) copies[rep[x]].push_back(x);

  std::vector<MVal<Move>> base_beta;
  for (StateId x = 0; x < base; ++x) base_beta.push_back(random_value(rng, th, elems));

  System sys;
  sys.theory = th;
  for (StateId x = 0; x < n; ++x) {
    sys.names.push_back("x" + std::to_string(x));
    std::vector<StateId> choice(base);
    for (StateId t = 0; t < base; ++t) choice[t] = copies[t][uniform(rng, 0, copies[t].size() - 1)];
    sys.beta.push_back(mval_map(
        th, [&](const Move& o) { return Move{o.action, o.target ? std::optional<StateId>(choice[*o.target]) : std::nullopt}; },
        base_beta[rep[x]]));
  }
  sys.root = 0;
  return sys;
}

}  // namespace ustar

#pragma once

#include "ustar/semantics.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ustar {

using Rng = std::mt19937_64;

struct GenOptions {
  std::size_t max_size = 8;       // all nodes, star parameters included
  std::size_t max_term_size = 3;  // nodes of a star parameter
  std::vector<std::string> actions{"a", "b", "c"};
};

// Parameters are drawn from small fixed pools so that coincidences (equal
// probabilities, repeated guards) happen often enough to matter.
Rational random_probability(Rng& rng);
Rational random_weight(Rng& rng, const Theory& th, bool allow_zero = true);
BExpr random_bexpr(Rng& rng, const Theory& th, int depth = 2);
Symbol random_binary_symbol(Rng& rng, const Theory& th);

/// A term over variables 0..vars-1 with at most `size` nodes.
Term<std::size_t> random_term(Rng& rng, const Theory& th, std::size_t vars, std::size_t size);
StarTerm random_star_term(Rng& rng, const Theory& th, std::size_t size);

/// An expression with `size` nodes counting star parameters. Outside SMOD
/// there is no two-node expression and size 2 yields a single action.
Expr random_expr_of_size(Rng& rng, const Theory& th, std::size_t size, const GenOptions& opt = {});
// Size drawn uniformly from 1..opt.max_size.
Expr random_expr(Rng& rng, const Theory& th, const GenOptions& opt = {});

/// A normal form over the given elements, built directly in the carrier.
template <class E>
MVal<E> random_value(Rng& rng, const Theory& th, const std::vector<E>& elems);

/// A system with at most max_states states. States are copies of a smaller
/// base system whose targets are redirected to random copies, so bisimilar
/// distinct states are common.
System random_system(Rng& rng, const Theory& th, std::size_t max_states, std::size_t max_actions = 2);

// Random subset of elems; each element is kept with probability 1/2.
template <class E>
std::vector<E> random_subset(Rng& rng, const std::vector<E>& elems) {
  std::vector<E> out;
  for (const auto& e : elems)
    if (rng() & 1) out.push_back(e);
  return out;
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

namespace detail {

template <class E>
Subdist<E> random_subdist(Rng& rng, const std::vector<E>& elems) {
  std::vector<E> support = random_subset(rng, elems);
  std::vector<unsigned> w;
  unsigned total = static_cast<unsigned>(uniform(rng, 0, 3));  // bottom share
  for (std::size_t i = 0; i < support.size(); ++i) {
    w.push_back(static_cast<unsigned>(uniform(rng, 1, 4)));
    total += w.back();
  }
  Subdist<E> d;
  for (std::size_t i = 0; i < support.size(); ++i) d.mass.emplace(support[i], Rational(w[i], total));
  return d;
}

}  // namespace detail

template <class E>
MVal<E> random_value(Rng& rng, const Theory& th, const std::vector<E>& elems) {
  switch (th.kind()) {
    case TheoryKind::SL: {
      auto sub = random_subset(rng, elems);
      return {Powerset<E>{std::set<E>(sub.begin(), sub.end())}};
    }
    case TheoryKind::GA: {
      Guarded<E> g;
      for (std::size_t a = 0; a < th.atom_count(); ++a) {
        std::size_t pick = uniform(rng, 0, elems.size());
        g.at.push_back(pick == elems.size() ? std::nullopt : std::optional<E>(elems[pick]));
      }
      return {std::move(g)};
    }
    case TheoryKind::CA: return {detail::random_subdist(rng, elems)};
    case TheoryKind::GC: {
      GuardedSubdist<E> g;
      for (std::size_t a = 0; a < th.atom_count(); ++a) g.at.push_back(detail::random_subdist(rng, elems));
      return {std::move(g)};
    }
    case TheoryKind::SMOD: {
      Weighted<E> w;
      for (const auto& e : random_subset(rng, elems)) w.weight.emplace(e, random_weight(rng, th, false));
      return {std::move(w)};
    }
  }
  return zero_value<E>(th);
}

}  // namespace ustar

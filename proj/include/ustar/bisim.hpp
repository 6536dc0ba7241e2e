#pragma once

#include "ustar/semantics.hpp"

#include <cstddef>
#include <vector>

namespace ustar {

/// Block id per state; ids are dense and numbered by first occurrence.
using Partition = std::vector<std::size_t>;

std::size_t block_count(const Partition& p);

// Greatest kernel bisimulation by iterated signature refinement.
Partition refine(const System& sys);

// Same partition by enumerating every equivalence relation; at most 8 states.
Partition brute_bisim(const System& sys);

// Whether every pair in a common block has equal block-relabelled transitions.
bool is_kernel_bisimulation(const System& sys, const Partition& p);

/// States of b follow those of a, shifted by a.size().
System disjoint_union(const System& a, const System& b);

bool bisimilar(const System& a, StateId x, const System& b, StateId y);

struct Quotient {
  System system;
  std::vector<StateId> h;  // quotient map from the input states
};

Quotient minimize(const System& sys);

bool decide_equiv(const Theory& th, const Expr& e1, const Expr& e2);

}  // namespace ustar

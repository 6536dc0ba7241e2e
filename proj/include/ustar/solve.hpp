#pragma once

#include "ustar/bisim.hpp"
#include "ustar/layering.hpp"

#include <map>
#include <vector>

namespace ustar {

using SolutionMap = std::vector<Expr>;  // indexed by state

/// Splits beta(x) into its loop part (self and entry targets) and its exit
/// part (body targets and ticks).
Split<Move> factorize(const System& sys, const Labelling& lab, StateId x);

/// Canonical-solution builder for one well-layered labelled system. Results
/// are memoized per instance.
class Solver {
 public:
  Solver(const System& sys, const Labelling& lab);

  const Expr& phi(StateId x);
  // Requires that x loops around y.
  const Expr& tau(StateId y, StateId x);

  SolutionMap solution();

  const std::vector<std::set<StateId>>& loops() const { return loops_; }

 private:
  const System& sys_;
  const Labelling& lab_;
  std::vector<std::set<StateId>> loops_;
  std::map<StateId, Expr> phi_;
  std::map<std::pair<StateId, StateId>, Expr> tau_;
  std::set<StateId> phi_busy_;
  std::set<std::pair<StateId, StateId>> tau_busy_;
};

SolutionMap canonical_solution(const System& sys, const Labelling& lab);

/// Whether phi(x) is equivalent to beta(x) with (d, ✓) read as d and (a, z)
/// as a ; phi(z), for every state x.
bool check_solution(const System& sys, const SolutionMap& phi);

struct Roundtrip {
  Expr result;
  Quotient quotient;
  Labelling labelling;
  bool searched = false;  // labelling came from search rather than the syntactic image
};

Roundtrip roundtrip(const Theory& th, const Expr& e);

}  // namespace ustar

#pragma once

#include "ustar/semantics.hpp"
#include "ustar/system_io.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ustar {

using Transition = std::tuple<StateId, std::string, StateId>;
using StatePair = std::pair<StateId, StateId>;

/// Entry transitions; every other state-to-state transition is a body
/// transition. Transitions into the tick are not classified.
struct Labelling {
  std::set<Transition> entry;

  bool is_entry(StateId x, const std::string& a, StateId y) const { return entry.count({x, a, y}) > 0; }
  friend bool operator==(const Labelling& a, const Labelling& b) { return a.entry == b.entry; }
};

std::set<Transition> transitions(const System& sys);
std::set<StatePair> state_pairs(const System& sys);

Labelling syntactic_labelling(const System& sys);

struct Verdict {
  int condition = 0;  // 0 when well-layered, else the violated condition 1..4
  std::string witness;

  bool ok() const { return condition == 0; }
};

Verdict check_well_layered(const System& sys, const Labelling& lab);

// x loops around y, as adjacency sets indexed by x.
std::vector<std::set<StateId>> loops_around(const System& sys, const Labelling& lab);

struct Measures {
  std::vector<std::size_t> entry_depth;  // |x|_en
  std::vector<std::size_t> body_depth;   // |x|_bo
};

Measures measures(const System& sys, const Labelling& lab);

inline constexpr std::size_t kSearchPairLimit = 20;

/// Some well-layered labelling, preferring fewer entry pairs; nullopt when
/// none exists. Labels are uniform per state pair. Throws BoundError above
/// kSearchPairLimit state-to-state pairs.
std::optional<Labelling> search_labelling(const System& sys);

// Every well-layered pair-uniform labelling, in search order.
std::vector<Labelling> all_labellings(const System& sys, std::size_t limit = SIZE_MAX);

/// The labelling of a quotient whose entries are the images of lab's entries.
Labelling image_labelling(const Labelling& lab, const std::vector<StateId>& h);

Json export_labelling(const System& sys, const Labelling& lab);
Labelling load_labelling(const System& sys, const Json& doc);

}  // namespace ustar

#include "ustar/layering.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace ustar {

namespace {

using Graph = std::vector<std::set<StateId>>;

struct Graphs {
  Graph entry;
  Graph body;
};

Graphs split_graph(const System& sys, const Labelling& lab) {
  Graphs g{Graph(sys.size()), Graph(sys.size())};
  for (const auto& [x, a, y] : transitions(sys)) (lab.is_entry(x, a, y) ? g.entry : g.body)[x].insert(y);
  return g;
}

// A cycle as a state sequence whose last element repeats the first; empty if
// the graph is acyclic.
std::vector<StateId> find_cycle(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<int> color(n, 0);
  std::vector<StateId> stack;
  std::vector<StateId> cycle;
  std::function<bool(StateId)> dfs = [&](StateId x) {
    color[x] = 1;
    stack.push_back(x);
    for (StateId y : g[x]) {
      if (color[y] == 1) {
        auto it = std::find(stack.begin(), stack.end(), y);
        cycle.assign(it, stack.end());
        cycle.push_back(y);
        return true;
      }
      if (color[y] == 0 && dfs(y)) return true;
    }
    stack.pop_back();
    color[x] = 2;
    return false;
  };
  for (StateId x = 0; x < n; ++x)
    if (color[x] == 0 && dfs(x)) return cycle;
  return {};
}

std::vector<bool> reach_from(const Graph& g, StateId start, std::optional<StateId> avoid) {
  std::vector<bool> seen(g.size(), false);
  if (avoid && start == *avoid) return seen;
  std::deque<StateId> work{start};
  seen[start] = true;
  while (!work.empty()) {
    StateId x = work.front();
    work.pop_front();
    for (StateId y : g[x]) {
      if (seen[y] || (avoid && y == *avoid)) continue;
      seen[y] = true;
      work.push_back(y);
    }
  }
  return seen;
}

std::string path_text(const System& sys, const std::vector<StateId>& path, const char* arrow) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? arrow : "") + sys.names[path[i]];
  return s;
}

bool has_tick(const System& sys, StateId x) {
  for (const auto& o : supp(sys.beta[x]))
    if (o.ticks()) return true;
  return false;
}

std::vector<std::size_t> longest_paths(const Graph& g, const char* what) {
  const std::size_t n = g.size();
  std::vector<std::size_t> depth(n, 0);
  std::vector<int> state(n, 0);
  std::function<std::size_t(StateId)> visit = [&](StateId x) -> std::size_t {
    if (state[x] == 2) return depth[x];
    if (state[x] == 1) throw Error(std::string("labelling is not well-layered: cycle in ") + what);
    state[x] = 1;
    std::size_t best = 0;
    for (StateId y : g[x]) best = std::max(best, visit(y) + 1);
    state[x] = 2;
    return depth[x] = best;
  };
  for (StateId x = 0; x < n; ++x) visit(x);
  return depth;
}

class SyntacticRules {
 public:
  explicit SyntacticRules(const Theory& th) : th_(th) {}

  // Pairs (a, f) with e entering f via a.
  std::set<ExprMove> entries(const Expr& e) {
    std::set<ExprMove> out;
    if (e.kind() == Expr::Kind::Star) {
      for (const auto& o : supp(step(th_, e.left()))) {
        if (o.ticks())
          out.insert({o.action, e});
        else if (finishes(*o.target))
          out.insert({o.action, Expr::seq(*o.target, e)});
      }
    } else if (e.kind() == Expr::Kind::Seq) {
      for (const auto& o : entries(e.left())) out.insert({o.action, Expr::seq(*o.target, e.right())});
    }
    return out;
  }

 private:
  const Theory& th_;
  std::map<Expr, bool> finishes_;

  // f reaches the tick in one or more steps.
  bool finishes(const Expr& f) {
    auto it = finishes_.find(f);
    if (it != finishes_.end()) return it->second;
    System r = reachable(th_, f);
    bool any = false;
    for (StateId x = 0; x < r.size() && !any; ++x) any = has_tick(r, x);
    finishes_.emplace(f, any);
    return any;
  }
};

}  // namespace

std::set<Transition> transitions(const System& sys) {
  std::set<Transition> out;
  for (StateId x = 0; x < sys.size(); ++x)
    for (const auto& o : supp(sys.beta[x]))
      if (o.target) out.emplace(x, o.action, *o.target);
  return out;
}

std::set<StatePair> state_pairs(const System& sys) {
  std::set<StatePair> out;
  for (const auto& [x, a, y] : transitions(sys)) out.emplace(x, y);
  return out;
}

Labelling syntactic_labelling(const System& sys) {
  if (!sys.has_exprs()) throw Error("syntactic labelling needs the expression of every state");
  std::map<Expr, StateId> ids;
  for (StateId x = 0; x < sys.size(); ++x) ids.emplace(sys.exprs[x], x);
  std::set<Transition> all = transitions(sys);
  SyntacticRules rules(sys.theory);
  Labelling lab;
  for (StateId x = 0; x < sys.size(); ++x) {
    // A rule may fire for a body step that the star parameter discards
    // (e.g. a parameter without u), so only real transitions are kept.
    for (const auto& o : rules.entries(sys.exprs[x])) {
      auto it = ids.find(*o.target);
      if (it != ids.end() && all.count({x, o.action, it->second})) lab.entry.emplace(x, o.action, it->second);
    }
  }
  return lab;
}

std::vector<std::set<StateId>> loops_around(const System& sys, const Labelling& lab) {
  Graphs g = split_graph(sys, lab);
  std::vector<std::set<StateId>> out(sys.size());
  for (StateId x = 0; x < sys.size(); ++x) {
    for (StateId x1 : g.entry[x]) {
      if (x1 == x) continue;
      std::vector<bool> seen = reach_from(g.body, x1, x);
      for (StateId y = 0; y < sys.size(); ++y)
        if (seen[y]) out[x].insert(y);
    }
  }
  return out;
}

Verdict check_well_layered(const System& sys, const Labelling& lab) {
  std::set<Transition> all = transitions(sys);
  for (const auto& t : lab.entry)
    if (!all.count(t)) throw SchemaError("entry transition is not a transition of the system");

  Graphs g = split_graph(sys, lab);
  if (auto cycle = find_cycle(g.body); !cycle.empty())
    return {1, "body cycle " + path_text(sys, cycle, " -> ")};

  for (StateId x = 0; x < sys.size(); ++x) {
    for (StateId y : g.entry[x]) {
      if (y == x) continue;
      if (!reach_from(g.body, y, std::nullopt)[x])
        return {2, "entry " + sys.names[x] + " -> " + sys.names[y] + " has no body path back"};
    }
  }

  auto loops = loops_around(sys, lab);
  Graph loop_graph(loops.begin(), loops.end());
  if (auto cycle = find_cycle(loop_graph); !cycle.empty())
    return {3, "loops-around cycle " + path_text(sys, cycle, " ~> ")};

  for (StateId x = 0; x < sys.size(); ++x)
    for (StateId y : loops[x])
      if (has_tick(sys, y)) return {4, sys.names[x] + " loops around " + sys.names[y] + ", which can terminate"};

  return {};
}

Measures measures(const System& sys, const Labelling& lab) {
  auto loops = loops_around(sys, lab);
  Measures m;
  m.entry_depth = longest_paths(Graph(loops.begin(), loops.end()), "loops-around relation");
  m.body_depth = longest_paths(split_graph(sys, lab).body, "body transitions");
  return m;
}

namespace {

// Enumerates pair-uniform labellings in order of increasing entry count and
// calls visit on each well-layered one until it returns false.
template <class Visit>
void enumerate_labellings(const System& sys, Visit&& visit) {
  std::set<StatePair> pairs = state_pairs(sys);
  if (pairs.size() > kSearchPairLimit)
    throw BoundError("labelling search is limited to " + std::to_string(kSearchPairLimit) + " state pairs, system has " +
                     std::to_string(pairs.size()));

  Graph full(sys.size());
  for (const auto& [x, y] : pairs) full[x].insert(y);
  std::vector<std::vector<bool>> reach(sys.size());
  for (StateId x = 0; x < sys.size(); ++x) reach[x] = reach_from(full, x, std::nullopt);

  // Body self-loops break condition 1 and entries leaving their strongly
  // connected component break condition 2, so only the rest is searched.
  std::set<StatePair> forced;
  std::vector<StatePair> free;
  for (const auto& [x, y] : pairs) {
    if (x == y)
      forced.emplace(x, y);
    else if (reach[y][x])
      free.emplace_back(x, y);
  }

  std::set<Transition> all = transitions(sys);
  auto labelling_for = [&](const std::vector<std::size_t>& chosen) {
    std::set<StatePair> entry_pairs = forced;
    for (std::size_t i : chosen) entry_pairs.insert(free[i]);
    Labelling lab;
    for (const auto& t : all)
      if (entry_pairs.count({std::get<0>(t), std::get<2>(t)})) lab.entry.insert(t);
    return lab;
  };

  const std::size_t c = free.size();
  for (std::size_t k = 0; k <= c; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Labelling lab = labelling_for(idx);
      if (check_well_layered(sys, lab).ok() && !visit(std::move(lab))) return;
      // next k-combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == c - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

}  // namespace

std::optional<Labelling> search_labelling(const System& sys) {
  std::optional<Labelling> found;
  enumerate_labellings(sys, [&](Labelling lab) {
    found = std::move(lab);
    return false;
  });
  return found;
}

std::vector<Labelling> all_labellings(const System& sys, std::size_t limit) {
  std::vector<Labelling> out;
  if (limit == 0) return out;
  enumerate_labellings(sys, [&](Labelling lab) {
    out.push_back(std::move(lab));
    return out.size() < limit;
  });
  return out;
}

Labelling image_labelling(const Labelling& lab, const std::vector<StateId>& h) {
  Labelling out;
  for (const auto& [x, a, y] : lab.entry) out.entry.emplace(h.at(x), a, h.at(y));
  return out;
}

Json export_labelling(const System& sys, const Labelling& lab) {
  Json arr = Json::array();
  for (const auto& [x, a, y] : lab.entry) arr.push_back({sys.names.at(x), a, sys.names.at(y)});
  return Json{{"entry", std::move(arr)}};
}

Labelling load_labelling(const System& sys, const Json& doc) {
  auto it = doc.find("entry");
  if (it == doc.end() || !it->is_array()) throw SchemaError("labelling document needs an 'entry' array");
  std::set<Transition> all = transitions(sys);
  Labelling lab;
  for (const auto& t : *it) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_string())
      throw SchemaError("entry must be [source, action, target]");
    auto x = sys.find(t[0].get<std::string>());
    auto y = sys.find(t[2].get<std::string>());
    if (!x || !y) throw SchemaError("dangling state reference in labelling");
    Transition tr{*x, t[1].get<std::string>(), *y};
    if (!all.count(tr)) throw SchemaError("entry transition is not a transition of the system");
    lab.entry.insert(std::move(tr));
  }
  return lab;
}

}  // namespace ustar

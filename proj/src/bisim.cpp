#include "ustar/bisim.hpp"

#include <algorithm>
#include <map>

namespace ustar {

namespace {

MVal<Move> relabel(const Theory& th, const Partition& p, const MVal<Move>& m) {
  return mval_map(
      th, [&](const Move& o) { return Move{o.action, o.target ? std::optional<StateId>(p[*o.target]) : std::nullopt}; },
      m);
}

}  // namespace

std::size_t block_count(const Partition& p) {
  return p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
}

Partition refine(const System& sys) {
  const std::size_t n = sys.size();
  Partition part(n, 0);
  std::size_t blocks = n == 0 ? 0 : 1;
  while (true) {
    std::map<std::pair<std::size_t, MVal<Move>>, std::size_t> ids;
    Partition next(n);
    for (StateId x = 0; x < n; ++x) {
      auto key = std::make_pair(part[x], relabel(sys.theory, part, sys.beta[x]));
      next[x] = ids.emplace(std::move(key), ids.size()).first->second;
    }
    part = std::move(next);
    if (ids.size() == blocks) return part;
    blocks = ids.size();
  }
}

bool is_kernel_bisimulation(const System& sys, const Partition& p) {
  std::vector<std::optional<MVal<Move>>> rep(block_count(p));
  for (StateId x = 0; x < sys.size(); ++x) {
    MVal<Move> m = relabel(sys.theory, p, sys.beta[x]);
    auto& r = rep[p[x]];
    if (!r)
      r = std::move(m);
    else if (*r != m)
      return false;
  }
  return true;
}

Partition brute_bisim(const System& sys) {
  const std::size_t n = sys.size();
  if (n > 8) throw BoundError("brute-force bisimulation is limited to 8 states");
  if (n == 0) return {};
  // Restricted growth strings enumerate each set partition exactly once, and
  // their numbering is already by first occurrence.
  Partition rgs(n, 0), best;
  std::vector<std::size_t> maxima(n, 0);
  std::size_t best_blocks = n + 1;
  while (true) {
    std::size_t blocks = maxima[n - 1] + 1;
    if (blocks < best_blocks && is_kernel_bisimulation(sys, rgs)) {
      best = rgs;
      best_blocks = blocks;
    }
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == maxima[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    maxima[i] = std::max(maxima[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      maxima[j] = maxima[i];
    }
  }
  return best;
}

System disjoint_union(const System& a, const System& b) {
  require_same_theory(a.theory, b.theory);
  System u;
  u.theory = a.theory;
  u.root = a.root;
  const std::size_t offset = a.size();
  for (StateId x = 0; x < a.size(); ++x) {
    u.names.push_back("l." + a.names[x]);
    u.beta.push_back(a.beta[x]);
  }
  for (StateId x = 0; x < b.size(); ++x) {
    u.names.push_back("r." + b.names[x]);
    u.beta.push_back(mval_map(
        b.theory,
        [&](const Move& o) { return Move{o.action, o.target ? std::optional<StateId>(*o.target + offset) : std::nullopt}; },
        b.beta[x]));
  }
  if (a.has_exprs() && b.has_exprs()) {
    u.exprs = a.exprs;
    u.exprs.insert(u.exprs.end(), b.exprs.begin(), b.exprs.end());
  }
  return u;
}

bool bisimilar(const System& a, StateId x, const System& b, StateId y) {
  System u = disjoint_union(a, b);
  Partition p = refine(u);
  return p.at(x) == p.at(a.size() + y);
}

Quotient minimize(const System& sys) {
  Partition p = refine(sys);
  std::size_t blocks = block_count(p);
  Quotient q;
  q.h = p;
  q.system.theory = sys.theory;
  q.system.names.resize(blocks);
  q.system.beta.resize(blocks);
  std::vector<bool> named(blocks, false);
  for (StateId x = 0; x < sys.size(); ++x) {
    std::size_t b = p[x];
    if (named[b]) continue;
    named[b] = true;
    q.system.names[b] = sys.names[x];
    q.system.beta[b] = relabel(sys.theory, p, sys.beta[x]);
  }
  q.system.root = p.at(sys.root);
  return q;
}

bool decide_equiv(const Theory& th, const Expr& e1, const Expr& e2) {
  if (e1 == e2) return true;
  return bisimilar(reachable(th, e1), 0, reachable(th, e2), 0);
}

}  // namespace ustar

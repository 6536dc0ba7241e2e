#include "ustar/solve.hpp"

namespace ustar {

namespace {

Expr prefixed(const std::string& a, const Expr& rest) { return Expr::seq(Expr::act(a), rest); }

// Marks a memo slot busy for the lifetime of one recursive evaluation.
template <class Key>
class BusyGuard {
 public:
  BusyGuard(std::set<Key>& busy, Key key, const char* what) : busy_(busy), key_(key) {
    if (!busy_.insert(key_).second) throw Error(std::string("cyclic dependency while computing ") + what);
  }
  ~BusyGuard() { busy_.erase(key_); }
  BusyGuard(const BusyGuard&) = delete;
  BusyGuard& operator=(const BusyGuard&) = delete;

 private:
  std::set<Key>& busy_;
  Key key_;
};

}  // namespace

Split<Move> factorize(const System& sys, const Labelling& lab, StateId x) {
  return split(sys.theory, sys.beta.at(x),
               [&](const Move& o) { return o.target && (*o.target == x || lab.is_entry(x, o.action, *o.target)); });
}

Solver::Solver(const System& sys, const Labelling& lab) : sys_(sys), lab_(lab), loops_(loops_around(sys, lab)) {}

const Expr& Solver::phi(StateId x) {
  if (auto it = phi_.find(x); it != phi_.end()) return it->second;
  BusyGuard<StateId> guard(phi_busy_, x, "the canonical solution");
  Split<Move> f = factorize(sys_, lab_, x);
  Expr loop = instantiate(f.left, [&](const Move& o) {
    return *o.target == x ? Expr::act(o.action) : prefixed(o.action, tau(*o.target, x));
  });
  Expr exit = instantiate(f.right, [&](const Move& o) {
    return o.target ? prefixed(o.action, phi(*o.target)) : Expr::act(o.action);
  });
  return phi_.emplace(x, Expr::star(std::move(loop), std::move(f.s), std::move(exit))).first->second;
}

const Expr& Solver::tau(StateId y, StateId x) {
  if (auto it = tau_.find({y, x}); it != tau_.end()) return it->second;
  if (x >= sys_.size() || !loops_[x].count(y))
    throw Error(sys_.names.at(x) + " does not loop around " + sys_.names.at(y));
  BusyGuard<std::pair<StateId, StateId>> guard(tau_busy_, {y, x}, "an intermediate solution");
  Split<Move> f = factorize(sys_, lab_, y);
  Expr loop = instantiate(f.left, [&](const Move& o) {
    return *o.target == y ? Expr::act(o.action) : prefixed(o.action, tau(*o.target, y));
  });
  Expr exit = instantiate(f.right, [&](const Move& o) {
    if (!o.target) throw Error("state " + sys_.names[y] + " can terminate inside a loop");
    return *o.target == x ? Expr::act(o.action) : prefixed(o.action, tau(*o.target, x));
  });
  return tau_.emplace(std::make_pair(y, x), Expr::star(std::move(loop), std::move(f.s), std::move(exit)))
      .first->second;
}

SolutionMap Solver::solution() {
  SolutionMap out;
  out.reserve(sys_.size());
  for (StateId x = 0; x < sys_.size(); ++x) out.push_back(phi(x));
  return out;
}

SolutionMap canonical_solution(const System& sys, const Labelling& lab) {
  Verdict v = check_well_layered(sys, lab);
  if (!v.ok()) throw Error("labelling violates condition " + std::to_string(v.condition) + ": " + v.witness);
  return Solver(sys, lab).solution();
}

bool check_solution(const System& sys, const SolutionMap& phi) {
  if (phi.size() != sys.size()) return false;
  for (StateId x = 0; x < sys.size(); ++x) {
    Expr unfolded = instantiate(reify(sys.theory, sys.beta[x]), [&](const Move& o) {
      return o.target ? prefixed(o.action, phi[*o.target]) : Expr::act(o.action);
    });
    if (!decide_equiv(sys.theory, phi[x], unfolded)) return false;
  }
  return true;
}

Roundtrip roundtrip(const Theory& th, const Expr& e) {
  System sys = reachable(th, e);
  Roundtrip out;
  out.quotient = minimize(sys);
  const System& msys = out.quotient.system;

  std::optional<Labelling> lab;
  std::optional<BoundError> bound;
  try {
    lab = search_labelling(msys);
    out.searched = lab.has_value();
  } catch (const BoundError& err) {
    bound = err;
  }
  if (!lab) {
    Labelling image = image_labelling(syntactic_labelling(sys), out.quotient.h);
    if (check_well_layered(msys, image).ok())
      lab = std::move(image);
    else if (bound)
      throw *bound;
    else
      throw Error("no well-layered labelling of the minimized system");
  }
  out.labelling = *lab;
  out.result = Solver(msys, out.labelling).phi(msys.root);
  return out;
}

}  // namespace ustar

#pragma once

#include "ustar/mval.hpp"
#include "ustar/syntax.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ustar {

/// One branch outcome: an action followed by termination (no target) or a
/// continuation.
template <class S>
struct Outcome {
  std::string action;
  std::optional<S> target;  // nullopt is the tick

  bool ticks() const { return !target.has_value(); }

  friend bool operator==(const Outcome& a, const Outcome& b) { return a.action == b.action && a.target == b.target; }
  friend bool operator<(const Outcome& a, const Outcome& b) {
    if (a.action != b.action) return a.action < b.action;
    return a.target < b.target;
  }
};

using StateId = std::size_t;
using Move = Outcome<StateId>;
using ExprMove = Outcome<Expr>;

/// A finite M-system over states 0..n-1.
struct System {
  Theory theory;
  std::vector<std::string> names;
  std::vector<MVal<Move>> beta;
  StateId root = 0;
  // Expression each state was built from, when the system came from an
  // expression; empty for imported systems.
  std::vector<Expr> exprs;

  std::size_t size() const { return beta.size(); }
  bool has_exprs() const { return exprs.size() == beta.size(); }
  std::optional<StateId> find(const std::string& name) const;
};

/// Throws SchemaError when names/beta disagree, a target is dangling, or a
/// value breaks its theory's normal-form invariants.
void validate_system(const System& sys);

// Single-step semantics.
MVal<ExprMove> step(const Theory& th, const Expr& e);

/// The smallest subsystem of the expression system containing e; the root is
/// state 0 and states are numbered in breadth-first discovery order.
System reachable(const Theory& th, const Expr& e);

std::string format_move(const System& sys, const Move& m);
std::string format_expr_move(const ExprMove& m);

/// Replaces the variables of t by expressions.
template <class V, class F>
Expr instantiate(const Term<V>& t, F&& f) {
  if (t.is_var()) return f(*t.var);
  std::vector<Expr> kids;
  kids.reserve(t.args.size());
  for (const auto& a : t.args) kids.push_back(instantiate(a, f));
  return Expr::op(t.sym, std::move(kids));
}

/// The expression t(b, a e) read off a one-step value: (b, ✓) becomes b and
/// (a, f) becomes a ; f.
Expr unfold_expr(const Theory& th, const MVal<ExprMove>& m);

}  // namespace ustar

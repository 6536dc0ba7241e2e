#include "ustar/semantics.hpp"

#include <deque>
#include <map>

namespace ustar {

std::optional<StateId> System::find(const std::string& name) const {
  for (StateId i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

void validate_system(const System& sys) {
  if (sys.names.size() != sys.beta.size()) throw SchemaError("state names and transition map differ in size");
  if (sys.beta.empty()) throw SchemaError("system has no states");
  if (sys.root >= sys.size()) throw SchemaError("root is not a state");
  std::set<std::string> seen;
  for (const auto& n : sys.names)
    if (!seen.insert(n).second) throw SchemaError("duplicate state '" + n + "'");
  for (const auto& m : sys.beta) {
    validate_value(sys.theory, m);
    for (const auto& o : supp(m)) {
      if (o.target && *o.target >= sys.size()) throw SchemaError("dangling state reference");
      if (!is_action_name(o.action)) throw SchemaError("malformed action '" + o.action + "'");
    }
  }
}

MVal<ExprMove> step(const Theory& th, const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Act: return eta(th, ExprMove{e.action(), std::nullopt});
    case Expr::Kind::Op: {
      std::vector<MVal<ExprMove>> kids;
      kids.reserve(e.children().size());
      for (const auto& k : e.children()) kids.push_back(step(th, k));
      return apply_op(th, e.symbol(), kids);
    }
    case Expr::Kind::Seq: {
      const Expr& rest = e.right();
      return mval_map(
          th,
          [&](const ExprMove& o) {
            return ExprMove{o.action, o.target ? Expr::seq(*o.target, rest) : rest};
          },
          step(th, e.left()));
    }
    case Expr::Kind::Star: {
      MVal<ExprMove> body = mval_map(
          th,
          [&](const ExprMove& o) { return ExprMove{o.action, o.target ? Expr::seq(*o.target, e) : e}; },
          step(th, e.left()));
      MVal<ExprMove> exit = step(th, e.right());
      return eval_term_with<Slot, ExprMove>(th, e.star_term(),
                                            [&](Slot s) { return s == Slot::U ? body : exit; });
    }
  }
  return zero_value<ExprMove>(th);
}

System reachable(const Theory& th, const Expr& e) {
  check_expr(th, e);
  System sys;
  sys.theory = th;
  std::map<Expr, StateId> ids;
  std::deque<StateId> work;
  auto intern = [&](const Expr& x) {
    auto [it, fresh] = ids.emplace(x, sys.exprs.size());
    if (fresh) {
      sys.exprs.push_back(x);
      sys.names.push_back("s" + std::to_string(it->second));
      sys.beta.emplace_back();
      work.push_back(it->second);
    }
    return it->second;
  };
  intern(e);
  while (!work.empty()) {
    StateId x = work.front();
    work.pop_front();
    MVal<ExprMove> m = step(th, sys.exprs[x]);
    auto moves = mval_map(
        th, [&](const ExprMove& o) { return Move{o.action, o.target ? std::optional<StateId>(intern(*o.target)) : std::nullopt}; },
        m);
    sys.beta[x] = std::move(moves);
  }
  sys.root = 0;
  return sys;
}

std::string format_move(const System& sys, const Move& m) {
  return "(" + m.action + ", " + (m.target ? sys.names.at(*m.target) : std::string("✓")) + ")";
}

std::string format_expr_move(const ExprMove& m) {
  return "(" + m.action + ", " + (m.target ? print(*m.target) : std::string("✓")) + ")";
}

Expr unfold_expr(const Theory& th, const MVal<ExprMove>& m) {
  return instantiate(reify(th, m), [](const ExprMove& o) {
    Expr a = Expr::act(o.action);
    return o.target ? Expr::seq(a, *o.target) : a;
  });
}

}  // namespace ustar

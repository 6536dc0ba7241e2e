#include "ustar/properties.hpp"

#include <map>
#include <sstream>

namespace ustar {

std::vector<Theory> standard_theories() {
  return {Theory::sl(),
          Theory::ga({"p"}),
          Theory::ga({"p", "q"}),
          Theory::ca(),
          Theory::gc({"p"}),
          Theory::smod(SemiringKind::Naturals),
          Theory::smod(SemiringKind::Booleans),
          Theory::smod(SemiringKind::Rationals)};
}

namespace {

std::string fill(std::string text, const std::string& op, const std::string& op2) {
  std::string out;
  for (char c : text) {
    if (c == '@')
      out += op;
    else if (c == '#')
      out += op2;
    else
      out += c;
  }
  return out;
}

}  // namespace

std::vector<Expr> corpus(const Theory& th) {
  // '@' and '#' stand for two binary operators of the theory.
  static const std::vector<std::string> shapes{
      "a",
      "0",
      "a @ b",
      "(a @ b) ; c",
      "a ; c @ b ; c",
      "(a @ b) *{u @ v} c",
      "a *{u @ v} b",
      "(a ; b) *{u @ v} c",
      "(a @ a) *{u @ v} b",
      "a ; a",
      "a ; 0",
      "0 *{u @ v} a",
      "a *{u} b",
      "a *{v} b",
      "a *{0} b",
      "a *{v @ u} b",
      "(a *{u @ v} b) *{u @ v} c",
      "(a *{u @ v} b) ; c",
      "((a ; b) *{u @ v} c) *{u # v} d",
      "(a ; (b *{u @ v} c)) *{u @ v} d",
      "(a ; b @ c) *{u @ v} (d ; (e *{u # v} f))",
      "a ; (b *{v @ u} c) ; d",
      "(a @ 0) *{(u @ v) # 0} b",
      "(a ; b ; c) *{u @ v} (a ; b)",
      "(a @ b ; (c *{u @ v} a)) *{u # v} b",
  };
  std::string op, op2;
  std::vector<std::string> extra;
  switch (th.kind()) {
    case TheoryKind::SL:
      op = op2 = "+";
      break;
    case TheoryKind::GA:
      op = "+[" + th.tests().at(0) + "]";
      op2 = "+[!" + th.tests().at(0) + "]";
      if (th.tests().size() >= 2) extra = {"a +[p & q] b +[p & q] c", "(a +[q] b) *{u +[p | q] v} c"};
      break;
    case TheoryKind::CA:
      op = "(+1/2)";
      op2 = "(+1/3)";
      extra = {"a (+1/4) 0", "(a (+1) b) *{u (+0) v} c", "a *{(u (+1/2) v) (+1) 0} b"};
      break;
    case TheoryKind::GC:
      op = "+[" + th.tests().at(0) + "]";
      op2 = "(+1/2)";
      extra = {"(a (+1/2) b) +[p] c", "(a +[p] b) *{(u (+1/3) v) +[!p] v} c"};
      break;
    case TheoryKind::SMOD:
      op = op2 = "(+)";
      extra = {"1 . a", "0 . a (+) b", "(1 . a) *{u (+) v} b"};
      if (th.semiring().kind != SemiringKind::Booleans)
        extra.insert(extra.end(), {"2 . a (+) b", "a *{2 . u (+) v} b", "2 . (a ; b) (+) a ; b"});
      break;
  }
  std::vector<Expr> out;
  for (const auto& s : shapes) out.push_back(parse_expr(fill(s, op, op2), th));
  for (const auto& s : extra) out.push_back(parse_expr(s, th));
  return out;
}

// ---------------------------------------------------------------------------

CheckResult check_random_split(Rng& rng, const Theory& th) {
  std::vector<Move> elems{{"a", std::nullopt}, {"b", std::nullopt}, {"a", 0}, {"a", 1}, {"b", 1}, {"c", 2}};
  MVal<Move> m = random_value(rng, th, elems);
  std::set<Move> left;
  for (const auto& e : random_subset(rng, elems)) left.insert(e);
  auto in_left = [&](const Move& o) { return left.count(o) > 0; };
  Split<Move> sp = split(th, m, in_left);
  for (const auto& v : sp.left.variables())
    if (!in_left(v)) return CheckResult::fail("left term mentions a right element");
  for (const auto& v : sp.right.variables())
    if (in_left(v)) return CheckResult::fail("right term mentions a left element");
  MVal<Move> l = eval_identity(th, sp.left);
  MVal<Move> r = eval_identity(th, sp.right);
  MVal<Move> back = eval_term_with<Slot, Move>(th, sp.s, [&](Slot s) { return s == Slot::U ? l : r; });
  if (back != m) {
    auto fmt = [](const Move& o) { return "(" + o.action + "," + (o.target ? std::to_string(*o.target) : "✓") + ")"; };
    return CheckResult::fail("split identity fails for " + format_value(th, m, fmt) + ", s = " + print_star_term(sp.s));
  }
  return CheckResult::pass();
}

CheckResult check_print_parse(const Theory& th, const Expr& e) {
  std::string text = print(e);
  try {
    Expr back = parse_expr(text, th);
    if (back != e) return CheckResult::fail("reparse differs: " + text + " vs " + print(back));
  } catch (const Error& err) {
    return CheckResult::fail("printed form does not parse: " + text + " (" + err.what() + ")");
  }
  return CheckResult::pass();
}

CheckResult check_subsystem(const Theory& th, const Expr& e) {
  System sys = reachable(th, e);
  for (StateId x = 0; x < sys.size(); ++x) {
    MVal<ExprMove> back = mval_map(
        th, [&](const Move& o) { return ExprMove{o.action, o.target ? std::optional<Expr>(sys.exprs[*o.target]) : std::nullopt}; },
        sys.beta[x]);
    if (back != step(th, sys.exprs[x])) return CheckResult::fail("state " + print(sys.exprs[x]) + " disagrees with step");
  }
  std::size_t bound = compute_U(e).size();
  if (sys.size() > bound)
    return CheckResult::fail(std::to_string(sys.size()) + " reachable states exceed |U(e)| = " + std::to_string(bound));
  return CheckResult::pass();
}

namespace {

// step computed through reify and literal substitution of terms.
MVal<ExprMove> step_by_substitution(const Theory& th, const Expr& e) {
  auto continue_with = [&](const MVal<ExprMove>& inner, const Expr& k) {
    Term<ExprMove> t = reify(th, inner);
    return eval_term_with<ExprMove, ExprMove>(th, t, [&](const ExprMove& o) {
      return eta(th, ExprMove{o.action, o.target ? Expr::seq(*o.target, k) : k});
    });
  };
  switch (e.kind()) {
    case Expr::Kind::Act: return eta(th, ExprMove{e.action(), std::nullopt});
    case Expr::Kind::Op: {
      std::vector<MVal<ExprMove>> kids;
      for (const auto& k : e.children()) kids.push_back(step_by_substitution(th, k));
      return apply_op(th, e.symbol(), kids);
    }
    case Expr::Kind::Seq: return continue_with(step_by_substitution(th, e.left()), e.right());
    case Expr::Kind::Star: {
      MVal<ExprMove> body = continue_with(step_by_substitution(th, e.left()), e);
      MVal<ExprMove> exit = step_by_substitution(th, e.right());
      return eval_term_with<Slot, ExprMove>(th, e.star_term(), [&](Slot s) { return s == Slot::U ? body : exit; });
    }
  }
  return zero_value<ExprMove>(th);
}

}  // namespace

CheckResult check_substitution_semantics(const Theory& th, const Expr& e) {
  if (step_by_substitution(th, e) != step(th, e)) return CheckResult::fail("substitution semantics differs");
  return CheckResult::pass();
}

CheckResult check_roundtrip(const Theory& th, const Expr& e) {
  try {
    Roundtrip rt = roundtrip(th, e);
    if (!decide_equiv(th, rt.result, e)) return CheckResult::fail("roundtrip result " + print(rt.result) + " is not equivalent");
  } catch (const BoundError& err) {
    return CheckResult::fail(std::string("bound exceeded: ") + err.what());
  }
  return CheckResult::pass();
}

CheckResult check_syntactic_layering(const Theory& th, const Expr& e) {
  System sys = reachable(th, e);
  Verdict v = check_well_layered(sys, syntactic_labelling(sys));
  if (!v.ok()) return CheckResult::fail("condition " + std::to_string(v.condition) + ": " + v.witness);
  return CheckResult::pass();
}

CheckResult check_search_on_minimized(const Theory& th, const Expr& e, std::size_t max_states) {
  System msys = minimize(reachable(th, e)).system;
  if (msys.size() > max_states || state_pairs(msys).size() > kSearchPairLimit)
    return CheckResult::skip("minimized system too large for search");
  auto lab = search_labelling(msys);
  if (!lab) return CheckResult::fail("no well-layered labelling found");
  return CheckResult::pass();
}

CheckResult check_intermediate_lemma(const System& sys, const Labelling& lab) {
  Solver solver(sys, lab);
  const auto& loops = solver.loops();
  for (StateId x = 0; x < sys.size(); ++x) {
    for (StateId y : loops[x]) {
      Expr lhs = solver.phi(y);
      Expr rhs = Expr::seq(solver.tau(y, x), solver.phi(x));
      if (!decide_equiv(sys.theory, lhs, rhs))
        return CheckResult::fail("phi(" + sys.names[y] + ") differs from tau(" + sys.names[y] + ", " + sys.names[x] +
                                 ") ; phi(" + sys.names[x] + ")");
    }
  }
  return CheckResult::pass();
}

CheckResult check_solutionhood(const System& sys, const Labelling& lab) {
  if (!check_solution(sys, canonical_solution(sys, lab))) return CheckResult::fail("canonical solution is not a solution");
  return CheckResult::pass();
}

CheckResult check_uniqueness(const System& sys, std::size_t max_labellings) {
  if (state_pairs(sys).size() > kSearchPairLimit) return CheckResult::skip("too many state pairs");
  std::vector<Labelling> labs = all_labellings(sys, max_labellings);
  if (labs.size() < 2) return CheckResult::skip("fewer than two labellings");
  SolutionMap first = canonical_solution(sys, labs[0]);
  for (std::size_t i = 1; i < labs.size(); ++i) {
    SolutionMap other = canonical_solution(sys, labs[i]);
    for (StateId x = 0; x < sys.size(); ++x)
      if (!decide_equiv(sys.theory, first[x], other[x]))
        return CheckResult::fail("labellings 0 and " + std::to_string(i) + " disagree at " + sys.names[x]);
  }
  return CheckResult::pass();
}

CheckResult check_pullback(const System& sys) {
  Quotient q = minimize(sys);
  if (state_pairs(q.system).size() > kSearchPairLimit) return CheckResult::skip("too many state pairs");
  auto lab = search_labelling(q.system);
  if (!lab) return CheckResult::skip("minimized system has no well-layered labelling");
  SolutionMap phi = canonical_solution(q.system, *lab);
  SolutionMap pulled;
  for (StateId x = 0; x < sys.size(); ++x) pulled.push_back(phi[q.h[x]]);
  if (!check_solution(sys, pulled)) return CheckResult::fail("pulled-back solution is not a solution");
  return CheckResult::pass();
}

CheckResult check_oracle(const System& sys) {
  Partition fast = refine(sys);
  Partition slow = brute_bisim(sys);
  if (fast != slow) {
    std::ostringstream s;
    s << "refine";
    for (auto b : fast) s << ' ' << b;
    s << " vs brute";
    for (auto b : slow) s << ' ' << b;
    return CheckResult::fail(s.str());
  }
  return CheckResult::pass();
}

// ---------------------------------------------------------------------------

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::T: return "T";
    case Axiom::A: return "A";
    case Axiom::D: return "D";
    case Axiom::U: return "U";
    case Axiom::StarDist: return "star-dist";
    case Axiom::Fundamental: return "fundamental";
  }
  return "?";
}

std::vector<Axiom> all_axioms() {
  return {Axiom::T, Axiom::A, Axiom::D, Axiom::U, Axiom::StarDist, Axiom::Fundamental};
}

AxiomInstance random_axiom_instance(Rng& rng, const Theory& th, Axiom axiom, const GenOptions& opt) {
  GenOptions small = opt;
  small.max_size = std::max<std::size_t>(1, opt.max_size / 2);
  auto sub = [&] { return random_expr(rng, th, small); };
  AxiomInstance inst{axiom, {}, {}};
  switch (axiom) {
    case Axiom::T: {
      // t and the reified normal form of t are equal in the theory.
      std::size_t vars = uniform(rng, 1, 3);
      Term<std::size_t> t = random_term(rng, th, vars, uniform(rng, 1, 5));
      Term<std::size_t> s = reify(th, eval_identity(th, t));
      std::vector<Expr> es;
      for (std::size_t i = 0; i < vars; ++i) es.push_back(sub());
      inst.lhs = instantiate(t, [&](std::size_t i) { return es[i]; });
      inst.rhs = instantiate(s, [&](std::size_t i) { return es[i]; });
      break;
    }
    case Axiom::A: {
      Expr e = sub(), f = sub(), g = sub();
      inst.lhs = Expr::seq(e, Expr::seq(f, g));
      inst.rhs = Expr::seq(Expr::seq(e, f), g);
      break;
    }
    case Axiom::D: {
      std::size_t vars = uniform(rng, 1, 3);
      Term<std::size_t> t = random_term(rng, th, vars, uniform(rng, 1, 5));
      std::vector<Expr> es;
      for (std::size_t i = 0; i < vars; ++i) es.push_back(sub());
      Expr f = sub();
      inst.lhs = Expr::seq(instantiate(t, [&](std::size_t i) { return es[i]; }), f);
      inst.rhs = instantiate(t, [&](std::size_t i) { return Expr::seq(es[i], f); });
      break;
    }
    case Axiom::U: {
      Expr e = sub(), f = sub();
      StarTerm s = random_star_term(rng, th, opt.max_term_size);
      Expr star = Expr::star(e, s, f);
      inst.lhs = star;
      inst.rhs = instantiate(s, [&](Slot v) { return v == Slot::U ? Expr::seq(e, star) : f; });
      break;
    }
    case Axiom::StarDist: {
      Expr e = sub(), f = sub(), g = sub();
      StarTerm s = random_star_term(rng, th, opt.max_term_size);
      inst.lhs = Expr::seq(Expr::star(e, s, f), g);
      inst.rhs = Expr::star(e, s, Expr::seq(f, g));
      break;
    }
    case Axiom::Fundamental: {
      Expr e = random_expr(rng, th, opt);
      inst.lhs = e;
      inst.rhs = unfold_expr(th, step(th, e));
      break;
    }
  }
  return inst;
}

CheckResult check_axiom(const Theory& th, const AxiomInstance& inst) {
  if (!decide_equiv(th, inst.lhs, inst.rhs))
    return CheckResult::fail(std::string(axiom_name(inst.axiom)) + ": " + print(inst.lhs) + "  vs  " + print(inst.rhs));
  return CheckResult::pass();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Expr> shrink_candidates(const Expr& e) {
  std::vector<Expr> out;
  for (const auto& k : e.children()) out.push_back(k);
  const auto& kids = e.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    for (const auto& smaller : shrink_candidates(kids[i])) {
      std::vector<Expr> copy = kids;
      copy[i] = smaller;
      switch (e.kind()) {
        case Expr::Kind::Op: out.push_back(Expr::op(e.symbol(), copy)); break;
        case Expr::Kind::Seq: out.push_back(Expr::seq(copy[0], copy[1])); break;
        case Expr::Kind::Star: out.push_back(Expr::star(copy[0], e.star_term(), copy[1])); break;
        case Expr::Kind::Act: break;
      }
    }
  }
  if (e.kind() == Expr::Kind::Star) {
    // Simplify the star parameter to one of its variables.
    for (Slot s : {Slot::U, Slot::V})
      if (!(e.star_term() == StarTerm::variable(s))) out.push_back(Expr::star(e.left(), StarTerm::variable(s), e.right()));
  }
  return out;
}

}  // namespace

Expr shrink_expr(const Expr& e, const std::function<bool(const Expr&)>& fails) {
  Expr cur = e;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& cand : shrink_candidates(cur)) {
      if (cand.size() >= cur.size()) continue;
      bool bad = false;
      try {
        bad = fails(cand);
      } catch (const Error&) {
        bad = true;
      }
      if (bad) {
        cur = cand;
        progress = true;
        break;
      }
    }
  }
  return cur;
}

}  // namespace ustar

// Acceptance runner: one PASS/FAIL line per criterion. All checks are exact;
// the only tolerances are the wall-clock budgets below.

#include "ustar/properties.hpp"
#include "ustar/system_io.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ustar;

namespace {

struct Report {
  bool ok = true;
  std::string detail;
};

// Collects failures; keeps the first few messages.
struct Tally {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  std::vector<std::string> messages;

  void record(const CheckResult& r, const std::string& context) {
    if (r.skipped) {
      ++skipped;
      return;
    }
    ++checked;
    if (!r.ok) fail(context + ": " + r.detail);
  }
  void expect(bool ok, const std::string& context) {
    ++checked;
    if (!ok) fail(context);
  }
  void fail(const std::string& message) {
    ++failed;
    if (messages.size() < 5) messages.push_back(message);
  }
  Report outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << "; " << checked << " checked, " << failed << " failed";
    if (skipped) s << ", " << skipped << " skipped";
    for (const auto& m : messages) s << "\n    " << m;
    return {failed == 0, s.str()};
  }
};

// Theories named by the round-trip criterion.
std::vector<Theory> roundtrip_theories() {
  return {Theory::sl(),  Theory::ga({"p"}), Theory::ga({"p", "q"}), Theory::ca(), Theory::gc({"p"}),
          Theory::smod(SemiringKind::Naturals), Theory::smod(SemiringKind::Booleans)};
}

Expr ex(const Theory& th, const char* text) { return parse_expr(text, th); }

Report step_examples() {
  Theory sl = Theory::sl();
  Tally t;
  auto show = [&](const char* text) { return format_value(sl, step(sl, ex(sl, text)), format_expr_move); };
  const std::pair<const char*, const char*> cases[] = {
      {"a+b", "{(a, ✓), (b, ✓)}"},
      {"(a+b);c", "{(a, c), (b, c)}"},
      {"(a+b)*{u+v}c", "{(a, (a + b) *{u + v} c), (b, (a + b) *{u + v} c), (c, ✓)}"},
  };
  for (const auto& [in, want] : cases) {
    std::string got = show(in);
    t.expect(got == want, std::string(in) + " gave " + got);
  }
  return t.outcome("three step sets");
}

Report example_solution() {
  Theory sl = Theory::sl();
  System chart = load_system(Json::parse(R"({"theory":"sl","states":["x","x'"],"root":"x","beta":{
    "x":[["a","x'"],["b","✓"]],"x'":[["c","x'"],["d","✓"]]}})"));
  Tally t;
  auto lab = search_labelling(chart);
  if (!lab) {
    t.fail("no labelling found");
    return t.outcome("example chart");
  }
  SolutionMap phi = canonical_solution(chart, *lab);
  t.expect(decide_equiv(sl, phi[1], ex(sl, "c *{u+v} d")), "phi(x') = " + print(phi[1]));
  t.expect(decide_equiv(sl, phi[0], ex(sl, "b + a;(c *{u+v} d)")), "phi(x) = " + print(phi[0]));
  return t.outcome("phi(x') = " + print(phi[1]) + ", phi(x) = " + print(phi[0]));
}

Report completeness_roundtrip() {
  Tally t;
  GenOptions opt;
  opt.max_size = 8;
  for (const Theory& th : roundtrip_theories()) {
    Rng rng(3003);
    for (int i = 0; i < 500; ++i) {
      Expr e = random_expr(rng, th, opt);
      t.record(check_roundtrip(th, e), th.selector() + " " + print(e));
    }
  }
  return t.outcome("500 expressions x 7 theories, size <= 8");
}

Report axiom_soundness() {
  Tally t;
  for (const Theory& th : standard_theories()) {
    Rng rng(4004);
    for (Axiom ax : all_axioms())
      for (int i = 0; i < 200; ++i) {
        AxiomInstance inst = random_axiom_instance(rng, th, ax, {});
        t.record(check_axiom(th, inst),
                 th.selector() + " " + axiom_name(ax) + " " + print(inst.lhs) + " = " + print(inst.rhs));
      }
  }
  return t.outcome("200 instances x 6 schemas x 8 theories");
}

Report oracle_equivalence() {
  Tally t;
  for (const Theory& th : standard_theories()) {
    Rng rng(5005);
    for (int i = 0; i < 200; ++i) {
      System sys = random_system(rng, th, 6);
      t.record(check_oracle(sys), th.selector() + " " + export_system(sys).dump());
    }
  }
  return t.outcome("200 systems x 8 theories, <= 6 states");
}

Report split_identity() {
  Tally t;
  for (const Theory& th : standard_theories()) {
    Rng rng(6006);
    for (int i = 0; i < 500; ++i) t.record(check_random_split(rng, th), th.selector());
  }
  return t.outcome("500 values x 8 theories");
}

Report well_layeredness() {
  Tally t;
  for (const Theory& th : standard_theories()) {
    for (const Expr& e : corpus(th)) {
      t.record(check_syntactic_layering(th, e), th.selector() + " syntactic " + print(e));
      t.record(check_search_on_minimized(th, e), th.selector() + " search " + print(e));
    }
    Rng rng(7007);
    for (int i = 0; i < 200; ++i) {
      Expr e = random_expr(rng, th);
      t.record(check_syntactic_layering(th, e), th.selector() + " syntactic " + print(e));
      t.record(check_search_on_minimized(th, e), th.selector() + " search " + print(e));
    }
  }
  return t.outcome("corpus plus 200 random expressions x 8 theories");
}

Report solution_uniqueness() {
  Tally t;
  std::size_t multi = 0;
  auto both = [&](const System& sys, const std::string& context) {
    CheckResult u = check_uniqueness(sys);
    if (!u.skipped) ++multi;
    t.record(u, context + " uniqueness");
    t.record(check_pullback(sys), context + " pullback");
  };
  for (const Theory& th : standard_theories()) {
    Rng rng(8008);
    for (int i = 0; i < 200; ++i) both(random_system(rng, th, 6), th.selector() + " random system");
    for (int i = 0; i < 200; ++i) {
      Expr e = random_expr(rng, th);
      System m = minimize(reachable(th, e)).system;
      if (m.size() <= 6) both(m, th.selector() + " minimized " + print(e));
    }
  }
  return t.outcome(std::to_string(multi) + " systems with several labellings");
}

Report intermediate_lemma() {
  Tally t;
  for (const Theory& th : standard_theories()) {
    for (const Expr& e : corpus(th)) {
      System sys = reachable(th, e);
      t.record(check_intermediate_lemma(sys, syntactic_labelling(sys)), th.selector() + " syntactic " + print(e));
      System m = minimize(sys).system;
      if (state_pairs(m).size() > kSearchPairLimit) continue;
      if (auto lab = search_labelling(m)) t.record(check_intermediate_lemma(m, *lab), th.selector() + " minimized " + print(e));
    }
  }
  return t.outcome("corpus, syntactic and searched labellings");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Report()> run;
  };
  const Criterion criteria[] = {
      {"step examples", 1, step_examples},
      {"example solution", 1, example_solution},
      {"completeness round-trip", 300, completeness_roundtrip},
      {"axiom soundness", 120, axiom_soundness},
      {"oracle equivalence", 120, oracle_equivalence},
      {"split identity", 30, split_identity},
      {"well-layeredness", 300, well_layeredness},
      {"solution uniqueness", 300, solution_uniqueness},
      {"intermediate lemma", 300, intermediate_lemma},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Report o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs <= c.budget_seconds;
    bool ok = o.ok && in_time;
    if (!ok) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.budget_seconds);
    std::cout << (ok ? "PASS" : "FAIL") << " [" << index << "] " << c.name << " (" << timing << "): " << o.detail
              << (in_time ? "" : " (over budget)") << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

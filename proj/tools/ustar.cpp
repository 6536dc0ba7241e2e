// Command-line front end. Exit codes: 0 success, 1 negative verdict or fuzz
// failure, 2 usage/parse/schema errors, 3 search bound exceeded.

#include "ustar/properties.hpp"
#include "ustar/system_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

using namespace ustar;

namespace {

Json read_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("input is not valid JSON");
  return doc;
}

void emit(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

Json system_with_labelling(const System& sys, const Labelling& lab) {
  Json doc = export_system(sys);
  doc["entry"] = export_labelling(sys, lab)["entry"];
  return doc;
}

struct FuzzProperty {
  const char* name;
  CheckResult (*check)(const Theory&, const Expr&);
};

const FuzzProperty kFuzzProperties[] = {
    {"print-parse", check_print_parse},
    {"subsystem", check_subsystem},
    {"substitution", check_substitution_semantics},
    {"syntactic-layering", check_syntactic_layering},
    {"search-on-minimized", [](const Theory& th, const Expr& e) { return check_search_on_minimized(th, e); }},
    {"roundtrip", check_roundtrip},
};

CheckResult guarded(const FuzzProperty& p, const Theory& th, const Expr& e) {
  try {
    return p.check(th, e);
  } catch (const BoundError& err) {
    return CheckResult::skip(err.what());
  } catch (const std::exception& err) {
    return CheckResult::fail(std::string("exception: ") + err.what());
  }
}

int fuzz(const Theory& th, int count, std::size_t size, std::uint64_t seed) {
  Rng rng(seed);
  GenOptions opt;
  opt.max_size = size;
  int passed = 0;
  for (int i = 0; i < count; ++i) {
    Expr e = random_expr(rng, th, opt);
    for (const auto& p : kFuzzProperties) {
      CheckResult r = guarded(p, th, e);
      if (r.ok) continue;
      Expr small = shrink_expr(e, [&](const Expr& f) { return !guarded(p, th, f).ok; });
      std::cout << "FAIL " << p.name << " on case " << i << "\n  original: " << print(e) << "\n  minimal:  " << print(small)
                << "\n  detail:   " << guarded(p, th, small).detail << '\n';
      return 1;
    }
    for (Axiom ax : all_axioms()) {
      AxiomInstance inst = random_axiom_instance(rng, th, ax, opt);
      CheckResult r = check_axiom(th, inst);
      if (r.ok) continue;
      std::cout << "FAIL axiom " << axiom_name(ax) << " on case " << i << ": " << print(inst.lhs) << " = " << print(inst.rhs)
                << '\n';
      return 1;
    }
    ++passed;
  }
  std::cout << passed << " passed (theory " << th.selector() << ", seed " << seed << ", size <= " << size << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skip-free unified-star expressions: semantics, equivalence and solving"};
  app.require_subcommand(1);

  std::string selector;
  auto add_theory = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--theory,-t", selector, "theory selector: sl, ga:tests=p,q, ca, gc:tests=p, smod:nat|bool|rat");
    if (required) opt->required();
  };
  std::string expr_text, other_text, path = "-";
  bool dot = false;

  auto* parse_cmd = app.add_subcommand("parse", "print the syntax tree of an expression");
  add_theory(parse_cmd, true);
  parse_cmd->add_option("expr", expr_text)->required();

  auto* sem_cmd = app.add_subcommand("sem", "print the one-step behaviour of an expression");
  add_theory(sem_cmd, true);
  sem_cmd->add_option("expr", expr_text)->required();

  auto* reach_cmd = app.add_subcommand("reach", "emit the reachable system of an expression");
  add_theory(reach_cmd, true);
  reach_cmd->add_option("expr", expr_text)->required();
  reach_cmd->add_flag("--dot", dot, "emit Graphviz instead of JSON");

  auto* equiv_cmd = app.add_subcommand("equiv", "decide bisimilarity of two expressions");
  equiv_cmd->alias("bisim");
  add_theory(equiv_cmd, true);
  equiv_cmd->add_option("left", expr_text)->required();
  equiv_cmd->add_option("right", other_text)->required();

  auto* min_cmd = app.add_subcommand("minimize", "quotient a system document by bisimilarity");
  min_cmd->add_option("file", path, "system document, - for stdin");

  auto* label_cmd = app.add_subcommand("label", "produce or verify entry/body labellings");
  std::string from_expr;
  bool check = false, search = false;
  add_theory(label_cmd, false);
  auto* from_opt = label_cmd->add_option("--from-expr", from_expr, "syntactic labelling of an expression's system");
  auto* check_opt = label_cmd->add_flag("--check", check, "verify the labelling attached to a document");
  auto* search_opt = label_cmd->add_flag("--search", search, "search a labelling for a document");
  label_cmd->add_option("file", path, "system document, - for stdin");
  from_opt->excludes(check_opt)->excludes(search_opt);
  check_opt->excludes(search_opt);

  auto* solve_cmd = app.add_subcommand("solve", "canonical solution of a labelled system");
  solve_cmd->add_option("file", path, "system document with an entry list (searched if absent), - for stdin");

  auto* rt_cmd = app.add_subcommand("roundtrip", "expression to minimal system and back");
  add_theory(rt_cmd, true);
  rt_cmd->add_option("expr", expr_text)->required();

  auto* fuzz_cmd = app.add_subcommand("fuzz", "run the property suites on seeded random expressions");
  int count = 100;
  std::size_t size = 8;
  std::uint64_t seed = 1;
  add_theory(fuzz_cmd, true);
  fuzz_cmd->add_option("--count", count)->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--size", size)->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Theory th = selector.empty() ? Theory::sl() : Theory::parse(selector);

    if (parse_cmd->parsed()) {
      std::cout << print_ast(parse_expr(expr_text, th)) << '\n';
    } else if (sem_cmd->parsed()) {
      std::cout << format_value(th, step(th, parse_expr(expr_text, th)), format_expr_move) << '\n';
    } else if (reach_cmd->parsed()) {
      System sys = reachable(th, parse_expr(expr_text, th));
      if (dot)
        std::cout << export_dot(sys);
      else
        emit(export_system(sys));
    } else if (equiv_cmd->parsed()) {
      bool same = decide_equiv(th, parse_expr(expr_text, th), parse_expr(other_text, th));
      std::cout << (same ? "equivalent" : "inequivalent") << '\n';
      return same ? 0 : 1;
    } else if (min_cmd->parsed()) {
      System sys = load_system(read_document(path));
      Quotient q = minimize(sys);
      Json doc = export_system(q.system);
      Json h = Json::object();
      for (StateId x = 0; x < sys.size(); ++x) h[sys.names[x]] = q.system.names[q.h[x]];
      doc["h"] = h;
      emit(doc);
    } else if (label_cmd->parsed()) {
      if (!from_expr.empty()) {
        System sys = reachable(th, parse_expr(from_expr, th));
        emit(system_with_labelling(sys, syntactic_labelling(sys)));
      } else if (check) {
        Json doc = read_document(path);
        System sys = load_system(doc);
        Verdict v = check_well_layered(sys, load_labelling(sys, doc));
        if (v.ok()) {
          std::cout << "well-layered\n";
        } else {
          std::cout << "violates condition " << v.condition << ": " << v.witness << '\n';
          return 1;
        }
      } else if (search) {
        System sys = load_system(read_document(path));
        auto lab = search_labelling(sys);
        if (!lab) {
          std::cout << "no well-layered labelling\n";
          return 1;
        }
        emit(system_with_labelling(sys, *lab));
      } else {
        throw Error("label needs one of --from-expr, --check, --search");
      }
    } else if (solve_cmd->parsed()) {
      Json doc = read_document(path);
      System sys = load_system(doc);
      Labelling lab;
      if (doc.contains("entry")) {
        lab = load_labelling(sys, doc);
      } else if (auto found = search_labelling(sys)) {
        lab = *found;
      } else {
        throw Error("system has no well-layered labelling");
      }
      SolutionMap phi = canonical_solution(sys, lab);
      Json out = system_with_labelling(sys, lab);
      Json sol = Json::object();
      for (StateId x = 0; x < sys.size(); ++x) sol[sys.names[x]] = print(phi[x]);
      out["solution"] = sol;
      emit(out);
    } else if (rt_cmd->parsed()) {
      Expr e = parse_expr(expr_text, th);
      Roundtrip r = roundtrip(th, e);
      std::cout << print(r.result) << '\n';
      bool ok = decide_equiv(th, r.result, e);
      std::cout << (ok ? "verified: bisimilar" : "verification failed: not bisimilar") << '\n';
      return ok ? 0 : 1;
    } else if (fuzz_cmd->parsed()) {
      return fuzz(th, count, size, seed);
    }
  } catch (const BoundError& e) {
    std::cerr << "bound exceeded: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.position() << ": " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

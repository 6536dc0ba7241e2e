#pragma once

// Executable forms of the algebraic and semantic laws, shared by the unit
// tests, the acceptance runner and the fuzz command.

#include "ustar/random.hpp"
#include "ustar/solve.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ustar {

struct CheckResult {
  bool ok = true;
  bool skipped = false;  // precondition not met, nothing was checked
  std::string detail;

  static CheckResult pass() { return {}; }
  static CheckResult skip(std::string why) { return {true, true, std::move(why)}; }
  static CheckResult fail(std::string why) { return {false, false, std::move(why)}; }
};

/// The theories exercised by the property suites.
std::vector<Theory> standard_theories();

/// Hand-written expressions for a theory: the worked examples plus nested
/// stars, zero, and every operator the theory offers.
std::vector<Expr> corpus(const Theory& th);

// --- values ---------------------------------------------------------------

/// Random value over Move elements and a random left/right partition;
/// checks s(t1, t2) = m and that t1, t2 mention only their side.
CheckResult check_random_split(Rng& rng, const Theory& th);

// --- expressions ----------------------------------------------------------

CheckResult check_print_parse(const Theory& th, const Expr& e);
// beta of reachable(e) read back through the expressions equals step, and
// the state count is bounded by U(e).
CheckResult check_subsystem(const Theory& th, const Expr& e);
// step via reify + substitution + evaluation equals step via relabelling.
CheckResult check_substitution_semantics(const Theory& th, const Expr& e);
CheckResult check_roundtrip(const Theory& th, const Expr& e);
CheckResult check_syntactic_layering(const Theory& th, const Expr& e);
// Searches a labelling of the minimized system when it has at most
// max_states states and kSearchPairLimit state pairs.
CheckResult check_search_on_minimized(const Theory& th, const Expr& e, std::size_t max_states = 8);

// --- labelled systems -----------------------------------------------------

// phi(y) is equivalent to tau(y, x) ; phi(x) whenever x loops around y.
CheckResult check_intermediate_lemma(const System& sys, const Labelling& lab);
CheckResult check_solutionhood(const System& sys, const Labelling& lab);
// All labellings found by search give pointwise equivalent solutions;
// skipped when fewer than two exist.
CheckResult check_uniqueness(const System& sys, std::size_t max_labellings = 6);
// A solution of the minimized system pulled back along h solves sys.
CheckResult check_pullback(const System& sys);

// --- systems --------------------------------------------------------------

CheckResult check_oracle(const System& sys);

// --- axioms ---------------------------------------------------------------

enum class Axiom { T, A, D, U, StarDist, Fundamental };
const char* axiom_name(Axiom a);
std::vector<Axiom> all_axioms();

struct AxiomInstance {
  Axiom axiom;
  Expr lhs;
  Expr rhs;
};

AxiomInstance random_axiom_instance(Rng& rng, const Theory& th, Axiom axiom, const GenOptions& opt);
CheckResult check_axiom(const Theory& th, const AxiomInstance& inst);

// --- shrinking ------------------------------------------------------------

/// Greedily replaces e by smaller failing variants: a child in place of its
/// parent, or a node with one child shrunk.
Expr shrink_expr(const Expr& e, const std::function<bool(const Expr&)>& fails);

}  // namespace ustar

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ustar {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "m", "m/n" with optional leading '-'; the result is reduced.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class TheoryMismatch : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

// Raised when an input exceeds a documented search bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

enum class TheoryKind { SL, GA, CA, GC, SMOD };
enum class SemiringKind { Naturals, Booleans, Rationals };

/// Operation table of a commutative-in-addition unital semiring whose
/// carrier is embedded in the nonnegative rationals.
struct Semiring {
  SemiringKind kind = SemiringKind::Naturals;

  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational add(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  bool contains(const Rational& a) const;
  std::string name() const;
};

/// A branching theory: signature, free-algebra normal forms and atoms.
class Theory {
 public:
  Theory() = default;

  static Theory sl();
  static Theory ga(std::vector<std::string> tests);
  static Theory ca();
  static Theory gc(std::vector<std::string> tests);
  static Theory smod(SemiringKind semiring);

  // Selector syntax: sl | ga:tests=p,q | ca | gc:tests=p,q | smod:nat|bool|rat
  static Theory parse(std::string_view selector);
  std::string selector() const;

  TheoryKind kind() const { return kind_; }
  const std::vector<std::string>& tests() const { return tests_; }
  const Semiring& semiring() const { return semiring_; }

  bool guarded() const { return kind_ == TheoryKind::GA || kind_ == TheoryKind::GC; }
  bool probabilistic() const { return kind_ == TheoryKind::CA || kind_ == TheoryKind::GC; }

  // Total truth assignments; 1 for theories without tests.
  std::size_t atom_count() const { return std::size_t{1} << tests_.size(); }
  // Test i is bit (n-1-i) of the atom index, so bitstrings sort like indices.
  bool test_holds(std::size_t atom, std::size_t test) const;
  std::string atom_bits(std::size_t atom) const;
  std::optional<std::size_t> atom_from_bits(std::string_view bits) const;
  std::optional<std::size_t> test_index(std::string_view name) const;

  friend bool operator==(const Theory& a, const Theory& b) {
    return a.kind_ == b.kind_ && a.tests_ == b.tests_ && a.semiring_.kind == b.semiring_.kind;
  }

 private:
  TheoryKind kind_ = TheoryKind::SL;
  std::vector<std::string> tests_;
  Semiring semiring_;
};

void require_same_theory(const Theory& a, const Theory& b);

using AtomSet = std::vector<bool>;

/// Boolean expression over primitive tests; compared by its atoms.
class BExpr {
 public:
  enum class Kind { True, False, Test, Not, And, Or };

  static BExpr truth();
  static BExpr falsity();
  static BExpr test(std::string name, std::size_t index);
  static BExpr negate(BExpr b);
  static BExpr conj(BExpr a, BExpr b);
  static BExpr disj(BExpr a, BExpr b);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  std::size_t index() const { return node_->index; }
  const BExpr& lhs() const { return node_->kids.at(0); }
  const BExpr& rhs() const { return node_->kids.at(1); }

  bool holds(const Theory& th, std::size_t atom) const;
  AtomSet atoms(const Theory& th) const;

 private:
  struct Node {
    Kind kind = Kind::True;
    std::string name;
    std::size_t index = 0;
    std::vector<BExpr> kids;
  };
  explicit BExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string print_bexpr(const BExpr& b);

// Conjunction of literals describing one atom.
BExpr atom_bexpr(const Theory& th, std::size_t atom);
// Disjunction of atoms; `true`/`false` for the full/empty set.
BExpr atoms_bexpr(const Theory& th, const AtomSet& atoms);

struct Guard {
  BExpr expr = BExpr::truth();
  AtomSet atoms;
};

Guard make_guard(const Theory& th, BExpr b);
Guard atoms_guard(const Theory& th, const AtomSet& atoms);

/// Operation symbol of one of the supported signatures.
///   Zero  : 0            (all theories)
///   Join  : +            (SL)
///   Guard : +_b          (GA, GC)
///   Prob  : (+ p)        (CA, GC)
///   Sum   : (+)          (SMOD)
///   Scale : p . (-)      (SMOD)
class Symbol {
 public:
  enum class Kind { Zero, Join, Guard, Prob, Sum, Scale };

  Symbol() = default;
  static Symbol zero() { return Symbol(Kind::Zero); }
  static Symbol join() { return Symbol(Kind::Join); }
  static Symbol guard(Guard g);
  static Symbol prob(Rational p);
  static Symbol sum() { return Symbol(Kind::Sum); }
  static Symbol scale(Rational w);

  Kind kind() const { return kind_; }
  std::size_t arity() const;
  const Guard& guard() const { return guard_; }
  const Rational& value() const { return value_; }

  friend int compare(const Symbol& a, const Symbol& b);
  friend bool operator==(const Symbol& a, const Symbol& b) { return compare(a, b) == 0; }
  friend bool operator<(const Symbol& a, const Symbol& b) { return compare(a, b) < 0; }

 private:
  explicit Symbol(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Zero;
  Guard guard_;
  Rational value_;
};

bool in_signature(const Theory& th, const Symbol& sym);
void require_in_signature(const Theory& th, const Symbol& sym);

/// An S-term: variable or operation applied to subterms.
template <class V>
struct Term {
  std::optional<V> var;
  Symbol sym;
  std::vector<Term> args;

  static Term variable(V v) {
    Term t;
    t.var = std::move(v);
    return t;
  }
  static Term apply(Symbol s, std::vector<Term> kids = {}) {
    Term t;
    t.sym = std::move(s);
    t.args = std::move(kids);
    return t;
  }

  bool is_var() const { return var.has_value(); }

  void collect_variables(std::set<V>& out) const {
    if (var) {
      out.insert(*var);
      return;
    }
    for (const auto& a : args) a.collect_variables(out);
  }
  std::set<V> variables() const {
    std::set<V> out;
    collect_variables(out);
    return out;
  }

  template <class F>
  auto rename(F&& f) const -> Term<std::decay_t<decltype(f(std::declval<const V&>()))>> {
    using W = std::decay_t<decltype(f(std::declval<const V&>()))>;
    if (var) return Term<W>::variable(f(*var));
    std::vector<Term<W>> kids;
    kids.reserve(args.size());
    for (const auto& a : args) kids.push_back(a.rename(f));
    return Term<W>::apply(sym, std::move(kids));
  }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : args) n += a.size();
    return n;
  }
};

template <class V>
int compare(const Term<V>& a, const Term<V>& b) {
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) {
    if (*a.var < *b.var) return -1;
    if (*b.var < *a.var) return 1;
    return 0;
  }
  if (int c = compare(a.sym, b.sym)) return c;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(a.args[i], b.args[i])) return c;
  return 0;
}

template <class V>
bool operator==(const Term<V>& a, const Term<V>& b) {
  return compare(a, b) == 0;
}

template <class V>
void check_term(const Theory& th, const Term<V>& t) {
  if (t.is_var()) return;
  require_in_signature(th, t.sym);
  if (t.args.size() != t.sym.arity()) throw TheoryMismatch("arity mismatch in term");
  for (const auto& a : t.args) check_term(th, a);
}

/// The two variables a star parameter s(u, v) may mention.
enum class Slot { U, V };

using StarTerm = Term<Slot>;

}  // namespace ustar

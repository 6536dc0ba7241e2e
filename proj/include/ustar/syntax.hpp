#pragma once

#include "ustar/theory.hpp"

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ustar {

/// Skip-free unified-star expression. Immutable; copies share structure.
class Expr {
 public:
  enum class Kind { Act, Op, Seq, Star };

  Expr() = default;  // the constant 0

  static Expr act(std::string name);
  static Expr op(Symbol sym, std::vector<Expr> kids = {});
  static Expr zero() { return op(Symbol::zero()); }
  static Expr seq(Expr left, Expr right);
  static Expr star(Expr body, StarTerm s, Expr exit);

  Kind kind() const { return node().kind; }
  const std::string& action() const { return node().action; }
  const Symbol& symbol() const { return node().sym; }
  const StarTerm& star_term() const { return node().term; }
  // Op: operands; Seq: {left, right}; Star: {body, exit}.
  const std::vector<Expr>& children() const { return node().kids; }
  const Expr& left() const { return node().kids.at(0); }
  const Expr& right() const { return node().kids.at(1); }

  bool is_zero() const { return kind() == Kind::Op && symbol().kind() == Symbol::Kind::Zero; }

  std::size_t size() const { return node().size; }
  std::size_t hash() const { return node().hash; }

  friend int compare(const Expr& a, const Expr& b);
  friend bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }
  friend bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

 private:
  struct Node {
    Kind kind = Kind::Op;
    std::string action;
    Symbol sym;
    StarTerm term;
    std::vector<Expr> kids;
    std::size_t size = 1;
    std::size_t hash = 0;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Node n);
  const Node& node() const;

  std::shared_ptr<const Node> node_;
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

/// Checks every operator against the theory signature; throws TheoryMismatch.
void check_expr(const Theory& th, const Expr& e);

Expr parse_expr(std::string_view text, const Theory& th);
StarTerm parse_star_term(std::string_view text, const Theory& th);

std::string print(const Expr& e);
std::string print_star_term(const StarTerm& s);
// Prints a term whose variables are rendered by `var`.
template <class V, class F>
std::string print_term(const Term<V>& t, F&& var);

// Indented tree rendering of the abstract syntax.
std::string print_ast(const Expr& e);

std::size_t star_height(const Expr& e);
std::set<Expr> compute_U(const Expr& e);

bool is_action_name(std::string_view s);

namespace detail {
std::string symbol_infix(const Symbol& s);
std::string print_term_impl(const Term<std::string>& t, bool top);
}  // namespace detail

template <class V, class F>
std::string print_term(const Term<V>& t, F&& var) {
  return detail::print_term_impl(t.rename([&](const V& v) { return std::string(var(v)); }), true);
}

}  // namespace ustar

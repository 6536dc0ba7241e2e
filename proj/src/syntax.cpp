#include "ustar/syntax.hpp"

#include <boost/functional/hash.hpp>

#include <cctype>
#include <functional>
#include <sstream>

namespace ustar {

namespace {

std::size_t symbol_hash(const Symbol& s) {
  std::size_t h = static_cast<std::size_t>(s.kind());
  switch (s.kind()) {
    case Symbol::Kind::Guard:
      for (bool b : s.guard().atoms) boost::hash_combine(h, b);
      break;
    case Symbol::Kind::Prob:
    case Symbol::Kind::Scale:
      boost::hash_combine(h, s.value().str());
      break;
    default:
      break;
  }
  return h;
}

std::size_t term_hash(const StarTerm& t) {
  if (t.is_var()) return *t.var == Slot::U ? 0x75 : 0x76;
  std::size_t h = symbol_hash(t.sym);
  for (const auto& a : t.args) boost::hash_combine(h, term_hash(a));
  return h;
}

const Expr& zero_singleton() {
  static const Expr z = Expr::op(Symbol::zero());
  return z;
}

}  // namespace

Expr Expr::make(Node n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x9e3779b9u;
  std::size_t size = 1;
  switch (n.kind) {
    case Kind::Act: boost::hash_combine(h, n.action); break;
    case Kind::Op: boost::hash_combine(h, symbol_hash(n.sym)); break;
    case Kind::Star:
      boost::hash_combine(h, term_hash(n.term));
      size += n.term.size();
      break;
    case Kind::Seq: break;
  }
  for (const auto& k : n.kids) {
    boost::hash_combine(h, k.hash());
    size += k.size();
  }
  n.hash = h;
  n.size = size;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

const Expr::Node& Expr::node() const {
  if (!node_) return *zero_singleton().node_;
  return *node_;
}

Expr Expr::act(std::string name) {
  Node n;
  n.kind = Kind::Act;
  n.action = std::move(name);
  return make(std::move(n));
}

Expr Expr::op(Symbol sym, std::vector<Expr> kids) {
  if (kids.size() != sym.arity()) throw TheoryMismatch("arity mismatch");
  Node n;
  n.kind = Kind::Op;
  n.sym = std::move(sym);
  n.kids = std::move(kids);
  return make(std::move(n));
}

Expr Expr::seq(Expr left, Expr right) {
  Node n;
  n.kind = Kind::Seq;
  n.kids = {std::move(left), std::move(right)};
  return make(std::move(n));
}

Expr Expr::star(Expr body, StarTerm s, Expr exit) {
  Node n;
  n.kind = Kind::Star;
  n.term = std::move(s);
  n.kids = {std::move(body), std::move(exit)};
  return make(std::move(n));
}

int compare(const Expr& a, const Expr& b) {
  const Expr::Node& x = a.node();
  const Expr::Node& y = b.node();
  if (&x == &y) return 0;
  if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
  switch (x.kind) {
    case Expr::Kind::Act:
      if (int c = x.action.compare(y.action)) return c < 0 ? -1 : 1;
      return 0;
    case Expr::Kind::Op:
      if (int c = compare(x.sym, y.sym)) return c;
      break;
    case Expr::Kind::Star:
      if (int c = compare(x.term, y.term)) return c;
      break;
    case Expr::Kind::Seq: break;
  }
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (int c = compare(x.kids[i], y.kids[i])) return c;
  return 0;
}

void check_expr(const Theory& th, const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Act: return;
    case Expr::Kind::Op: require_in_signature(th, e.symbol()); break;
    case Expr::Kind::Star:
      check_term(th, e.star_term());
      break;
    case Expr::Kind::Seq: break;
  }
  for (const auto& k : e.children()) check_expr(th, k);
}

bool is_action_name(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (unsigned char c : s)
    if (!(std::islower(c) || std::isdigit(c) || c == '_')) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

template <class T>
T build(Symbol sym, std::vector<T> kids);

template <>
Expr build<Expr>(Symbol sym, std::vector<Expr> kids) {
  return Expr::op(std::move(sym), std::move(kids));
}

template <>
StarTerm build<StarTerm>(Symbol sym, std::vector<StarTerm> kids) {
  return StarTerm::apply(std::move(sym), std::move(kids));
}

class Parser {
 public:
  Parser(std::string_view text, const Theory& th) : text_(text), th_(th) {}

  Expr expression() {
    Expr e = branch<Expr>([this] { return expr_operand(); });
    finish();
    return e;
  }

  StarTerm term_only() {
    StarTerm t = star_term();
    finish();
    return t;
  }

 private:
  std::string_view text_;
  const Theory& th_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  void finish() {
    if (peek() != '\0') fail("unexpected input");
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_]))) fail("expected identifier");
    while (pos_ < text_.size()) {
      unsigned char c = text_[pos_];
      if (!(std::islower(c) || std::isdigit(c) || c == '_')) break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_number() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c));
  }

  std::string number_text() {
    skip();
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (s == pos_) fail("expected digits");
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      digits();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational rational() {
    std::size_t at = (skip(), pos_);
    try {
      return parse_rational(number_text());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail_at(e.what(), at);
    }
  }

  // An infix branching operator at the current position, if any.
  std::optional<Symbol> infix() {
    skip();
    std::size_t save = pos_;
    std::size_t at = pos_;
    if (eat("+[")) {
      BExpr b = bexpr_or();
      expect("]");
      return checked(Symbol::guard(make_guard(th_, std::move(b))), at);
    }
    if (eat("(")) {
      if (!eat("+")) {
        pos_ = save;
        return std::nullopt;
      }
      if (eat(")")) return checked(Symbol::sum(), at);
      Rational p = rational();
      expect(")");
      if (p < 0 || p > 1) fail_at("probability outside [0,1]", at);
      return checked(Symbol::prob(std::move(p)), at);
    }
    if (eat("+")) return checked(Symbol::join(), at);
    return std::nullopt;
  }

  Symbol checked(Symbol s, std::size_t at) {
    if (!in_signature(th_, s)) fail_at("operator not available in theory " + th_.selector(), at);
    return s;
  }

  template <class T, class Operand>
  T branch(Operand&& operand) {
    T first = operand();
    std::size_t at = (skip(), pos_);
    std::optional<Symbol> op = infix();
    if (!op) return first;
    std::vector<T> items{std::move(first)};
    items.push_back(operand());
    while (true) {
      at = (skip(), pos_);
      std::optional<Symbol> next = infix();
      if (!next) break;
      if (!(*next == *op)) fail_at("mixed branching operators need parentheses", at);
      items.push_back(operand());
    }
    T acc = std::move(items.back());
    for (std::size_t i = items.size() - 1; i-- > 0;) acc = build<T>(*op, {std::move(items[i]), std::move(acc)});
    return acc;
  }

  // operand := weight '.' operand | seq   (and the constant 0)
  template <class T, class Rest>
  std::optional<T> weighted(Rest&& rest) {
    if (!at_number()) return std::nullopt;
    std::size_t at = pos_;
    std::string num = number_text();
    if (eat(".")) {
      Symbol s = checked(Symbol::scale(parse_rational(num)), at);
      return build<T>(std::move(s), {rest()});
    }
    if (num != "0") fail_at("expected '.' after weight", at);
    pos_ = at;
    return std::nullopt;
  }

  Expr expr_operand() {
    if (auto w = weighted<Expr>([this] { return expr_operand(); })) return *w;
    return seq();
  }

  Expr seq() {
    Expr first = star();
    if (eat(";")) return Expr::seq(std::move(first), seq());
    return first;
  }

  Expr star() {
    Expr body = primary();
    if (eat("*{")) {
      StarTerm s = star_term();
      expect("}");
      return Expr::star(std::move(body), std::move(s), star());
    }
    return body;
  }

  Expr primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = branch<Expr>([this] { return expr_operand(); });
      expect(")");
      return e;
    }
    if (c == '0') {
      std::size_t at = pos_;
      ++pos_;
      if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
        fail_at("expected expression", at);
      return Expr::zero();
    }
    if (std::islower(static_cast<unsigned char>(c))) return Expr::act(identifier());
    if (c == '\0') fail("unexpected end of input");
    fail("expected expression");
  }

  StarTerm star_term() { return branch<StarTerm>([this] { return term_operand(); }); }

  StarTerm term_operand() {
    if (auto w = weighted<StarTerm>([this] { return term_operand(); })) return *w;
    char c = peek();
    if (c == '(') {
      ++pos_;
      StarTerm t = star_term();
      expect(")");
      return t;
    }
    if (c == '0') {
      ++pos_;
      return StarTerm::apply(Symbol::zero());
    }
    std::size_t at = pos_;
    std::string id = identifier();
    if (id == "u") return StarTerm::variable(Slot::U);
    if (id == "v") return StarTerm::variable(Slot::V);
    fail_at("star parameter may only mention u and v", at);
  }

  BExpr bexpr_or() {
    BExpr b = bexpr_and();
    if (eat("|")) return BExpr::disj(std::move(b), bexpr_or());
    return b;
  }

  BExpr bexpr_and() {
    BExpr b = bexpr_not();
    if (eat("&")) return BExpr::conj(std::move(b), bexpr_and());
    return b;
  }

  BExpr bexpr_not() {
    if (eat("!")) return BExpr::negate(bexpr_not());
    if (eat("(")) {
      BExpr b = bexpr_or();
      expect(")");
      return b;
    }
    std::size_t at = (skip(), pos_);
    std::string id = identifier();
    if (id == "true") return BExpr::truth();
    if (id == "false") return BExpr::falsity();
    auto idx = th_.test_index(id);
    if (!idx) fail_at("unknown test '" + id + "'", at);
    return BExpr::test(id, *idx);
  }
};

}  // namespace

Expr parse_expr(std::string_view text, const Theory& th) { return Parser(text, th).expression(); }

StarTerm parse_star_term(std::string_view text, const Theory& th) { return Parser(text, th).term_only(); }

// ---------------------------------------------------------------------------
// Printing

namespace detail {

std::string symbol_infix(const Symbol& s) {
  switch (s.kind()) {
    case Symbol::Kind::Join: return "+";
    case Symbol::Kind::Guard: return "+[" + print_bexpr(s.guard().expr) + "]";
    case Symbol::Kind::Prob: return "(+" + format_rational(s.value()) + ")";
    case Symbol::Kind::Sum: return "(+)";
    default: return "?";
  }
}

std::string print_term_impl(const Term<std::string>& t, bool top) {
  (void)top;
  if (t.is_var()) return *t.var;
  switch (t.sym.kind()) {
    case Symbol::Kind::Zero: return "0";
    case Symbol::Kind::Scale: {
      const auto& k = t.args[0];
      bool paren = !k.is_var() && k.sym.arity() == 2;
      std::string inner = print_term_impl(k, false);
      return format_rational(t.sym.value()) + " . " + (paren ? "(" + inner + ")" : inner);
    }
    default: {
      const auto& l = t.args[0];
      const auto& r = t.args[1];
      bool lparen = !l.is_var() && l.sym.arity() == 2;
      bool rparen = !r.is_var() && r.sym.arity() == 2 && !(r.sym == t.sym);
      std::string ls = print_term_impl(l, false);
      std::string rs = print_term_impl(r, false);
      return (lparen ? "(" + ls + ")" : ls) + " " + symbol_infix(t.sym) + " " + (rparen ? "(" + rs + ")" : rs);
    }
  }
}

}  // namespace detail

namespace {

bool is_binary_op(const Expr& e) { return e.kind() == Expr::Kind::Op && e.symbol().arity() == 2; }
bool is_primary(const Expr& e) { return e.kind() == Expr::Kind::Act || (e.kind() == Expr::Kind::Op && e.symbol().arity() == 0); }

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string print_at(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Act: return e.action();
    case Expr::Kind::Op: {
      const Symbol& s = e.symbol();
      if (s.kind() == Symbol::Kind::Zero) return "0";
      if (s.kind() == Symbol::Kind::Scale) {
        const Expr& k = e.left();
        std::string inner = print_at(k);
        return format_rational(s.value()) + " . " + (is_binary_op(k) ? paren(inner) : inner);
      }
      const Expr& l = e.left();
      const Expr& r = e.right();
      std::string ls = print_at(l);
      std::string rs = print_at(r);
      if (is_binary_op(l)) ls = paren(ls);
      if (is_binary_op(r) && !(r.symbol() == s)) rs = paren(rs);
      return ls + " " + detail::symbol_infix(s) + " " + rs;
    }
    case Expr::Kind::Seq: {
      const Expr& l = e.left();
      const Expr& r = e.right();
      std::string ls = print_at(l);
      std::string rs = print_at(r);
      if (!(is_primary(l) || l.kind() == Expr::Kind::Star)) ls = paren(ls);
      if (r.kind() == Expr::Kind::Op && !is_primary(r)) rs = paren(rs);
      return ls + " ; " + rs;
    }
    case Expr::Kind::Star: {
      const Expr& body = e.left();
      const Expr& exit = e.right();
      std::string bs = print_at(body);
      std::string xs = print_at(exit);
      if (!is_primary(body)) bs = paren(bs);
      if (!(is_primary(exit) || exit.kind() == Expr::Kind::Star)) xs = paren(xs);
      return bs + " *{" + print_star_term(e.star_term()) + "} " + xs;
    }
  }
  return "";
}

void ast_lines(const Expr& e, int depth, std::ostringstream& out) {
  out << std::string(2 * depth, ' ');
  switch (e.kind()) {
    case Expr::Kind::Act: out << "Act " << e.action() << '\n'; return;
    case Expr::Kind::Op:
      if (e.symbol().kind() == Symbol::Kind::Zero)
        out << "Op 0\n";
      else if (e.symbol().kind() == Symbol::Kind::Scale)
        out << "Op " << format_rational(e.symbol().value()) << " .\n";
      else
        out << "Op " << detail::symbol_infix(e.symbol()) << '\n';
      break;
    case Expr::Kind::Seq: out << "Seq\n"; break;
    case Expr::Kind::Star: out << "Star {" << print_star_term(e.star_term()) << "}\n"; break;
  }
  for (const auto& k : e.children()) ast_lines(k, depth + 1, out);
}

}  // namespace

std::string print(const Expr& e) { return print_at(e); }

std::string print_star_term(const StarTerm& s) {
  return print_term(s, [](Slot v) { return v == Slot::U ? "u" : "v"; });
}

std::string print_ast(const Expr& e) {
  std::ostringstream out;
  ast_lines(e, 0, out);
  return out.str();
}

// ---------------------------------------------------------------------------

std::size_t star_height(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Act: return 0;
    case Expr::Kind::Star: return std::max(star_height(e.left()) + 1, star_height(e.right()));
    default: {
      std::size_t h = 0;
      for (const auto& k : e.children()) h = std::max(h, star_height(k));
      return h;
    }
  }
}

std::set<Expr> compute_U(const Expr& e) {
  std::set<Expr> out;
  switch (e.kind()) {
    case Expr::Kind::Act: out.insert(e); break;
    case Expr::Kind::Op:
      out.insert(e);
      for (const auto& k : e.children()) out.merge(compute_U(k));
      break;
    case Expr::Kind::Seq:
      for (const auto& f : compute_U(e.left())) out.insert(Expr::seq(f, e.right()));
      out.merge(compute_U(e.right()));
      break;
    case Expr::Kind::Star:
      out.insert(e);
      for (const auto& f : compute_U(e.left())) out.insert(Expr::seq(f, e));
      out.merge(compute_U(e.right()));
      break;
  }
  return out;
}

}  // namespace ustar

#include "ustar/theory.hpp"

#include <algorithm>
#include <cctype>

namespace ustar {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    out.emplace_back(s.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool valid_test_name(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  if (s == "true" || s == "false") return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c) || c == '_';
  });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text[0] == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw Error("malformed rational '" + std::string(text) + "'");
  boost::multiprecision::cpp_int n(std::string{num});
  boost::multiprecision::cpp_int d(std::string{den});
  if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& r) { return r.str(); }

Rational Semiring::add(const Rational& a, const Rational& b) const {
  if (kind == SemiringKind::Booleans) return (a != 0 || b != 0) ? 1 : 0;
  return a + b;
}

Rational Semiring::mul(const Rational& a, const Rational& b) const {
  if (kind == SemiringKind::Booleans) return (a != 0 && b != 0) ? 1 : 0;
  return a * b;
}

bool Semiring::contains(const Rational& a) const {
  switch (kind) {
    case SemiringKind::Naturals:
      return a >= 0 && boost::multiprecision::denominator(a) == 1;
    case SemiringKind::Booleans:
      return a == 0 || a == 1;
    case SemiringKind::Rationals:
      return a >= 0;
  }
  return false;
}

std::string Semiring::name() const {
  switch (kind) {
    case SemiringKind::Naturals: return "nat";
    case SemiringKind::Booleans: return "bool";
    case SemiringKind::Rationals: return "rat";
  }
  return "?";
}

Theory Theory::sl() { return Theory{}; }

Theory Theory::ga(std::vector<std::string> tests) {
  Theory t;
  t.kind_ = TheoryKind::GA;
  t.tests_ = std::move(tests);
  return t;
}

Theory Theory::ca() {
  Theory t;
  t.kind_ = TheoryKind::CA;
  return t;
}

Theory Theory::gc(std::vector<std::string> tests) {
  Theory t;
  t.kind_ = TheoryKind::GC;
  t.tests_ = std::move(tests);
  return t;
}

Theory Theory::smod(SemiringKind semiring) {
  Theory t;
  t.kind_ = TheoryKind::SMOD;
  t.semiring_.kind = semiring;
  return t;
}

Theory Theory::parse(std::string_view selector) {
  auto colon = selector.find(':');
  std::string_view head = selector.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : selector.substr(colon + 1);
  auto bad = [&](const std::string& why) {
    return Error("bad theory selector '" + std::string(selector) + "': " + why);
  };

  if (head == "sl" || head == "ca") {
    if (colon != std::string_view::npos) throw bad("takes no parameters");
    return head == "sl" ? sl() : ca();
  }
  if (head == "ga" || head == "gc") {
    std::vector<std::string> tests;
    if (colon != std::string_view::npos) {
      if (rest.substr(0, 6) != "tests=") throw bad("expected tests=...");
      tests = split_list(rest.substr(6));
    }
    std::set<std::string> seen;
    for (const auto& t : tests) {
      if (!valid_test_name(t)) throw bad("invalid test name '" + t + "'");
      if (!seen.insert(t).second) throw bad("duplicate test '" + t + "'");
    }
    if (tests.size() > 16) throw bad("at most 16 tests are supported");
    return head == "ga" ? ga(std::move(tests)) : gc(std::move(tests));
  }
  if (head == "smod") {
    if (rest == "nat") return smod(SemiringKind::Naturals);
    if (rest == "bool") return smod(SemiringKind::Booleans);
    if (rest == "rat") return smod(SemiringKind::Rationals);
    throw bad("expected smod:nat, smod:bool or smod:rat");
  }
  throw bad("unknown theory");
}

std::string Theory::selector() const {
  auto with_tests = [this](const char* head) {
    std::string s = head;
    if (tests_.empty()) return s;
    s += ":tests=";
    for (std::size_t i = 0; i < tests_.size(); ++i) {
      if (i) s += ',';
      s += tests_[i];
    }
    return s;
  };
  switch (kind_) {
    case TheoryKind::SL: return "sl";
    case TheoryKind::GA: return with_tests("ga");
    case TheoryKind::CA: return "ca";
    case TheoryKind::GC: return with_tests("gc");
    case TheoryKind::SMOD: return "smod:" + semiring_.name();
  }
  return "?";
}

bool Theory::test_holds(std::size_t atom, std::size_t test) const {
  return (atom >> (tests_.size() - 1 - test)) & 1U;
}

std::string Theory::atom_bits(std::size_t atom) const {
  std::string s(tests_.size(), '0');
  for (std::size_t i = 0; i < tests_.size(); ++i)
    if (test_holds(atom, i)) s[i] = '1';
  return s;
}

std::optional<std::size_t> Theory::atom_from_bits(std::string_view bits) const {
  if (bits.size() != tests_.size()) return std::nullopt;
  std::size_t atom = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') return std::nullopt;
    atom = (atom << 1) | static_cast<std::size_t>(c == '1');
  }
  return atom;
}

std::optional<std::size_t> Theory::test_index(std::string_view name) const {
  for (std::size_t i = 0; i < tests_.size(); ++i)
    if (tests_[i] == name) return i;
  return std::nullopt;
}

void require_same_theory(const Theory& a, const Theory& b) {
  if (!(a == b)) throw TheoryMismatch("theory mismatch: " + a.selector() + " vs " + b.selector());
}

BExpr BExpr::truth() {
  static const BExpr t(std::make_shared<Node>(Node{Kind::True, {}, 0, {}}));
  return t;
}

BExpr BExpr::falsity() {
  static const BExpr f(std::make_shared<Node>(Node{Kind::False, {}, 0, {}}));
  return f;
}

BExpr BExpr::test(std::string name, std::size_t index) {
  return BExpr(std::make_shared<Node>(Node{Kind::Test, std::move(name), index, {}}));
}

BExpr BExpr::negate(BExpr b) {
  return BExpr(std::make_shared<Node>(Node{Kind::Not, {}, 0, {std::move(b)}}));
}

BExpr BExpr::conj(BExpr a, BExpr b) {
  return BExpr(std::make_shared<Node>(Node{Kind::And, {}, 0, {std::move(a), std::move(b)}}));
}

BExpr BExpr::disj(BExpr a, BExpr b) {
  return BExpr(std::make_shared<Node>(Node{Kind::Or, {}, 0, {std::move(a), std::move(b)}}));
}

bool BExpr::holds(const Theory& th, std::size_t atom) const {
  switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Test: return th.test_holds(atom, index());
    case Kind::Not: return !lhs().holds(th, atom);
    case Kind::And: return lhs().holds(th, atom) && rhs().holds(th, atom);
    case Kind::Or: return lhs().holds(th, atom) || rhs().holds(th, atom);
  }
  return false;
}

AtomSet BExpr::atoms(const Theory& th) const {
  AtomSet out(th.atom_count());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = holds(th, a);
  return out;
}

namespace {

// 0: or, 1: and, 2: not/atomic
int bexpr_level(const BExpr& b) {
  switch (b.kind()) {
    case BExpr::Kind::Or: return 0;
    case BExpr::Kind::And: return 1;
    default: return 2;
  }
}

std::string print_bexpr_at(const BExpr& b, int min_level) {
  std::string s;
  switch (b.kind()) {
    case BExpr::Kind::True: s = "true"; break;
    case BExpr::Kind::False: s = "false"; break;
    case BExpr::Kind::Test: s = b.name(); break;
    case BExpr::Kind::Not: s = "!" + print_bexpr_at(b.lhs(), 2); break;
    case BExpr::Kind::And: s = print_bexpr_at(b.lhs(), 2) + " & " + print_bexpr_at(b.rhs(), 1); break;
    case BExpr::Kind::Or: s = print_bexpr_at(b.lhs(), 1) + " | " + print_bexpr_at(b.rhs(), 0); break;
  }
  return bexpr_level(b) < min_level ? "(" + s + ")" : s;
}

}  // namespace

std::string print_bexpr(const BExpr& b) { return print_bexpr_at(b, 0); }

BExpr atom_bexpr(const Theory& th, std::size_t atom) {
  const auto& tests = th.tests();
  if (tests.empty()) return BExpr::truth();
  std::optional<BExpr> acc;
  for (std::size_t i = tests.size(); i-- > 0;) {
    BExpr lit = BExpr::test(tests[i], i);
    if (!th.test_holds(atom, i)) lit = BExpr::negate(lit);
    acc = acc ? BExpr::conj(lit, *acc) : lit;
  }
  return *acc;
}

BExpr atoms_bexpr(const Theory& th, const AtomSet& atoms) {
  if (std::all_of(atoms.begin(), atoms.end(), [](bool b) { return b; })) return BExpr::truth();
  std::optional<BExpr> acc;
  for (std::size_t a = atoms.size(); a-- > 0;) {
    if (!atoms[a]) continue;
    BExpr lit = atom_bexpr(th, a);
    acc = acc ? BExpr::disj(lit, *acc) : lit;
  }
  return acc ? *acc : BExpr::falsity();
}

Guard make_guard(const Theory& th, BExpr b) {
  Guard g;
  g.atoms = b.atoms(th);
  g.expr = std::move(b);
  return g;
}

Guard atoms_guard(const Theory& th, const AtomSet& atoms) {
  Guard g;
  g.expr = atoms_bexpr(th, atoms);
  g.atoms = atoms;
  return g;
}

Symbol Symbol::guard(Guard g) {
  Symbol s(Kind::Guard);
  s.guard_ = std::move(g);
  return s;
}

Symbol Symbol::prob(Rational p) {
  Symbol s(Kind::Prob);
  s.value_ = std::move(p);
  return s;
}

Symbol Symbol::scale(Rational w) {
  Symbol s(Kind::Scale);
  s.value_ = std::move(w);
  return s;
}

std::size_t Symbol::arity() const {
  switch (kind_) {
    case Kind::Zero: return 0;
    case Kind::Scale: return 1;
    default: return 2;
  }
}

int compare(const Symbol& a, const Symbol& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_ ? -1 : 1;
  switch (a.kind_) {
    case Symbol::Kind::Guard:
      if (a.guard_.atoms != b.guard_.atoms) return a.guard_.atoms < b.guard_.atoms ? -1 : 1;
      return 0;
    case Symbol::Kind::Prob:
    case Symbol::Kind::Scale:
      if (a.value_ != b.value_) return a.value_ < b.value_ ? -1 : 1;
      return 0;
    default:
      return 0;
  }
}

bool in_signature(const Theory& th, const Symbol& sym) {
  switch (sym.kind()) {
    case Symbol::Kind::Zero: return true;
    case Symbol::Kind::Join: return th.kind() == TheoryKind::SL;
    case Symbol::Kind::Guard: return th.guarded() && sym.guard().atoms.size() == th.atom_count();
    case Symbol::Kind::Prob:
      return th.probabilistic() && sym.value() >= 0 && sym.value() <= 1;
    case Symbol::Kind::Sum: return th.kind() == TheoryKind::SMOD;
    case Symbol::Kind::Scale:
      return th.kind() == TheoryKind::SMOD && th.semiring().contains(sym.value());
  }
  return false;
}

void require_in_signature(const Theory& th, const Symbol& sym) {
  if (!in_signature(th, sym)) throw TheoryMismatch("operation symbol not in the signature of " + th.selector());
}

}  // namespace ustar

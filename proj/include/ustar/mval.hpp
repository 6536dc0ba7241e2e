#pragma once

// Normal forms of the free algebra M X for each supported theory, together
// with the free-algebra operations, the functor action, supports, reification
// back to terms, and the malleable split of a value along a partition.

#include "ustar/theory.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ustar {

// SL: finite subsets.
template <class E>
struct Powerset {
  std::set<E> elems;
  friend bool operator==(const Powerset& a, const Powerset& b) { return a.elems == b.elems; }
  friend bool operator<(const Powerset& a, const Powerset& b) { return a.elems < b.elems; }
};

// GA: total map atom -> (bottom | element); nullopt is bottom.
template <class E>
struct Guarded {
  std::vector<std::optional<E>> at;
  friend bool operator==(const Guarded& a, const Guarded& b) { return a.at == b.at; }
  friend bool operator<(const Guarded& a, const Guarded& b) { return a.at < b.at; }
};

// CA: subprobability distribution; the missing mass sits on bottom.
template <class E>
struct Subdist {
  std::map<E, Rational> mass;
  friend bool operator==(const Subdist& a, const Subdist& b) { return a.mass == b.mass; }
  friend bool operator<(const Subdist& a, const Subdist& b) { return a.mass < b.mass; }

  Rational total() const {
    Rational r = 0;
    for (const auto& [e, p] : mass) r += p;
    return r;
  }
};

// GC: one subdistribution per atom.
template <class E>
struct GuardedSubdist {
  std::vector<Subdist<E>> at;
  friend bool operator==(const GuardedSubdist& a, const GuardedSubdist& b) { return a.at == b.at; }
  friend bool operator<(const GuardedSubdist& a, const GuardedSubdist& b) { return a.at < b.at; }
};

// SMOD: finitely supported weights, no stored zero.
template <class E>
struct Weighted {
  std::map<E, Rational> weight;
  friend bool operator==(const Weighted& a, const Weighted& b) { return a.weight == b.weight; }
  friend bool operator<(const Weighted& a, const Weighted& b) { return a.weight < b.weight; }
};

template <class E>
struct MVal {
  std::variant<Powerset<E>, Guarded<E>, Subdist<E>, GuardedSubdist<E>, Weighted<E>> repr;

  friend bool operator==(const MVal& a, const MVal& b) { return a.repr == b.repr; }
  friend bool operator!=(const MVal& a, const MVal& b) { return !(a.repr == b.repr); }
  friend bool operator<(const MVal& a, const MVal& b) { return a.repr < b.repr; }
};

namespace detail {

inline std::size_t repr_index(TheoryKind k) {
  switch (k) {
    case TheoryKind::SL: return 0;
    case TheoryKind::GA: return 1;
    case TheoryKind::CA: return 2;
    case TheoryKind::GC: return 3;
    case TheoryKind::SMOD: return 4;
  }
  return 0;
}

template <class R, class E>
const R& as(const Theory& th, const MVal<E>& m) {
  const R* r = std::get_if<R>(&m.repr);
  if (r == nullptr || m.repr.index() != repr_index(th.kind()))
    throw TheoryMismatch("value does not belong to theory " + th.selector());
  return *r;
}

template <class E>
void add_mass(std::map<E, Rational>& into, const E& e, const Rational& p) {
  if (p == 0) return;
  auto [it, fresh] = into.emplace(e, p);
  if (!fresh) it->second += p;
}

template <class E>
Subdist<E> mix(const Rational& p, const Subdist<E>& a, const Subdist<E>& b) {
  Subdist<E> out;
  Rational q = 1 - p;
  if (p != 0)
    for (const auto& [e, w] : a.mass) add_mass(out.mass, e, Rational(p * w));
  if (q != 0)
    for (const auto& [e, w] : b.mass) add_mass(out.mass, e, Rational(q * w));
  return out;
}

template <class V>
Term<V> chain_over_atoms(const Theory& th, std::vector<Term<V>> per_atom) {
  Term<V> acc = std::move(per_atom.back());
  for (std::size_t a = per_atom.size() - 1; a-- > 0;) {
    AtomSet only(th.atom_count());
    only[a] = true;
    acc = Term<V>::apply(Symbol::guard(atoms_guard(th, only)), {std::move(per_atom[a]), std::move(acc)});
  }
  return acc;
}

template <class E>
Term<E> reify_subdist(const Subdist<E>& d) {
  if (d.mass.empty()) return Term<E>::apply(Symbol::zero());
  auto it = d.mass.begin();
  Term<E> acc = Term<E>::variable(it->first);
  Rational seen = it->second;
  for (++it; it != d.mass.end(); ++it) {
    Rational next = seen + it->second;
    acc = Term<E>::apply(Symbol::prob(Rational(seen / next)), {std::move(acc), Term<E>::variable(it->first)});
    seen = next;
  }
  if (seen != 1) acc = Term<E>::apply(Symbol::prob(seen), {std::move(acc), Term<E>::apply(Symbol::zero())});
  return acc;
}

inline StarTerm slot(Slot s) { return StarTerm::variable(s); }

// Splits d into s(left, right) where left/right are the conditional
// distributions on U and V (full mass, no bottom).
template <class E, class Pred>
StarTerm split_subdist(const Subdist<E>& d, Pred&& in_left, Subdist<E>& left, Subdist<E>& right) {
  Rational mass_u = 0, mass_v = 0;
  for (const auto& [e, p] : d.mass) (in_left(e) ? mass_u : mass_v) += p;
  Rational r = mass_u + mass_v;
  if (r == 0) return StarTerm::apply(Symbol::zero());
  for (const auto& [e, p] : d.mass) {
    if (in_left(e))
      left.mass.emplace(e, Rational(p / mass_u));
    else
      right.mass.emplace(e, Rational(p / mass_v));
  }
  Rational p = mass_u / r;
  StarTerm inner = p == 1   ? slot(Slot::U)
                   : p == 0 ? slot(Slot::V)
                            : StarTerm::apply(Symbol::prob(p), {slot(Slot::U), slot(Slot::V)});
  return StarTerm::apply(Symbol::prob(r), {std::move(inner), StarTerm::apply(Symbol::zero())});
}

}  // namespace detail

template <class E>
MVal<E> zero_value(const Theory& th) {
  switch (th.kind()) {
    case TheoryKind::SL: return {Powerset<E>{}};
    case TheoryKind::GA: return {Guarded<E>{std::vector<std::optional<E>>(th.atom_count())}};
    case TheoryKind::CA: return {Subdist<E>{}};
    case TheoryKind::GC: return {GuardedSubdist<E>{std::vector<Subdist<E>>(th.atom_count())}};
    case TheoryKind::SMOD: return {Weighted<E>{}};
  }
  return {};
}

/// Unit of the free algebra at x.
template <class E>
MVal<E> eta(const Theory& th, const E& x) {
  switch (th.kind()) {
    case TheoryKind::SL: return {Powerset<E>{{x}}};
    case TheoryKind::GA: return {Guarded<E>{std::vector<std::optional<E>>(th.atom_count(), x)}};
    case TheoryKind::CA: return {Subdist<E>{{{x, Rational(1)}}}};
    case TheoryKind::GC:
      return {GuardedSubdist<E>{std::vector<Subdist<E>>(th.atom_count(), Subdist<E>{{{x, Rational(1)}}})}};
    case TheoryKind::SMOD: return {Weighted<E>{{{x, Rational(1)}}}};
  }
  return {};
}

/// Interprets one operation symbol on normal forms.
template <class E>
MVal<E> apply_op(const Theory& th, const Symbol& sym, const std::vector<MVal<E>>& args) {
  require_in_signature(th, sym);
  if (args.size() != sym.arity()) throw TheoryMismatch("arity mismatch");
  if (sym.kind() == Symbol::Kind::Zero) return zero_value<E>(th);

  switch (th.kind()) {
    case TheoryKind::SL: {
      Powerset<E> out = detail::as<Powerset<E>>(th, args[0]);
      const auto& rhs = detail::as<Powerset<E>>(th, args[1]);
      out.elems.insert(rhs.elems.begin(), rhs.elems.end());
      return {std::move(out)};
    }
    case TheoryKind::GA: {
      const auto& l = detail::as<Guarded<E>>(th, args[0]);
      const auto& r = detail::as<Guarded<E>>(th, args[1]);
      Guarded<E> out;
      out.at.reserve(l.at.size());
      for (std::size_t a = 0; a < l.at.size(); ++a) out.at.push_back(sym.guard().atoms[a] ? l.at[a] : r.at[a]);
      return {std::move(out)};
    }
    case TheoryKind::CA:
      return {detail::mix(sym.value(), detail::as<Subdist<E>>(th, args[0]), detail::as<Subdist<E>>(th, args[1]))};
    case TheoryKind::GC: {
      const auto& l = detail::as<GuardedSubdist<E>>(th, args[0]);
      const auto& r = detail::as<GuardedSubdist<E>>(th, args[1]);
      GuardedSubdist<E> out;
      out.at.reserve(l.at.size());
      for (std::size_t a = 0; a < l.at.size(); ++a) {
        if (sym.kind() == Symbol::Kind::Guard)
          out.at.push_back(sym.guard().atoms[a] ? l.at[a] : r.at[a]);
        else
          out.at.push_back(detail::mix(sym.value(), l.at[a], r.at[a]));
      }
      return {std::move(out)};
    }
    case TheoryKind::SMOD: {
      const Semiring& sr = th.semiring();
      Weighted<E> out;
      if (sym.kind() == Symbol::Kind::Scale) {
        for (const auto& [e, w] : detail::as<Weighted<E>>(th, args[0]).weight) {
          Rational x = sr.mul(sym.value(), w);
          if (x != 0) out.weight.emplace(e, x);
        }
        return {std::move(out)};
      }
      out = detail::as<Weighted<E>>(th, args[0]);
      for (const auto& [e, w] : detail::as<Weighted<E>>(th, args[1]).weight) {
        auto [it, fresh] = out.weight.emplace(e, w);
        if (!fresh) {
          it->second = sr.add(it->second, w);
          if (it->second == 0) out.weight.erase(it);
        }
      }
      return {std::move(out)};
    }
  }
  return {};
}

/// Evaluates t in the free algebra; env maps each variable to a value.
template <class V, class E, class Env>
MVal<E> eval_term_with(const Theory& th, const Term<V>& t, Env&& env) {
  if (t.is_var()) return env(*t.var);
  std::vector<MVal<E>> vals;
  vals.reserve(t.args.size());
  for (const auto& a : t.args) vals.push_back(eval_term_with<V, E>(th, a, env));
  return apply_op(th, t.sym, vals);
}

template <class V, class E>
MVal<E> eval_term(const Theory& th, const Term<V>& t, const std::map<V, MVal<E>>& env) {
  return eval_term_with<V, E>(th, t, [&](const V& v) -> MVal<E> {
    auto it = env.find(v);
    if (it == env.end()) throw Error("unbound variable in term");
    return it->second;
  });
}

// Evaluation with every variable interpreted as the unit at itself.
template <class E>
MVal<E> eval_identity(const Theory& th, const Term<E>& t) {
  return eval_term_with<E, E>(th, t, [&](const E& v) { return eta(th, v); });
}

/// Functor action: relabels elements through f and renormalizes.
template <class E, class F>
auto mval_map(const Theory& th, F&& f, const MVal<E>& m) -> MVal<std::decay_t<decltype(f(std::declval<const E&>()))>> {
  using W = std::decay_t<decltype(f(std::declval<const E&>()))>;
  auto map_dist = [&](const Subdist<E>& d) {
    Subdist<W> out;
    for (const auto& [e, p] : d.mass) detail::add_mass(out.mass, f(e), p);
    return out;
  };
  switch (th.kind()) {
    case TheoryKind::SL: {
      Powerset<W> out;
      for (const auto& e : detail::as<Powerset<E>>(th, m).elems) out.elems.insert(f(e));
      return {std::move(out)};
    }
    case TheoryKind::GA: {
      Guarded<W> out;
      for (const auto& o : detail::as<Guarded<E>>(th, m).at)
        out.at.push_back(o ? std::optional<W>(f(*o)) : std::nullopt);
      return {std::move(out)};
    }
    case TheoryKind::CA: return {map_dist(detail::as<Subdist<E>>(th, m))};
    case TheoryKind::GC: {
      GuardedSubdist<W> out;
      for (const auto& d : detail::as<GuardedSubdist<E>>(th, m).at) out.at.push_back(map_dist(d));
      return {std::move(out)};
    }
    case TheoryKind::SMOD: {
      const Semiring& sr = th.semiring();
      Weighted<W> out;
      for (const auto& [e, w] : detail::as<Weighted<E>>(th, m).weight) {
        auto [it, fresh] = out.weight.emplace(f(e), w);
        if (!fresh) it->second = sr.add(it->second, w);
      }
      std::erase_if(out.weight, [](const auto& kv) { return kv.second == 0; });
      return {std::move(out)};
    }
  }
  return {};
}

template <class E>
std::set<E> supp(const MVal<E>& m) {
  std::set<E> out;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Powerset<E>>) {
          out = r.elems;
        } else if constexpr (std::is_same_v<R, Guarded<E>>) {
          for (const auto& o : r.at)
            if (o) out.insert(*o);
        } else if constexpr (std::is_same_v<R, Subdist<E>>) {
          for (const auto& kv : r.mass) out.insert(kv.first);
        } else if constexpr (std::is_same_v<R, GuardedSubdist<E>>) {
          for (const auto& d : r.at)
            for (const auto& kv : d.mass) out.insert(kv.first);
        } else {
          for (const auto& kv : r.weight) out.insert(kv.first);
        }
      },
      m.repr);
  return out;
}

/// A term over supp(m) whose identity evaluation is m.
template <class E>
Term<E> reify(const Theory& th, const MVal<E>& m) {
  using T = Term<E>;
  switch (th.kind()) {
    case TheoryKind::SL: {
      const auto& elems = detail::as<Powerset<E>>(th, m).elems;
      if (elems.empty()) return T::apply(Symbol::zero());
      auto it = elems.rbegin();
      T acc = T::variable(*it);
      for (++it; it != elems.rend(); ++it) acc = T::apply(Symbol::join(), {T::variable(*it), std::move(acc)});
      return acc;
    }
    case TheoryKind::GA: {
      std::vector<T> per_atom;
      for (const auto& o : detail::as<Guarded<E>>(th, m).at)
        per_atom.push_back(o ? T::variable(*o) : T::apply(Symbol::zero()));
      return detail::chain_over_atoms(th, std::move(per_atom));
    }
    case TheoryKind::CA: return detail::reify_subdist(detail::as<Subdist<E>>(th, m));
    case TheoryKind::GC: {
      std::vector<T> per_atom;
      for (const auto& d : detail::as<GuardedSubdist<E>>(th, m).at) per_atom.push_back(detail::reify_subdist(d));
      return detail::chain_over_atoms(th, std::move(per_atom));
    }
    case TheoryKind::SMOD: {
      const auto& w = detail::as<Weighted<E>>(th, m).weight;
      if (w.empty()) return T::apply(Symbol::zero());
      auto summand = [](const auto& kv) { return T::apply(Symbol::scale(kv.second), {T::variable(kv.first)}); };
      auto it = w.rbegin();
      T acc = summand(*it);
      for (++it; it != w.rend(); ++it) acc = T::apply(Symbol::sum(), {summand(*it), std::move(acc)});
      return acc;
    }
  }
  return T::apply(Symbol::zero());
}

template <class E>
struct Split {
  StarTerm s;
  Term<E> left;   // mentions only elements satisfying the predicate
  Term<E> right;  // mentions only the others
};

/// Malleable split: m = s(left, right) with left over U, right over V.
template <class E, class Pred>
Split<E> split(const Theory& th, const MVal<E>& m, Pred&& in_left) {
  using detail::slot;
  Split<E> out;
  switch (th.kind()) {
    case TheoryKind::SL: {
      Powerset<E> l, r;
      for (const auto& e : detail::as<Powerset<E>>(th, m).elems) (in_left(e) ? l : r).elems.insert(e);
      out.s = StarTerm::apply(Symbol::join(), {slot(Slot::U), slot(Slot::V)});
      out.left = reify(th, MVal<E>{std::move(l)});
      out.right = reify(th, MVal<E>{std::move(r)});
      return out;
    }
    case TheoryKind::GA: {
      const auto& g = detail::as<Guarded<E>>(th, m);
      Guarded<E> l{std::vector<std::optional<E>>(g.at.size())};
      Guarded<E> r = l;
      AtomSet bu(g.at.size()), bv(g.at.size());
      for (std::size_t a = 0; a < g.at.size(); ++a) {
        if (!g.at[a]) continue;
        if (in_left(*g.at[a])) {
          bu[a] = true;
          l.at[a] = g.at[a];
        } else {
          bv[a] = true;
          r.at[a] = g.at[a];
        }
      }
      StarTerm inner = StarTerm::apply(Symbol::guard(atoms_guard(th, bv)), {slot(Slot::V), StarTerm::apply(Symbol::zero())});
      out.s = StarTerm::apply(Symbol::guard(atoms_guard(th, bu)), {slot(Slot::U), std::move(inner)});
      out.left = reify(th, MVal<E>{std::move(l)});
      out.right = reify(th, MVal<E>{std::move(r)});
      return out;
    }
    case TheoryKind::CA: {
      Subdist<E> l, r;
      out.s = detail::split_subdist(detail::as<Subdist<E>>(th, m), in_left, l, r);
      out.left = detail::reify_subdist(l);
      out.right = detail::reify_subdist(r);
      return out;
    }
    case TheoryKind::GC: {
      const auto& g = detail::as<GuardedSubdist<E>>(th, m);
      std::vector<StarTerm> per_atom;
      GuardedSubdist<E> l{std::vector<Subdist<E>>(g.at.size())};
      GuardedSubdist<E> r = l;
      for (std::size_t a = 0; a < g.at.size(); ++a)
        per_atom.push_back(detail::split_subdist(g.at[a], in_left, l.at[a], r.at[a]));
      out.s = detail::chain_over_atoms(th, std::move(per_atom));
      out.left = reify(th, MVal<E>{std::move(l)});
      out.right = reify(th, MVal<E>{std::move(r)});
      return out;
    }
    case TheoryKind::SMOD: {
      Weighted<E> l, r;
      for (const auto& [e, w] : detail::as<Weighted<E>>(th, m).weight) (in_left(e) ? l : r).weight.emplace(e, w);
      out.s = StarTerm::apply(Symbol::sum(), {slot(Slot::U), slot(Slot::V)});
      out.left = reify(th, MVal<E>{std::move(l)});
      out.right = reify(th, MVal<E>{std::move(r)});
      return out;
    }
  }
  return out;
}

/// Checks the normal-form invariants; throws SchemaError on violation.
template <class E>
void validate_value(const Theory& th, const MVal<E>& m) {
  auto check_dist = [](const Subdist<E>& d) {
    Rational total = 0;
    for (const auto& [e, p] : d.mass) {
      if (p <= 0) throw SchemaError("probability masses must be positive");
      total += p;
    }
    if (total > 1) throw SchemaError("probability mass exceeds 1");
  };
  switch (th.kind()) {
    case TheoryKind::SL: detail::as<Powerset<E>>(th, m); return;
    case TheoryKind::GA:
      if (detail::as<Guarded<E>>(th, m).at.size() != th.atom_count()) throw SchemaError("wrong number of atoms");
      return;
    case TheoryKind::CA: check_dist(detail::as<Subdist<E>>(th, m)); return;
    case TheoryKind::GC: {
      const auto& g = detail::as<GuardedSubdist<E>>(th, m);
      if (g.at.size() != th.atom_count()) throw SchemaError("wrong number of atoms");
      for (const auto& d : g.at) check_dist(d);
      return;
    }
    case TheoryKind::SMOD:
      for (const auto& [e, w] : detail::as<Weighted<E>>(th, m).weight) {
        if (w == 0) throw SchemaError("zero weights must not be stored");
        if (!th.semiring().contains(w)) throw SchemaError("weight outside the semiring");
      }
      return;
  }
}

/// Human-readable rendering, e.g. {(a, ✓), (b, s1)} or {10: (a, ✓), 01: ⊥}.
template <class E, class Fmt>
std::string format_value(const Theory& th, const MVal<E>& m, Fmt&& fmt) {
  std::string out;
  auto dist = [&](const Subdist<E>& d) {
    std::string s = "{";
    bool first = true;
    for (const auto& [e, p] : d.mass) {
      if (!first) s += ", ";
      first = false;
      s += fmt(e) + ": " + format_rational(p);
    }
    return s + "}";
  };
  switch (th.kind()) {
    case TheoryKind::SL: {
      out = "{";
      bool first = true;
      for (const auto& e : detail::as<Powerset<E>>(th, m).elems) {
        if (!first) out += ", ";
        first = false;
        out += fmt(e);
      }
      return out + "}";
    }
    case TheoryKind::GA: {
      const auto& g = detail::as<Guarded<E>>(th, m);
      out = "{";
      for (std::size_t a = 0; a < g.at.size(); ++a) {
        if (a) out += ", ";
        out += th.atom_bits(a) + ": " + (g.at[a] ? fmt(*g.at[a]) : std::string("⊥"));
      }
      return out + "}";
    }
    case TheoryKind::CA: return dist(detail::as<Subdist<E>>(th, m));
    case TheoryKind::GC: {
      const auto& g = detail::as<GuardedSubdist<E>>(th, m);
      out = "{";
      for (std::size_t a = 0; a < g.at.size(); ++a) {
        if (a) out += ", ";
        out += th.atom_bits(a) + ": " + dist(g.at[a]);
      }
      return out + "}";
    }
    case TheoryKind::SMOD: {
      out = "{";
      bool first = true;
      for (const auto& [e, w] : detail::as<Weighted<E>>(th, m).weight) {
        if (!first) out += ", ";
        first = false;
        out += fmt(e) + ": " + format_rational(w);
      }
      return out + "}";
    }
  }
  return out;
}

}  // namespace ustar

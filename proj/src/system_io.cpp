#include "ustar/system_io.hpp"

#include <map>
#include <sstream>

namespace ustar {

namespace {

const char* const kTick = "✓";

std::string target_name(const System& sys, const Move& m) { return m.target ? sys.names.at(*m.target) : kTick; }

template <class E>
const Subdist<E>& subdist_of(const MVal<E>& m) {
  return std::get<Subdist<E>>(m.repr);
}

Json dist_json(const System& sys, const Subdist<Move>& d) {
  Json arr = Json::array();
  for (const auto& [o, p] : d.mass)
    arr.push_back({{"p", format_rational(p)}, {"a", o.action}, {"t", target_name(sys, o)}});
  return arr;
}

class Loader {
 public:
  explicit Loader(const Json& doc) : doc_(doc) {}

  System run() {
    if (!doc_.is_object()) throw SchemaError("system document must be an object");
    System sys;
    sys.theory = Theory::parse(str(field(doc_, "theory"), "theory"));
    const Json& states = field(doc_, "states");
    if (!states.is_array()) throw SchemaError("'states' must be an array");
    for (const auto& s : states) {
      std::string name = str(s, "state name");
      if (name == kTick) throw SchemaError("'✓' is reserved");
      if (!ids_.emplace(name, sys.names.size()).second) throw SchemaError("duplicate state '" + name + "'");
      sys.names.push_back(name);
    }
    if (sys.names.empty()) throw SchemaError("system has no states");
    sys.root = state(str(field(doc_, "root"), "root"));
    const Json& beta = field(doc_, "beta");
    if (!beta.is_object()) throw SchemaError("'beta' must be an object");
    for (const auto& [k, v] : beta.items())
      if (!ids_.count(k)) throw SchemaError("dangling state reference '" + k + "' in beta");
    for (const auto& name : sys.names) {
      auto it = beta.find(name);
      if (it == beta.end()) throw SchemaError("beta has no entry for state '" + name + "'");
      sys.beta.push_back(value(sys.theory, *it));
    }
    validate_system(sys);
    return sys;
  }

 private:
  const Json& doc_;
  std::map<std::string, StateId> ids_;

  static const Json& field(const Json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(std::string("missing field '") + key + "'");
    return *it;
  }

  static std::string str(const Json& j, const std::string& what) {
    if (!j.is_string()) throw SchemaError(what + " must be a string");
    return j.get<std::string>();
  }

  StateId state(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) throw SchemaError("dangling state reference '" + name + "'");
    return it->second;
  }

  Move move(const Json& action, const Json& target) const {
    Move m;
    m.action = str(action, "action");
    if (!is_action_name(m.action)) throw SchemaError("malformed action '" + m.action + "'");
    std::string t = str(target, "target");
    if (t != kTick) m.target = state(t);
    return m;
  }

  static Rational number(const Json& j, const std::string& what) {
    try {
      return parse_rational(str(j, what));
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(what + ": " + e.what());
    }
  }

  Subdist<Move> dist(const Json& j) const {
    if (!j.is_array()) throw SchemaError("distribution must be an array");
    Subdist<Move> d;
    for (const auto& item : j) {
      if (!item.is_object()) throw SchemaError("distribution entry must be an object");
      Rational p = number(field(item, "p"), "probability");
      if (p <= 0) throw SchemaError("probability masses must be positive");
      detail::add_mass(d.mass, move(field(item, "a"), field(item, "t")), p);
    }
    return d;
  }

  template <class F>
  auto per_atom(const Theory& th, const Json& j, F&& f) const {
    if (!j.is_object()) throw SchemaError("guarded value must be an object keyed by atoms");
    std::vector<decltype(f(j))> at(th.atom_count());
    std::vector<bool> seen(th.atom_count());
    for (const auto& [k, v] : j.items()) {
      auto a = th.atom_from_bits(k);
      if (!a) throw SchemaError("unknown atom '" + k + "'");
      seen[*a] = true;
      at[*a] = f(v);
    }
    for (bool b : seen)
      if (!b) throw SchemaError("guarded value must list every atom");
    return at;
  }

  MVal<Move> value(const Theory& th, const Json& j) const {
    switch (th.kind()) {
      case TheoryKind::SL: {
        if (!j.is_array()) throw SchemaError("SL value must be an array of pairs");
        Powerset<Move> p;
        for (const auto& pair : j) {
          if (!pair.is_array() || pair.size() != 2) throw SchemaError("SL entry must be [action, target]");
          p.elems.insert(move(pair[0], pair[1]));
        }
        return {std::move(p)};
      }
      case TheoryKind::GA:
        return {Guarded<Move>{per_atom(th, j, [&](const Json& v) -> std::optional<Move> {
          if (v.is_null()) return std::nullopt;
          if (!v.is_array() || v.size() != 2) throw SchemaError("GA entry must be null or [action, target]");
          return move(v[0], v[1]);
        })}};
      case TheoryKind::CA: return {dist(j)};
      case TheoryKind::GC: return {GuardedSubdist<Move>{per_atom(th, j, [&](const Json& v) { return dist(v); })}};
      case TheoryKind::SMOD: {
        if (!j.is_array()) throw SchemaError("SMOD value must be an array");
        Weighted<Move> w;
        for (const auto& item : j) {
          if (!item.is_object()) throw SchemaError("SMOD entry must be an object");
          Rational x = number(field(item, "w"), "weight");
          if (x == 0) throw SchemaError("zero weights must not be stored");
          if (!th.semiring().contains(x)) throw SchemaError("weight outside the semiring");
          Move m = move(field(item, "a"), field(item, "t"));
          auto [it, fresh] = w.weight.emplace(m, x);
          if (!fresh) it->second = th.semiring().add(it->second, x);
        }
        return {std::move(w)};
      }
    }
    throw SchemaError("unsupported theory");
  }
};

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Json export_value(const System& sys, const MVal<Move>& m) {
  const Theory& th = sys.theory;
  switch (th.kind()) {
    case TheoryKind::SL: {
      Json arr = Json::array();
      for (const auto& o : std::get<Powerset<Move>>(m.repr).elems) arr.push_back({o.action, target_name(sys, o)});
      return arr;
    }
    case TheoryKind::GA: {
      Json obj = Json::object();
      const auto& g = std::get<Guarded<Move>>(m.repr);
      for (std::size_t a = 0; a < g.at.size(); ++a)
        obj[th.atom_bits(a)] = g.at[a] ? Json{g.at[a]->action, target_name(sys, *g.at[a])} : Json(nullptr);
      return obj;
    }
    case TheoryKind::CA: return dist_json(sys, subdist_of(m));
    case TheoryKind::GC: {
      Json obj = Json::object();
      const auto& g = std::get<GuardedSubdist<Move>>(m.repr);
      for (std::size_t a = 0; a < g.at.size(); ++a) obj[th.atom_bits(a)] = dist_json(sys, g.at[a]);
      return obj;
    }
    case TheoryKind::SMOD: {
      Json arr = Json::array();
      for (const auto& [o, w] : std::get<Weighted<Move>>(m.repr).weight)
        arr.push_back({{"w", format_rational(w)}, {"a", o.action}, {"t", target_name(sys, o)}});
      return arr;
    }
  }
  return nullptr;
}

Json export_system(const System& sys) {
  Json doc;
  doc["theory"] = sys.theory.selector();
  doc["states"] = sys.names;
  doc["root"] = sys.names.at(sys.root);
  Json beta = Json::object();
  for (StateId x = 0; x < sys.size(); ++x) beta[sys.names[x]] = export_value(sys, sys.beta[x]);
  doc["beta"] = std::move(beta);
  return doc;
}

System load_system(const Json& doc) { return Loader(doc).run(); }

std::string export_dot(const System& sys) {
  const Theory& th = sys.theory;
  std::ostringstream out;
  out << "digraph system {\n";
  out << "  node [shape=circle];\n";
  out << "  \"✓\" [shape=doublecircle, label=\"✓\"];\n";
  for (StateId x = 0; x < sys.size(); ++x) {
    out << "  \"" << dot_escape(sys.names[x]) << "\"";
    if (x == sys.root) out << " [penwidth=2]";
    out << ";\n";
  }
  auto edge = [&](StateId from, const Move& o, const std::string& note) {
    out << "  \"" << dot_escape(sys.names[from]) << "\" -> \"" << dot_escape(target_name(sys, o)) << "\" [label=\""
        << dot_escape(o.action + (note.empty() ? "" : " " + note)) << "\"];\n";
  };
  for (StateId x = 0; x < sys.size(); ++x) {
    const auto& m = sys.beta[x];
    switch (th.kind()) {
      case TheoryKind::SL:
        for (const auto& o : std::get<Powerset<Move>>(m.repr).elems) edge(x, o, "");
        break;
      case TheoryKind::GA: {
        std::map<Move, std::vector<std::string>> atoms;
        const auto& g = std::get<Guarded<Move>>(m.repr);
        for (std::size_t a = 0; a < g.at.size(); ++a)
          if (g.at[a]) atoms[*g.at[a]].push_back(th.atom_bits(a));
        for (const auto& [o, list] : atoms) {
          std::string note = "[";
          for (std::size_t i = 0; i < list.size(); ++i) note += (i ? "," : "") + list[i];
          edge(x, o, note + "]");
        }
        break;
      }
      case TheoryKind::CA:
        for (const auto& [o, p] : subdist_of(m).mass) edge(x, o, format_rational(p));
        break;
      case TheoryKind::GC: {
        const auto& g = std::get<GuardedSubdist<Move>>(m.repr);
        for (std::size_t a = 0; a < g.at.size(); ++a)
          for (const auto& [o, p] : g.at[a].mass) edge(x, o, "[" + th.atom_bits(a) + "] " + format_rational(p));
        break;
      }
      case TheoryKind::SMOD:
        for (const auto& [o, w] : std::get<Weighted<Move>>(m.repr).weight) edge(x, o, "w=" + format_rational(w));
        break;
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace ustar

#pragma once

#include <doctest.h>

#include "ustar/properties.hpp"
#include "ustar/system_io.hpp"

#include <string>

namespace test {

using namespace ustar;

inline Expr ex(const Theory& th, const std::string& text) { return parse_expr(text, th); }

inline Move tick(const std::string& a) { return Move{a, std::nullopt}; }
inline Move to(const std::string& a, StateId s) { return Move{a, s}; }

inline System load(const std::string& json) { return load_system(Json::parse(json)); }

inline std::string show(const System& sys, const MVal<Move>& m) {
  return format_value(sys.theory, m, [&](const Move& o) { return format_move(sys, o); });
}

}  // namespace test

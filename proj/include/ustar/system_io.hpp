#pragma once

#include "ustar/semantics.hpp"

#include <json.hpp>

#include <string>

namespace ustar {

using Json = nlohmann::ordered_json;

Json export_value(const System& sys, const MVal<Move>& m);
Json export_system(const System& sys);

/// Reads a system document; the theory comes from its "theory" field.
System load_system(const Json& doc);

std::string export_dot(const System& sys);

}  // namespace ustar

#pragma once

// Reader/writer for the TOML subset used by run configurations: [tables]
// (dotted names allowed), key = value with strings, numbers, booleans,
// arrays and inline tables, and # comments. Documents map onto JSON objects.

#include <string>
#include <string_view>

#include "json.hpp"

namespace carma::toml_lite {

/// Throws ConfigError with a line number on malformed input.
nlohmann::json parse(std::string_view text);

/// Emits scalars and arrays at the top of each table, sub-objects as
/// [a.b] tables. Doubles use the shortest round-tripping representation.
std::string dump(const nlohmann::json& doc);

}  // namespace carma::toml_lite

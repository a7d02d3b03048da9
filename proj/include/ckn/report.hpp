#pragma once

// Serialization helpers shared by the command-line front end: stable key
// order, full-precision floats, versioned schema.

#include <string>
#include <vector>

#include "json.hpp"

namespace ckn {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Full-precision decimal form (%.17g), used for CSV cells.
std::string format_double(double x);

inline std::string format_flag(bool flag) { return flag ? "1" : "0"; }

// Fresh report object with the schema version as its first key.
Json new_report(const std::string& kind);

std::string csv_join(const std::vector<std::string>& cells);

void write_text(const std::string& path, const std::string& text);

}  // namespace ckn

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qclab/primitives/report.hpp"

namespace qclab {

/// Pretty-printed JSON with every floating-point value written as %.17g.
/// Non-finite floats become null.
std::string dump_json(const Json& value, int indent = 2);

/// Header row (union of keys in first-seen order) then one row per record.
/// Nested values are written as compact JSON; floats use %.17g.
std::string render_csv(const std::vector<Json>& rows);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string format_double(double v);

}  // namespace qclab

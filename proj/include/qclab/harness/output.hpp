#pragma once

#include <filesystem>
#include <string>

#include "qclab/harness/experiment.hpp"

namespace qclab {

/// Standalone SVG: axes with labels, one polyline per series, dashed reference.
/// Throws InvalidArgument on a sweep with no points.
std::string render_svg(const Sweep& sweep, const std::string& title);

/// Requires report.sweep with at least one point; nothing is written otherwise.
void emit_plot(const ExperimentReport& report, const std::filesystem::path& path);

/// Paths written for a given output and format. "both" swaps the extension
/// for .json and .csv.
std::vector<std::filesystem::path> output_paths(const std::string& output, const std::string& format);

/// Renders every requested artifact first, then writes each atomically.
void write_outputs(const ExperimentReport& report);

}  // namespace qclab

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "qclab/core/error.hpp"
#include "qclab/harness/emit.hpp"
#include "qclab/harness/output.hpp"

namespace qclab {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      const double w = std::max(std::abs(lo) * 0.1, 0.5);
      lo -= w;
      hi += w;
    } else {
      const double w = 0.05 * (hi - lo);
      lo -= w;
      hi += w;
    }
  }
};

}  // namespace

std::string render_svg(const Sweep& sweep, const std::string& title) {
  if (sweep.point_count() == 0) throw InvalidArgument("sweep has no points to plot");
  Range xr, yr;
  for (const auto& s : sweep.series) {
    for (const auto& [x, y] : s.points) {
      xr.add(x);
      yr.add(y);
    }
  }
  for (const auto& [x, y] : sweep.reference) {
    xr.add(x);
    yr.add(y);
  }
  xr.pad();
  yr.pad();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
    << escape_xml(title) << "</text>\n";

  // axes and ticks
  o << "<g stroke=\"black\" stroke-width=\"1\">\n"
    << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\""
    << kTop + ph << "\"/>\n"
    << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph
    << "\"/>\n</g>\n";
  o << "<g font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 5.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 5.0;
    o << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(px(xv))
      << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>"
      << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(kTop + ph + 18)
      << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n"
      << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(yv)) << "\" x2=\"" << kLeft
      << "\" y2=\"" << num(py(yv)) << "\" stroke=\"black\"/>"
      << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(yv) + 4)
      << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  o << "</g>\n";
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
    << "\" text-anchor=\"middle\" font-size=\"13\">" << escape_xml(sweep.x_label) << "</text>\n"
    << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
    << "transform=\"rotate(-90 18 " << num(kTop + ph / 2) << ")\">" << escape_xml(sweep.y_label)
    << "</text>\n";

  auto polyline = [&](const std::vector<std::pair<double, double>>& pts) {
    std::string s;
    for (const auto& [x, y] : pts) {
      if (!s.empty()) s += ' ';
      s += num(px(x)) + "," + num(py(y));
    }
    return s;
  };

  const double lx = kLeft + pw + 15;
  double ly = kTop + 10;
  if (!sweep.reference.empty()) {
    o << "<polyline class=\"reference\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1.5\" "
      << "stroke-dasharray=\"6,4\" points=\"" << polyline(sweep.reference) << "\"/>\n";
    o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24) << "\" y2=\""
      << num(ly) << "\" stroke=\"#555555\" stroke-dasharray=\"6,4\"/>"
      << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\" font-size=\"12\">"
      << escape_xml(sweep.reference_label) << "</text>\n";
    ly += 20;
  }
  for (std::size_t i = 0; i < sweep.series.size(); ++i) {
    const auto& s = sweep.series[i];
    const char* colour = kPalette[i % std::size(kPalette)];
    o << "<g class=\"series\" fill=\"" << colour << "\" stroke=\"" << colour << "\">\n";
    if (s.points.size() > 1) {
      o << "<polyline fill=\"none\" stroke-width=\"2\" points=\"" << polyline(s.points) << "\"/>\n";
    }
    for (const auto& [x, y] : s.points) {
      o << "<circle class=\"marker\" cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
        << "\" r=\"4\"/>\n";
    }
    o << "</g>\n";
    o << "<circle cx=\"" << num(lx + 12) << "\" cy=\"" << num(ly) << "\" r=\"4\" fill=\"" << colour
      << "\"/><text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\" font-size=\"12\">"
      << escape_xml(s.label) << "</text>\n";
    ly += 20;
  }
  o << "</svg>\n";
  return o.str();
}

void emit_plot(const ExperimentReport& report, const std::filesystem::path& path) {
  if (!report.sweep) throw InvalidArgument("report has no sweep axis to plot");
  write_atomic(path, render_svg(*report.sweep, report.config.experiment));
}

std::vector<std::filesystem::path> output_paths(const std::string& output, const std::string& format) {
  if (output.empty()) return {};
  std::filesystem::path p(output);
  if (format == "both") {
    auto j = p, c = p;
    j.replace_extension(".json");
    c.replace_extension(".csv");
    return {j, c};
  }
  return {p};
}

void write_outputs(const ExperimentReport& report) {
  const auto& c = report.config;
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  const auto paths = output_paths(c.output, c.format);
  if (!paths.empty()) {
    if (c.format == "json") {
      files.emplace_back(paths[0], dump_json(report.to_json()));
    } else if (c.format == "csv") {
      files.emplace_back(paths[0], render_csv(report.records));
    } else {
      files.emplace_back(paths[0], dump_json(report.to_json()));
      files.emplace_back(paths[1], render_csv(report.records));
    }
  }
  if (c.plot) {
    if (!report.sweep) throw InvalidArgument("experiment '" + c.experiment + "' has no sweep to plot");
    files.emplace_back(*c.plot, render_svg(*report.sweep, c.experiment));
  }
  for (const auto& [path, text] : files) {
    const auto parent = path.parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
      throw IoError("output directory does not exist: " + parent.string());
    }
  }
  for (const auto& [path, text] : files) write_atomic(path, text);
}

}  // namespace qclab

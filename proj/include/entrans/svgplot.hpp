#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "entrans/ipr_ratio.hpp"
#include "entrans/sweep.hpp"
#include "entrans/udist.hpp"

namespace entrans {

// Minimal self-contained SVG plotting: lines, markers with error bars, bars,
// shaded bands, optional log10 x axis, legend, and one inset panel. Output
// is deterministic for identical input.
struct Series {
    enum class Style { Line, Dashed, Markers, Bars, Band };
    std::vector<double> x, y;
    std::vector<double> yerr;  // error bars for Markers (optional)
    std::vector<double> y2;    // upper edge for Band
    std::string label;         // empty = not in legend
    std::string color = "#1f77b4";
    Style style = Style::Line;
};

struct Axes {
    std::string title, xlabel, ylabel;
    bool log10_x = false;
    // Fixed ranges; NaN = derive from the data.
    double x_min = std::numeric_limits<double>::quiet_NaN();
    double x_max = std::numeric_limits<double>::quiet_NaN();
    double y_min = std::numeric_limits<double>::quiet_NaN();
    double y_max = std::numeric_limits<double>::quiet_NaN();
};

struct Inset {
    Axes axes;
    std::vector<Series> series;
    // Placement as fractions of the main plot area.
    double left = 0.52, bottom = 0.12, width = 0.44, height = 0.4;
};

std::string render_svg(const Axes& axes, const std::vector<Series>& series,
                       const std::optional<Inset>& inset = {});
void write_svg(const std::filesystem::path& path, const Axes& axes,
               const std::vector<Series>& series, const std::optional<Inset>& inset = {});

// Figure builders for the experiment results.
void emit_entropy_figure(const SweepResult& result, const std::filesystem::path& path);
void emit_ipr_figure(const IprRatioResult& result, const std::filesystem::path& path);
void emit_udist_figure(const UDistResult& result, const std::filesystem::path& path);

} // namespace entrans

#include "entrans/svgplot.hpp"

#include <algorithm>
#include <cmath>

#include "entrans/errors.hpp"
#include "entrans/io.hpp"
#include "entrans/theory.hpp"

namespace entrans {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void expand(double v)
    {
        if (!std::isfinite(v))
            return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

// "Nice" tick spacing covering the range with about `target` intervals.
std::vector<double> linear_ticks(double lo, double hi, int target = 5)
{
    const double span = hi - lo;
    if (!(span > 0.0))
        return {lo};
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return ticks;
}

// Plot-area mapper. X values arrive already log-transformed when applicable.
struct Frame {
    double px, py, pw, ph;  // pixel box (py = top)
    double x0, x1, y0, y1;  // data ranges
    double sx(double x) const { return px + (x - x0) / (x1 - x0) * pw; }
    double sy(double y) const { return py + ph - (y - y0) / (y1 - y0) * ph; }
};

double transform_x(double x, bool log10_x)
{
    if (!log10_x)
        return x;
    return x > 0.0 ? std::log10(x) : std::numeric_limits<double>::quiet_NaN();
}

void data_ranges(const Axes& axes, const std::vector<Series>& series, Range& rx, Range& ry)
{
    bool first_x = true, first_y = true;
    auto seed = [&](Range& r, double v, bool& first) {
        if (!std::isfinite(v))
            return;
        if (first) {
            r.lo = r.hi = v;
            first = false;
        } else {
            r.expand(v);
        }
    };
    for (const Series& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            seed(rx, transform_x(s.x[i], axes.log10_x), first_x);
            seed(ry, s.y[i], first_y);
            if (i < s.yerr.size()) {
                seed(ry, s.y[i] - s.yerr[i], first_y);
                seed(ry, s.y[i] + s.yerr[i], first_y);
            }
            if (i < s.y2.size())
                seed(ry, s.y2[i], first_y);
            if (s.style == Series::Style::Bars)
                seed(ry, 0.0, first_y);
        }
    }
    if (!std::isnan(axes.x_min))
        rx.lo = transform_x(axes.x_min, axes.log10_x);
    if (!std::isnan(axes.x_max))
        rx.hi = transform_x(axes.x_max, axes.log10_x);
    if (!std::isnan(axes.y_min))
        ry.lo = axes.y_min;
    if (!std::isnan(axes.y_max))
        ry.hi = axes.y_max;
    if (!(rx.hi > rx.lo))
        rx.hi = rx.lo + 1.0;
    if (!(ry.hi > ry.lo))
        ry.hi = ry.lo + 1.0;
    // breathing room
    const double padx = 0.04 * (rx.hi - rx.lo);
    const double pady = 0.06 * (ry.hi - ry.lo);
    if (std::isnan(axes.x_min))
        rx.lo -= padx;
    if (std::isnan(axes.x_max))
        rx.hi += padx;
    if (std::isnan(axes.y_min))
        ry.lo -= pady;
    if (std::isnan(axes.y_max))
        ry.hi += pady;
}

void render_series(std::string& svg, const Frame& f, const Series& s, bool log10_x,
                   const std::string& clip)
{
    auto tx = [&](double x) { return transform_x(x, log10_x); };
    svg += "<g clip-path=\"url(#" + clip + ")\">\n";
    switch (s.style) {
    case Series::Style::Line:
    case Series::Style::Dashed: {
        svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.6\"";
        if (s.style == Series::Style::Dashed)
            svg += " stroke-dasharray=\"6 4\"";
        svg += " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double x = tx(s.x[i]);
            if (!std::isfinite(x) || !std::isfinite(s.y[i]))
                continue;
            svg += num(f.sx(x)) + ',' + num(f.sy(s.y[i])) + ' ';
        }
        svg += "\"/>\n";
        break;
    }
    case Series::Style::Markers: {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double x = tx(s.x[i]);
            if (!std::isfinite(x) || !std::isfinite(s.y[i]))
                continue;
            const double cx = f.sx(x), cy = f.sy(s.y[i]);
            if (i < s.yerr.size() && s.yerr[i] > 0.0) {
                const double ylo = f.sy(s.y[i] - s.yerr[i]);
                const double yhi = f.sy(s.y[i] + s.yerr[i]);
                svg += "<line x1=\"" + num(cx) + "\" y1=\"" + num(ylo) + "\" x2=\"" + num(cx) +
                       "\" y2=\"" + num(yhi) + "\" stroke=\"" + s.color +
                       "\" stroke-width=\"1\"/>\n";
            }
            svg += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"3\" fill=\"" +
                   s.color + "\"/>\n";
        }
        break;
    }
    case Series::Style::Bars: {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double x = tx(s.x[i]);
            if (!std::isfinite(x) || !std::isfinite(s.y[i]))
                continue;
            double dx = 0.02 * (f.x1 - f.x0);
            if (s.x.size() > 1) {
                const std::size_t j = i + 1 < s.x.size() ? i + 1 : i - 1;
                dx = std::abs(tx(s.x[j]) - x);
            }
            const double half = 0.45 * dx;
            const double top = f.sy(std::max(s.y[i], 0.0));
            const double bottom = f.sy(std::min(s.y[i], 0.0));
            svg += "<rect x=\"" + num(f.sx(x - half)) + "\" y=\"" + num(top) + "\" width=\"" +
                   num(f.sx(x + half) - f.sx(x - half)) + "\" height=\"" +
                   num(bottom - top) + "\" fill=\"" + s.color +
                   "\" fill-opacity=\"0.55\" stroke=\"" + s.color + "\"/>\n";
        }
        break;
    }
    case Series::Style::Band: {
        svg += "<polygon fill=\"" + s.color + "\" fill-opacity=\"0.15\" stroke=\"none\" "
               "points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double x = tx(s.x[i]);
            if (!std::isfinite(x))
                continue;
            svg += num(f.sx(x)) + ',' + num(f.sy(s.y[i])) + ' ';
        }
        for (std::size_t i = s.x.size(); i-- > 0;) {
            const double x = tx(s.x[i]);
            if (!std::isfinite(x))
                continue;
            svg += num(f.sx(x)) + ',' + num(f.sy(s.y2[i])) + ' ';
        }
        svg += "\"/>\n";
        break;
    }
    }
    svg += "</g>\n";
}

void render_panel(std::string& svg, const Frame& f, const Axes& axes,
                  const std::vector<Series>& series, const std::string& clip,
                  double font_size, bool with_legend)
{
    svg += "<clipPath id=\"" + clip + "\"><rect x=\"" + num(f.px) + "\" y=\"" + num(f.py) +
           "\" width=\"" + num(f.pw) + "\" height=\"" + num(f.ph) + "\"/></clipPath>\n";
    svg += "<rect x=\"" + num(f.px) + "\" y=\"" + num(f.py) + "\" width=\"" + num(f.pw) +
           "\" height=\"" + num(f.ph) + "\" fill=\"white\" stroke=\"#444\"/>\n";

    const std::string fs = num(font_size);
    // ticks
    if (axes.log10_x) {
        for (int d = static_cast<int>(std::ceil(f.x0)); d <= static_cast<int>(std::floor(f.x1));
             ++d) {
            const double x = f.sx(d);
            svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(f.py + f.ph) + "\" x2=\"" + num(x) +
                   "\" y2=\"" + num(f.py + f.ph + 4) + "\" stroke=\"#444\"/>\n";
            svg += "<text x=\"" + num(x) + "\" y=\"" + num(f.py + f.ph + 15) +
                   "\" text-anchor=\"middle\" font-size=\"" + fs + "\">1e" +
                   std::to_string(d) + "</text>\n";
        }
    } else {
        for (const double t : linear_ticks(f.x0, f.x1)) {
            const double x = f.sx(t);
            svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(f.py + f.ph) + "\" x2=\"" + num(x) +
                   "\" y2=\"" + num(f.py + f.ph + 4) + "\" stroke=\"#444\"/>\n";
            svg += "<text x=\"" + num(x) + "\" y=\"" + num(f.py + f.ph + 15) +
                   "\" text-anchor=\"middle\" font-size=\"" + fs + "\">" + num(t) + "</text>\n";
        }
    }
    for (const double t : linear_ticks(f.y0, f.y1)) {
        const double y = f.sy(t);
        svg += "<line x1=\"" + num(f.px - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(f.px) +
               "\" y2=\"" + num(y) + "\" stroke=\"#444\"/>\n";
        svg += "<text x=\"" + num(f.px - 7) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\" font-size=\"" + fs + "\">" + num(t) + "</text>\n";
    }
    // labels
    if (!axes.xlabel.empty())
        svg += "<text x=\"" + num(f.px + f.pw / 2) + "\" y=\"" + num(f.py + f.ph + 32) +
               "\" text-anchor=\"middle\" font-size=\"" + num(font_size + 1) + "\">" +
               escape_xml(axes.xlabel) + "</text>\n";
    if (!axes.ylabel.empty())
        svg += "<text x=\"" + num(f.px - 40) + "\" y=\"" + num(f.py + f.ph / 2) +
               "\" text-anchor=\"middle\" font-size=\"" + num(font_size + 1) +
               "\" transform=\"rotate(-90 " + num(f.px - 40) + ' ' + num(f.py + f.ph / 2) +
               ")\">" + escape_xml(axes.ylabel) + "</text>\n";
    if (!axes.title.empty())
        svg += "<text x=\"" + num(f.px + f.pw / 2) + "\" y=\"" + num(f.py - 8) +
               "\" text-anchor=\"middle\" font-size=\"" + num(font_size + 2) +
               "\" font-weight=\"bold\">" + escape_xml(axes.title) + "</text>\n";

    for (const Series& s : series)
        render_series(svg, f, s, axes.log10_x, clip);

    if (with_legend) {
        double ly = f.py + 10;
        const double lx = f.px + f.pw - 150;
        for (const Series& s : series) {
            if (s.label.empty())
                continue;
            svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 22) +
                   "\" y2=\"" + num(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"3\"/>\n";
            svg += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(ly + 4) + "\" font-size=\"" +
                   fs + "\">" + escape_xml(s.label) + "</text>\n";
            ly += 16;
        }
    }
}

} // namespace

std::string render_svg(const Axes& axes, const std::vector<Series>& series,
                       const std::optional<Inset>& inset)
{
    for (const Series& s : series) {
        if (s.x.size() != s.y.size())
            throw config_error("render_svg: series x/y length mismatch");
        if (s.style == Series::Style::Band && s.y2.size() != s.x.size())
            throw config_error("render_svg: band series needs matching y2");
    }
    const double width = 760, height = 520;
    const Frame main_frame = [&] {
        Frame f;
        f.px = 70;
        f.py = 36;
        f.pw = width - 70 - 20;
        f.ph = height - 36 - 52;
        Range rx, ry;
        data_ranges(axes, series, rx, ry);
        f.x0 = rx.lo;
        f.x1 = rx.hi;
        f.y0 = ry.lo;
        f.y1 = ry.hi;
        return f;
    }();

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                      "\" height=\"" + num(height) +
                      "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" "
                      "fill=\"white\"/>\n";
    render_panel(svg, main_frame, axes, series, "clip-main", 12, true);

    if (inset) {
        Frame f;
        f.px = main_frame.px + inset->left * main_frame.pw;
        f.pw = inset->width * main_frame.pw;
        f.ph = inset->height * main_frame.ph;
        f.py = main_frame.py + (1.0 - inset->bottom - inset->height) * main_frame.ph;
        Range rx, ry;
        data_ranges(inset->axes, inset->series, rx, ry);
        f.x0 = rx.lo;
        f.x1 = rx.hi;
        f.y0 = ry.lo;
        f.y1 = ry.hi;
        render_panel(svg, f, inset->axes, inset->series, "clip-inset", 10, false);
    }
    svg += "</svg>\n";
    return svg;
}

void write_svg(const std::filesystem::path& path, const Axes& axes,
               const std::vector<Series>& series, const std::optional<Inset>& inset)
{
    write_text_file(path, render_svg(axes, series, inset));
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

} // namespace

void emit_entropy_figure(const SweepResult& result, const std::filesystem::path& path)
{
    Axes axes;
    axes.title = "Eigenstate entanglement vs coupling (" +
                 to_string(result.config.model.kind) + ", n=" +
                 std::to_string(result.config.model.n) + ")";
    axes.xlabel = "sqrt(lambda)";
    axes.ylabel = "mean entropy S_k";

    std::vector<Series> series;
    double sqrt_max = 0.0;
    for (const SweepPoint& p : result.points)
        sqrt_max = std::max(sqrt_max, std::sqrt(p.lambda));

    int ci = 0;
    for (const int k : result.config.k_set) {
        const std::string key = "S" + std::to_string(k);
        const std::string color = kPalette[ci++ % 7];
        Series data;
        data.style = Series::Style::Markers;
        data.color = color;
        data.label = key + " (measured)";
        for (const SweepPoint& p : result.points) {
            const auto it = p.measures.find(key);
            if (it == p.measures.end())
                continue;
            data.x.push_back(std::sqrt(p.lambda));
            data.y.push_back(it->second.mean);
            data.yerr.push_back(it->second.stderr_of_mean);
        }
        Series curve;
        curve.style = Series::Style::Line;
        curve.color = color;
        curve.label = key + " (theory)";
        for (int i = 0; i <= 240; ++i) {
            const double sl = sqrt_max * i / 240.0;
            curve.x.push_back(sl);
            curve.y.push_back(theory::entropy_transition(k, result.config.model.n, sl * sl));
        }
        series.push_back(std::move(curve));
        series.push_back(std::move(data));
    }

    // Inset: the two leading Schmidt weights in the perturbative corner.
    Inset inset;
    inset.axes.xlabel = "sqrt(lambda)";
    inset.axes.ylabel = "lambda_1, lambda_2";
    inset.axes.x_min = 0.0;
    const double corner = std::min(0.35, sqrt_max);
    inset.axes.x_max = corner;
    for (const char* key : {"lambda1", "lambda2"}) {
        Series data;
        data.style = Series::Style::Markers;
        data.color = std::string(key) == "lambda1" ? "#1f77b4" : "#d62728";
        for (const SweepPoint& p : result.points) {
            if (std::sqrt(p.lambda) > corner)
                continue;
            const auto it = p.measures.find(key);
            if (it == p.measures.end())
                continue;
            data.x.push_back(std::sqrt(p.lambda));
            data.y.push_back(it->second.mean);
        }
        Series curve;
        curve.style = Series::Style::Dashed;
        curve.color = data.color;
        for (int i = 0; i <= 80; ++i) {
            const double sl = corner * i / 80.0;
            curve.x.push_back(sl);
            curve.y.push_back(std::string(key) == "lambda1"
                                  ? theory::lambda1_mean(sl * sl).value
                                  : theory::lambda2_mean_series(sl * sl));
        }
        inset.series.push_back(std::move(curve));
        inset.series.push_back(std::move(data));
    }
    write_svg(path, axes, series, inset);
}

void emit_ipr_figure(const IprRatioResult& result, const std::filesystem::path& path)
{
    Axes axes;
    axes.title = "Rescaled IPR ratio: rotor pair vs random-ensemble band";
    axes.xlabel = "lambda";
    axes.ylabel = "r = rescaled IPR / (1 + mean purity)";
    axes.log10_x = true;

    Series band;
    band.style = Series::Style::Band;
    band.color = "#1f77b4";
    band.label = "random ensemble +-3 sigma";
    Series center;
    center.style = Series::Style::Dashed;
    center.color = "#1f77b4";
    Series pos;
    pos.style = Series::Style::Markers;
    pos.color = "#d62728";
    pos.label = "rotor pair, position basis";
    Series mom;
    mom.style = Series::Style::Markers;
    mom.color = "#2ca02c";
    mom.label = "rotor pair, momentum basis";
    for (const IprRatioPoint& p : result.points) {
        band.x.push_back(p.lambda);
        band.y.push_back(1.0 - 3.0 * p.rmt_ratio_sigma);
        band.y2.push_back(1.0 + 3.0 * p.rmt_ratio_sigma);
        center.x.push_back(p.lambda);
        center.y.push_back(p.rmt_ratio_mean);
        pos.x.push_back(p.lambda);
        pos.y.push_back(p.kr_ratio_position);
        mom.x.push_back(p.lambda);
        mom.y.push_back(p.kr_ratio_momentum);
    }
    write_svg(path, axes, {band, center, pos, mom});
}

void emit_udist_figure(const UDistResult& result, const std::filesystem::path& path)
{
    Axes axes;
    axes.title = "Rescaled second Schmidt weight, pooled small-lambda samples";
    axes.xlabel = "u";
    axes.ylabel = "density";
    axes.x_min = 0.0;
    axes.x_max = result.config.u_max;
    axes.y_min = 0.0;

    Series bars;
    bars.style = Series::Style::Bars;
    bars.color = "#1f77b4";
    bars.label = "eigenstates (" + to_string(result.config.model.kind) + ")";
    const double width = result.pooled.bin_width();
    const std::vector<double> centers = result.pooled.bin_centers();
    for (std::size_t b = 0; b < centers.size(); ++b) {
        bars.x.push_back(centers[b]);
        bars.y.push_back(result.cell_probabilities[b] / width);
    }
    Series curve;
    curve.style = Series::Style::Line;
    curve.color = "#d62728";
    curve.label = "universal density";
    for (int i = 0; i <= 200; ++i) {
        const double u = result.config.u_max * i / 200.0;
        curve.x.push_back(u);
        curve.y.push_back(theory::u_density(u));
    }
    write_svg(path, axes, {bars, curve});
}

} // namespace entrans

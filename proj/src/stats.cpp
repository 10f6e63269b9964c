#include "entrans/stats.hpp"

#include <cmath>

#include <gsl/gsl_cdf.h>

#include "entrans/errors.hpp"

namespace entrans {

std::pair<double, double> mean_and_stderr(std::span<const double> values)
{
    const std::size_t n = values.size();
    if (n == 0)
        throw config_error("mean_and_stderr: empty sample");
    double sum = 0.0;
    for (const double v : values)
        sum += v;
    const double mean = sum / static_cast<double>(n);
    if (n == 1)
        return {mean, 0.0};
    double ss = 0.0;
    for (const double v : values)
        ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

long long Histogram::total() const
{
    long long t = underflow + overflow;
    for (const long long c : counts)
        t += c;
    return t;
}

double Histogram::bin_width() const
{
    return (hi - lo) / static_cast<double>(counts.size());
}

std::vector<double> Histogram::cell_probabilities() const
{
    const double t = static_cast<double>(total());
    std::vector<double> p;
    p.reserve(counts.size() + 1);
    for (const long long c : counts)
        p.push_back(static_cast<double>(c) / t);
    p.push_back(static_cast<double>(overflow) / t);
    return p;
}

std::vector<double> Histogram::bin_centers() const
{
    std::vector<double> centers(counts.size());
    const double w = bin_width();
    for (std::size_t i = 0; i < counts.size(); ++i)
        centers[i] = lo + (static_cast<double>(i) + 0.5) * w;
    return centers;
}

Histogram make_histogram(std::span<const double> values, int bins, double lo, double hi)
{
    if (bins < 1)
        throw config_error("make_histogram: need at least one bin");
    if (!(hi > lo))
        throw config_error("make_histogram: hi must exceed lo");
    if (values.empty())
        throw config_error("make_histogram: empty sample");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    const double inv_width = bins / (hi - lo);
    for (const double v : values) {
        if (v < lo) {
            ++h.underflow;
        } else if (v >= hi) {
            ++h.overflow;
        } else {
            int b = static_cast<int>((v - lo) * inv_width);
            if (b >= bins)  // guard the rounding edge just below hi
                b = bins - 1;
            ++h.counts[b];
        }
    }
    return h;
}

double tv_distance(std::span<const double> p, std::span<const double> q)
{
    if (p.size() != q.size())
        throw config_error("tv_distance: distributions must share the cell set");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        d += std::abs(p[i] - q[i]);
    return 0.5 * d;
}

double chi2_uniform_pvalue(std::span<const long long> counts)
{
    if (counts.size() < 2)
        throw config_error("chi2_uniform_pvalue: need at least two cells");
    long long total = 0;
    for (const long long c : counts)
        total += c;
    if (total == 0)
        throw config_error("chi2_uniform_pvalue: empty counts");
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (const long long c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return gsl_cdf_chisq_Q(stat, static_cast<double>(counts.size() - 1));
}

double chi2_two_sample_pvalue(std::span<const long long> a, std::span<const long long> b)
{
    if (a.size() != b.size())
        throw config_error("chi2_two_sample_pvalue: count vectors must share the cell set");
    long long na = 0, nb = 0;
    for (const long long c : a)
        na += c;
    for (const long long c : b)
        nb += c;
    if (na == 0 || nb == 0)
        throw config_error("chi2_two_sample_pvalue: empty sample");
    const double k1 = std::sqrt(static_cast<double>(nb) / static_cast<double>(na));
    const double k2 = std::sqrt(static_cast<double>(na) / static_cast<double>(nb));
    double stat = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = static_cast<double>(a[i]);
        const double bi = static_cast<double>(b[i]);
        if (ai + bi == 0.0)
            continue;
        const double d = k1 * ai - k2 * bi;
        stat += d * d / (ai + bi);
        ++used;
    }
    if (used < 2)
        throw config_error("chi2_two_sample_pvalue: fewer than two populated cells");
    return gsl_cdf_chisq_Q(stat, static_cast<double>(used - 1));
}

} // namespace entrans

#include "entrans/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "entrans/errors.hpp"

namespace entrans {

namespace {

struct KeyParts {
    std::string name, k, basis;
};

KeyParts split_key(const std::string& key)
{
    const auto colon = key.find(':');
    if (colon != std::string::npos)
        return {key.substr(0, colon), "", key.substr(colon + 1)};
    if (key.size() > 1 && (key[0] == 'S' || key[0] == 'P') &&
        std::isdigit(static_cast<unsigned char>(key[1])))
        return {key.substr(0, 1), key.substr(1), ""};
    return {key, "", ""};
}

nlohmann::json stat_to_json(const MeasureStat& stat)
{
    nlohmann::json j{
        {"mean", stat.mean},
        {"stderr", stat.stderr_of_mean},
        {"n_samples", stat.n_samples},
        {"per_realization", stat.per_realization},
    };
    if (std::isnan(stat.theory))
        j["theory"] = nullptr;
    else
        j["theory"] = stat.theory;
    return j;
}

MeasureStat stat_from_json(const nlohmann::json& j)
{
    MeasureStat stat;
    j.at("mean").get_to(stat.mean);
    j.at("stderr").get_to(stat.stderr_of_mean);
    j.at("n_samples").get_to(stat.n_samples);
    j.at("per_realization").get_to(stat.per_realization);
    stat.theory = j.at("theory").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                           : j.at("theory").get<double>();
    return stat;
}

nlohmann::json histogram_to_json(const Histogram& h)
{
    return nlohmann::json{
        {"lo", h.lo},           {"hi", h.hi},
        {"counts", h.counts},   {"underflow", h.underflow},
        {"overflow", h.overflow},
    };
}

Histogram histogram_from_json(const nlohmann::json& j)
{
    Histogram h;
    j.at("lo").get_to(h.lo);
    j.at("hi").get_to(h.hi);
    j.at("counts").get_to(h.counts);
    j.at("underflow").get_to(h.underflow);
    j.at("overflow").get_to(h.overflow);
    return h;
}

} // namespace

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sweep_csv(const SweepResult& result)
{
    std::string csv = "lambda,sqrt_lambda,measure_name,k,basis,mean,stderr,theory_value,"
                      "n_samples\n";
    for (const SweepPoint& point : result.points) {
        for (const std::string& key : result.key_order) {
            const auto it = point.measures.find(key);
            if (it == point.measures.end())
                continue;
            const MeasureStat& stat = it->second;
            const KeyParts parts = split_key(key);
            csv += format_number(point.lambda) + ',' + format_number(std::sqrt(point.lambda)) +
                   ',' + parts.name + ',' + parts.k + ',' + parts.basis + ',' +
                   format_number(stat.mean) + ',' + format_number(stat.stderr_of_mean) + ',' +
                   format_number(stat.theory) + ',' + std::to_string(stat.n_samples) + '\n';
        }
    }
    return csv;
}

nlohmann::json sweep_to_json(const SweepResult& result)
{
    nlohmann::json points = nlohmann::json::array();
    for (const SweepPoint& point : result.points) {
        nlohmann::json measures;
        for (const auto& [key, stat] : point.measures)
            measures[key] = stat_to_json(stat);
        points.push_back(nlohmann::json{{"lambda", point.lambda},
                                        {"coupling", point.coupling},
                                        {"measures", std::move(measures)}});
    }
    return nlohmann::json{
        {"type", "sweep"},
        {"version", 1},
        {"config", result.config},
        {"key_order", result.key_order},
        {"points", std::move(points)},
        {"failed_realizations", result.failed_realizations},
        {"failures", result.failures},
    };
}

SweepResult sweep_from_json(const nlohmann::json& j)
{
    if (j.value("type", "") != "sweep")
        throw config_error("sweep_from_json: not a sweep manifest");
    SweepResult result;
    j.at("config").get_to(result.config);
    j.at("key_order").get_to(result.key_order);
    for (const auto& pj : j.at("points")) {
        SweepPoint point;
        pj.at("lambda").get_to(point.lambda);
        pj.at("coupling").get_to(point.coupling);
        for (const auto& [key, sj] : pj.at("measures").items())
            point.measures.emplace(key, stat_from_json(sj));
        result.points.push_back(std::move(point));
    }
    j.at("failed_realizations").get_to(result.failed_realizations);
    j.at("failures").get_to(result.failures);
    return result;
}

std::string udist_csv(const UDistResult& result)
{
    std::string csv = "bin_lo,bin_hi,count,probability,theory_mass\n";
    const Histogram& h = result.pooled;
    const double width = h.bin_width();
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        csv += format_number(h.lo + b * width) + ',' + format_number(h.lo + (b + 1) * width) +
               ',' + std::to_string(h.counts[b]) + ',' +
               format_number(result.cell_probabilities[b]) + ',' +
               format_number(result.theory_cell_mass[b]) + '\n';
    }
    csv += format_number(h.hi) + ",inf," + std::to_string(h.overflow) + ',' +
           format_number(result.cell_probabilities.back()) + ',' +
           format_number(result.theory_cell_mass.back()) + '\n';
    return csv;
}

nlohmann::json udist_to_json(const UDistResult& result)
{
    nlohmann::json per_lambda = nlohmann::json::array();
    for (const Histogram& h : result.per_lambda)
        per_lambda.push_back(histogram_to_json(h));
    return nlohmann::json{
        {"type", "udist"},
        {"version", 1},
        {"config", result.config},
        {"pooled", histogram_to_json(result.pooled)},
        {"per_lambda", std::move(per_lambda)},
        {"cell_probabilities", result.cell_probabilities},
        {"theory_cell_mass", result.theory_cell_mass},
        {"tv_to_theory", result.tv_to_theory},
        {"pairwise_pvalues", result.pairwise_pvalues},
        {"total_samples", result.total_samples},
        {"failed_realizations", result.failed_realizations},
        {"failures", result.failures},
    };
}

UDistResult udist_from_json(const nlohmann::json& j)
{
    if (j.value("type", "") != "udist")
        throw config_error("udist_from_json: not a udist manifest");
    UDistResult result;
    j.at("config").get_to(result.config);
    result.pooled = histogram_from_json(j.at("pooled"));
    for (const auto& hj : j.at("per_lambda"))
        result.per_lambda.push_back(histogram_from_json(hj));
    j.at("cell_probabilities").get_to(result.cell_probabilities);
    j.at("theory_cell_mass").get_to(result.theory_cell_mass);
    j.at("tv_to_theory").get_to(result.tv_to_theory);
    j.at("pairwise_pvalues").get_to(result.pairwise_pvalues);
    j.at("total_samples").get_to(result.total_samples);
    j.at("failed_realizations").get_to(result.failed_realizations);
    j.at("failures").get_to(result.failures);
    return result;
}

std::string ipr_ratio_csv(const IprRatioResult& result)
{
    std::string csv = "lambda,sqrt_lambda,rmt_ratio_mean,rmt_ratio_sigma,kr_ratio_position,"
                      "kr_ratio_momentum,position_within_band,momentum_within_band\n";
    for (const IprRatioPoint& p : result.points) {
        csv += format_number(p.lambda) + ',' + format_number(std::sqrt(p.lambda)) + ',' +
               format_number(p.rmt_ratio_mean) + ',' + format_number(p.rmt_ratio_sigma) + ',' +
               format_number(p.kr_ratio_position) + ',' + format_number(p.kr_ratio_momentum) +
               ',' + (p.position_within_band ? "1" : "0") + ',' +
               (p.momentum_within_band ? "1" : "0") + '\n';
    }
    return csv;
}

nlohmann::json ipr_ratio_to_json(const IprRatioResult& result)
{
    nlohmann::json points = nlohmann::json::array();
    for (const IprRatioPoint& p : result.points)
        points.push_back(nlohmann::json{
            {"lambda", p.lambda},
            {"rmt_ratio_mean", p.rmt_ratio_mean},
            {"rmt_ratio_sigma", p.rmt_ratio_sigma},
            {"kr_ratio_position", p.kr_ratio_position},
            {"kr_ratio_momentum", p.kr_ratio_momentum},
            {"position_within_band", p.position_within_band},
            {"momentum_within_band", p.momentum_within_band},
        });
    return nlohmann::json{
        {"type", "ipr_ratio"},
        {"version", 1},
        {"rmt_config", result.rmt_config},
        {"kr_config", result.kr_config},
        {"points", std::move(points)},
    };
}

IprRatioResult ipr_ratio_from_json(const nlohmann::json& j)
{
    if (j.value("type", "") != "ipr_ratio")
        throw config_error("ipr_ratio_from_json: not an ipr_ratio manifest");
    IprRatioResult result;
    j.at("rmt_config").get_to(result.rmt_config);
    j.at("kr_config").get_to(result.kr_config);
    for (const auto& pj : j.at("points")) {
        IprRatioPoint p;
        pj.at("lambda").get_to(p.lambda);
        pj.at("rmt_ratio_mean").get_to(p.rmt_ratio_mean);
        pj.at("rmt_ratio_sigma").get_to(p.rmt_ratio_sigma);
        pj.at("kr_ratio_position").get_to(p.kr_ratio_position);
        pj.at("kr_ratio_momentum").get_to(p.kr_ratio_momentum);
        pj.at("position_within_band").get_to(p.position_within_band);
        pj.at("momentum_within_band").get_to(p.momentum_within_band);
        result.points.push_back(p);
    }
    return result;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw config_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out)
        throw config_error("failed writing " + path.string());
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j)
{
    write_text_file(path, j.dump(2) + "\n");
}

nlohmann::json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("cannot open " + path.string());
    return nlohmann::json::parse(in);
}

} // namespace entrans

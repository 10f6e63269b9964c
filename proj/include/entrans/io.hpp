#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "entrans/ipr_ratio.hpp"
#include "entrans/sweep.hpp"
#include "entrans/udist.hpp"

namespace entrans {

// Flat CSV view of a sweep, one row per (grid point, measure):
// lambda, sqrt_lambda, measure_name, k, basis, mean, stderr, theory_value,
// n_samples. Measure keys decompose as "S3" -> (S, 3, ""), "ipr:momentum"
// -> (ipr, "", momentum). Byte-identical for identical results.
std::string sweep_csv(const SweepResult& result);

// Lossless JSON manifest (embeds the config, including the model and seed,
// plus per-realization data); sweep_from_json inverts it exactly.
nlohmann::json sweep_to_json(const SweepResult& result);
SweepResult sweep_from_json(const nlohmann::json& j);

// Histogram table: bin_lo, bin_hi, count, probability, theory_mass; the
// final row is the overflow cell.
std::string udist_csv(const UDistResult& result);
nlohmann::json udist_to_json(const UDistResult& result);
UDistResult udist_from_json(const nlohmann::json& j);

std::string ipr_ratio_csv(const IprRatioResult& result);
nlohmann::json ipr_ratio_to_json(const IprRatioResult& result);
IprRatioResult ipr_ratio_from_json(const nlohmann::json& j);

void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

// Shortest exact decimal form ("%.17g"); NaN prints as "nan".
std::string format_number(double v);

} // namespace entrans

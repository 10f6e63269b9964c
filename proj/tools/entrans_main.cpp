// Command-line laboratory for the entanglement/localization transition of
// eigenstates of two coupled strongly chaotic systems.
//
//   entrans sweep     --model rmt --n 50 --lambda-grid logspace:1e-4:10:24 --out out/
//   entrans udist     --model kr --lambda-grid 1e-5,1e-4,1e-3 --out out/
//   entrans ipr-ratio --n 50 --realizations 20 --out out/
//   entrans plot      --in out/sweep.json --out out/sweep.svg
//
// Grids accept either comma-separated values or logspace:<lo>:<hi>:<count>.
// A --config file (JSON) seeds the run configuration; explicit flags win.
// Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entrans/errors.hpp"
#include "entrans/io.hpp"
#include "entrans/ipr_ratio.hpp"
#include "entrans/svgplot.hpp"
#include "entrans/sweep.hpp"
#include "entrans/udist.hpp"

namespace {

using namespace entrans;

std::vector<double> parse_grid(const std::string& text)
{
    std::vector<double> grid;
    if (text.starts_with("logspace:")) {
        double lo = 0.0, hi = 0.0;
        int count = 0;
        if (std::sscanf(text.c_str(), "logspace:%lf:%lf:%d", &lo, &hi, &count) != 3)
            throw config_error("grid: expected logspace:<lo>:<hi>:<count>, got '" + text + "'");
        if (!(lo > 0.0) || !(hi > lo) || count < 2)
            throw config_error("grid: logspace needs 0 < lo < hi and count >= 2");
        const double llo = std::log10(lo), lhi = std::log10(hi);
        for (int i = 0; i < count; ++i)
            grid.push_back(std::pow(10.0, llo + (lhi - llo) * i / (count - 1)));
        return grid;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string field = text.substr(pos, comma - pos);
        try {
            grid.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw config_error("grid: cannot parse value '" + field + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (grid.empty())
        throw config_error("grid: empty");
    return grid;
}

std::vector<int> parse_k_set(const std::string& text)
{
    std::vector<int> ks;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string field = text.substr(pos, comma - pos);
        try {
            ks.push_back(std::stoi(field));
        } catch (const std::exception&) {
            throw config_error("k-set: cannot parse value '" + field + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (ks.empty())
        throw config_error("k-set: empty");
    return ks;
}

struct CommonArgs {
    std::string model = "rmt";
    int n = 50;
    std::string lambda_grid;
    int realizations = 0;
    std::string k_set;
    std::uint64_t seed = 42;
    std::string out = "entrans_out";
    std::string format = "both";
    int threads = 0;
    std::string config_file;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_model = true, bool with_k_set = true)
{
    if (with_model)
        cmd->add_option("--model", args.model, "model kind: rmt or kr")
            ->check(CLI::IsMember({"rmt", "kr"}));
    cmd->add_option("--n", args.n, "subsystem dimension");
    cmd->add_option("--lambda-grid", args.lambda_grid,
                    "grid: v1,v2,... or logspace:<lo>:<hi>:<count>");
    cmd->add_option("--realizations", args.realizations, "ensemble size (0 = model default)");
    if (with_k_set)
        cmd->add_option("--k-set", args.k_set, "entropy orders, e.g. 1,2,3,4");
    cmd->add_option("--seed", args.seed, "master seed");
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--format", args.format, "output data format")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--threads", args.threads, "OpenMP threads (0 = default)");
    cmd->add_option("--config", args.config_file, "JSON config file; flags override it");
}

SweepConfig make_sweep_config(const CLI::App* cmd, const CommonArgs& args)
{
    SweepConfig config;
    if (!args.config_file.empty())
        read_json_file(args.config_file).get_to(config);
    if (cmd->count("--model"))
        config.model.kind = model_kind_from_string(args.model);
    if (cmd->count("--n"))
        config.model.n = args.n;
    if (cmd->count("--lambda-grid"))
        config.lambda_grid = parse_grid(args.lambda_grid);
    else if (config.lambda_grid.empty())
        config.lambda_grid = default_lambda_grid();
    if (cmd->count("--realizations"))
        config.realizations = args.realizations;
    if (cmd->count("--k-set"))
        config.k_set = parse_k_set(args.k_set);
    if (cmd->count("--seed"))
        config.master_seed = args.seed;
    if (cmd->count("--threads"))
        config.threads = args.threads;
    if (args.config_file.empty() && !cmd->count("--momentum-basis"))
        config.momentum_basis = config.model.kind == ModelKind::KickedRotor;
    return config;
}

// Writes the requested formats and returns a printable description of the
// files produced.
std::string write_formats(const std::string& format, const std::filesystem::path& dir,
                          const std::string& stem, const std::string& csv,
                          const nlohmann::json& json)
{
    if (format == "csv" || format == "both")
        write_text_file(dir / (stem + ".csv"), csv);
    if (format == "json" || format == "both")
        write_json_file(dir / (stem + ".json"), json);
    const std::string suffix = format == "both" ? ".{csv,json}" : "." + format;
    return (dir / (stem + suffix)).string();
}

int run_sweep_command(const CLI::App* cmd, const CommonArgs& args, bool momentum_flag)
{
    SweepConfig config = make_sweep_config(cmd, args);
    if (cmd->count("--momentum-basis"))
        config.momentum_basis = momentum_flag;
    const SweepResult result = run_sweep(config);
    const std::string wrote =
        write_formats(args.format, args.out, "sweep", sweep_csv(result), sweep_to_json(result));
    std::cout << "sweep: " << result.points.size() << " grid points, "
              << result.config.effective_realizations() << " realization(s) each";
    if (result.failed_realizations > 0)
        std::cout << ", " << result.failed_realizations << " failed";
    std::cout << "; wrote " << wrote << "\n";
    return 0;
}

int run_udist_command(const CLI::App* cmd, const CommonArgs& args, int bins, double u_max)
{
    UDistConfig config;
    if (!args.config_file.empty())
        read_json_file(args.config_file).get_to(config);
    if (cmd->count("--model"))
        config.model.kind = model_kind_from_string(args.model);
    if (cmd->count("--n"))
        config.model.n = args.n;
    if (cmd->count("--lambda-grid"))
        config.lambda_values = parse_grid(args.lambda_grid);
    if (cmd->count("--realizations"))
        config.realizations = args.realizations;
    if (cmd->count("--seed"))
        config.master_seed = args.seed;
    if (cmd->count("--threads"))
        config.threads = args.threads;
    if (cmd->count("--bins"))
        config.bins = bins;
    if (cmd->count("--u-max"))
        config.u_max = u_max;
    const UDistResult result = run_udist(config);
    const std::string wrote =
        write_formats(args.format, args.out, "udist", udist_csv(result), udist_to_json(result));
    std::cout << "udist: " << result.total_samples << " samples pooled from "
              << config.lambda_values.size() << " coupling value(s); TV to theory "
              << result.tv_to_theory << "; wrote " << wrote << "\n";
    return 0;
}

int run_ipr_ratio_command(const CLI::App* cmd, const CommonArgs& args, int kr_realizations)
{
    IprRatioConfig config;
    if (!args.config_file.empty())
        read_json_file(args.config_file).get_to(config);
    if (cmd->count("--n"))
        config.n = args.n;
    if (cmd->count("--lambda-grid"))
        config.lambda_grid = parse_grid(args.lambda_grid);
    if (cmd->count("--realizations"))
        config.rmt_realizations = args.realizations;
    if (cmd->count("--kr-realizations"))
        config.kr_realizations = kr_realizations;
    if (cmd->count("--seed"))
        config.master_seed = args.seed;
    if (cmd->count("--threads"))
        config.threads = args.threads;
    const IprRatioResult result = run_ipr_ratio(config);
    const std::string wrote = write_formats(args.format, args.out, "ipr_ratio",
                                            ipr_ratio_csv(result), ipr_ratio_to_json(result));
    int outside_momentum = 0, outside_position = 0;
    for (const auto& p : result.points) {
        outside_momentum += p.momentum_within_band ? 0 : 1;
        outside_position += p.position_within_band ? 0 : 1;
    }
    std::cout << "ipr-ratio: " << result.points.size() << " grid points; rotor momentum-basis "
              << "outside band at " << outside_momentum << ", position-basis at "
              << outside_position << "; wrote " << wrote << "\n";
    return 0;
}

int run_plot_command(const std::string& in, const std::string& out)
{
    const nlohmann::json j = read_json_file(in);
    const std::string type = j.value("type", "");
    if (type == "sweep")
        emit_entropy_figure(sweep_from_json(j), out);
    else if (type == "udist")
        emit_udist_figure(udist_from_json(j), out);
    else if (type == "ipr_ratio")
        emit_ipr_figure(ipr_ratio_from_json(j), out);
    else
        throw config_error("plot: unrecognized manifest type '" + type + "' in " + in);
    std::cout << "plot: wrote " << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"eigenstate entanglement and localization transitions of coupled "
                 "chaotic pairs"};
    app.require_subcommand(1);

    CommonArgs sweep_args;
    bool momentum_flag = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "entanglement sweep over coupling grid");
    add_common(sweep_cmd, sweep_args);
    sweep_cmd->add_flag("--momentum-basis", momentum_flag,
                        "also measure momentum-product IPRs (kr only)");

    CommonArgs udist_args;
    int bins = 60;
    double u_max = 4.0;
    auto* udist_cmd =
        app.add_subcommand("udist", "rescaled second-Schmidt-weight distribution");
    add_common(udist_cmd, udist_args, /*with_model=*/true, /*with_k_set=*/false);
    udist_cmd->add_option("--bins", bins, "histogram bins");
    udist_cmd->add_option("--u-max", u_max, "histogram upper edge");

    CommonArgs ratio_args;
    int kr_realizations = 1;
    auto* ratio_cmd =
        app.add_subcommand("ipr-ratio", "basis-resolved IPR ratio vs ensemble band");
    add_common(ratio_cmd, ratio_args, /*with_model=*/false, /*with_k_set=*/false);
    ratio_cmd->add_option("--kr-realizations", kr_realizations,
                          "rotor-pair boundary-phase realizations");

    std::string plot_in, plot_out = "plot.svg";
    auto* plot_cmd = app.add_subcommand("plot", "render a result manifest as SVG");
    plot_cmd->add_option("--in", plot_in, "input JSON manifest")->required();
    plot_cmd->add_option("--out", plot_out, "output SVG path");

    try {
        app.parse(argc, argv);
        if (sweep_cmd->parsed())
            return run_sweep_command(sweep_cmd, sweep_args, momentum_flag);
        if (udist_cmd->parsed())
            return run_udist_command(udist_cmd, udist_args, bins, u_max);
        if (ratio_cmd->parsed())
            return run_ipr_ratio_command(ratio_cmd, ratio_args, kr_realizations);
        if (plot_cmd->parsed())
            return run_plot_command(plot_in, plot_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

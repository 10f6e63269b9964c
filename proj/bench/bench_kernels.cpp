// Timing comparison of the OpenMP kernels against the serial reference
// implementations, with an equality check so speed never hides a divergence.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entrans/execution.hpp"
#include "entrans/haar.hpp"
#include "entrans/kernels.hpp"
#include "entrans/measures.hpp"
#include "entrans/perturbation.hpp"
#include "entrans/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Timed {
    double serial = 0.0;
    double parallel = 0.0;
    bool identical = false;
};

void report(const char* name, const Timed& t)
{
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name,
                t.serial, t.parallel, t.serial / t.parallel,
                t.identical ? "results identical" : "RESULTS DIFFER");
}

bool same(double a, double b)
{
    return a == b || (std::isnan(a) && std::isnan(b));
}

} // namespace

int main(int argc, char** argv)
{
    int n = 50;
    int states = 192;
    long long mc_samples = 2'000'000;
    int ipr_samples = 20'000;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const auto next = [&]() -> const char* {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "missing value for %s\n", arg.c_str());
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--n")
            n = std::atoi(next());
        else if (arg == "--states")
            states = std::atoi(next());
        else if (arg == "--mc-samples")
            mc_samples = std::atoll(next());
        else if (arg == "--ipr-samples")
            ipr_samples = std::atoi(next());
        else {
            std::fprintf(stderr,
                         "usage: bench_kernels [--n N] [--states M] [--mc-samples S] "
                         "[--ipr-samples S]\n");
            return 2;
        }
    }

    std::printf("kernel benchmark: n=%d, states=%d, mc_samples=%lld, ipr_samples=%d\n\n", n,
                states, mc_samples, ipr_samples);

    entrans::RandomStream stream(0xBE4CULL, 0);
    Eigen::MatrixXcd batch(n * n, states);
    for (int j = 0; j < states; ++j)
        batch.col(j) = entrans::sample_haar_state(n * n, stream);

    bool all_ok = true;

    {
        Timed t;
        auto t0 = Clock::now();
        const auto serial = entrans::schmidt_batch(batch, n, entrans::ExecPolicy::Serial);
        t.serial = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel = entrans::schmidt_batch(batch, n, entrans::ExecPolicy::Parallel);
        t.parallel = seconds_since(t0);
        t.identical = serial.size() == parallel.size();
        for (std::size_t j = 0; t.identical && j < serial.size(); ++j)
            t.identical = serial[j].weights == parallel[j].weights;
        report("schmidt_batch", t);
        all_ok = all_ok && t.identical;
    }

    {
        const std::vector<int> k_set{1, 2, 3, 4};
        entrans::RandomStream basis_stream(0xBE4CULL, 1);
        const std::vector<entrans::IprBasis> bases{
            entrans::IprBasis::computational(),
            entrans::IprBasis::product("haar", entrans::sample_cue(n, basis_stream),
                                       entrans::sample_cue(n, basis_stream)),
        };
        Timed t;
        auto t0 = Clock::now();
        const auto serial =
            entrans::measure_states(batch, n, k_set, bases, entrans::ExecPolicy::Serial);
        t.serial = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel =
            entrans::measure_states(batch, n, k_set, bases, entrans::ExecPolicy::Parallel);
        t.parallel = seconds_since(t0);
        t.identical = serial.size() == parallel.size();
        for (std::size_t j = 0; t.identical && j < serial.size(); ++j) {
            t.identical = serial[j].entropies == parallel[j].entropies &&
                          serial[j].moments == parallel[j].moments &&
                          serial[j].iprs == parallel[j].iprs &&
                          same(serial[j].lambda1, parallel[j].lambda1) &&
                          same(serial[j].lambda2, parallel[j].lambda2);
        }
        report("measure_states", t);
        all_ok = all_ok && t.identical;
    }

    {
        entrans::RandomStream state_stream(0xBE4CULL, 2);
        const Eigen::VectorXcd state = entrans::sample_haar_state(n * n, state_stream);
        const entrans::RandomStream mc_stream(0xBE4CULL, 3);
        Timed t;
        auto t0 = Clock::now();
        const auto serial = entrans::ipr_product_haar_average(state, n, ipr_samples, mc_stream,
                                                              entrans::ExecPolicy::Serial);
        t.serial = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel = entrans::ipr_product_haar_average(state, n, ipr_samples, mc_stream,
                                                                entrans::ExecPolicy::Parallel);
        t.parallel = seconds_since(t0);
        t.identical = same(serial.first, parallel.first) && same(serial.second, parallel.second);
        report("ipr_product_haar_average", t);
        all_ok = all_ok && t.identical;
    }

    {
        const entrans::RandomStream mc_stream(0xBE4CULL, 4);
        Timed t;
        auto t0 = Clock::now();
        const auto serial = entrans::mc_lambda1_mean(1e-4, mc_samples, mc_stream, 0.0,
                                                     entrans::ExecPolicy::Serial);
        t.serial = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel = entrans::mc_lambda1_mean(1e-4, mc_samples, mc_stream, 0.0,
                                                       entrans::ExecPolicy::Parallel);
        t.parallel = seconds_since(t0);
        t.identical = same(serial.first, parallel.first) && same(serial.second, parallel.second);
        report("mc_lambda1_mean", t);
        all_ok = all_ok && t.identical;
    }

    if (!all_ok) {
        std::printf("\nFAIL: at least one kernel diverged from the serial reference\n");
        return 1;
    }
    std::printf("\nall kernels agree with the serial reference\n");
    return 0;
}

#include <cmath>
#include <vector>

#include <doctest.h>
#include <Eigen/Dense>

#include "entrans/errors.hpp"
#include "entrans/haar.hpp"
#include "entrans/kernels.hpp"
#include "entrans/measures.hpp"
#include "entrans/rng.hpp"
#include "entrans/spectral.hpp"

using entrans::ExecPolicy;
using entrans::IprBasis;
using entrans::RandomStream;
using entrans::SchmidtSpectrum;

namespace {

SchmidtSpectrum spectrum_of(std::initializer_list<double> weights)
{
    SchmidtSpectrum s;
    s.weights.resize(static_cast<int>(weights.size()));
    int i = 0;
    for (const double w : weights)
        s.weights(i++) = w;
    return s;
}

} // namespace

TEST_SUITE("measures") {

TEST_CASE("moments of a two-point spectrum")
{
    const auto s = spectrum_of({0.9, 0.1});
    CHECK(entrans::moment(s, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(entrans::moment(s, 2) == doctest::Approx(0.82).epsilon(1e-15));
    CHECK(entrans::moment(s, 3) == doctest::Approx(0.730).epsilon(1e-15));
    CHECK(entrans::moment(s, 4) == doctest::Approx(0.6562).epsilon(1e-15));
}

TEST_CASE("entropies of a two-point spectrum")
{
    const auto s = spectrum_of({0.9, 0.1});
    CHECK(entrans::hct_entropy(s, 2) == doctest::Approx(0.18).epsilon(1e-14));
    CHECK(entrans::hct_entropy(s, 3) == doctest::Approx(0.135).epsilon(1e-14));
    // -0.9 ln 0.9 - 0.1 ln 0.1
    CHECK(entrans::von_neumann_entropy(s) ==
          doctest::Approx(0.3250829733914482).epsilon(1e-14));
    CHECK(entrans::entropy(s, 1) == entrans::von_neumann_entropy(s));
    CHECK(entrans::entropy(s, 3) == entrans::hct_entropy(s, 3));
    CHECK_THROWS_AS((void)entrans::hct_entropy(s, 1), entrans::config_error);
}

TEST_CASE("entropy conventions at the extremes")
{
    const auto pure = spectrum_of({1.0, 0.0, 0.0});
    CHECK(entrans::von_neumann_entropy(pure) == 0.0);  // 0 log 0 = 0
    CHECK(entrans::hct_entropy(pure, 2) == doctest::Approx(0.0).epsilon(1e-15));

    const auto flat = spectrum_of({0.25, 0.25, 0.25, 0.25});
    CHECK(entrans::von_neumann_entropy(flat) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(entrans::hct_entropy(flat, 2) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("computational-basis participation")
{
    Eigen::VectorXcd basis_state = Eigen::VectorXcd::Zero(9);
    basis_state(4) = 1.0;
    CHECK(entrans::ipr(basis_state, IprBasis::computational()) == doctest::Approx(1.0));

    const Eigen::VectorXcd flat = Eigen::VectorXcd::Constant(9, 1.0 / 3.0);
    CHECK(entrans::ipr(flat, IprBasis::computational()) == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("product-basis participation matches the transformed state")
{
    RandomStream s(13, 0);
    const int n = 4;
    const Eigen::VectorXcd psi = entrans::sample_haar_state(n * n, s);
    const Eigen::MatrixXcd b1 = entrans::sample_cue(n, s);
    const Eigen::MatrixXcd b2 = entrans::sample_cue(n, s);
    const auto basis = IprBasis::product("test", b1, b2);
    const Eigen::VectorXcd phi = entrans::product_basis_transform(psi, b1, b2);
    CHECK(entrans::ipr(psi, basis) ==
          doctest::Approx(entrans::ipr(phi, IprBasis::computational())).epsilon(1e-13));
}

TEST_CASE("ipr scale conversions")
{
    const int n = 50;
    // Mean product-basis participation of a pure product state: 4/(n+1)^2.
    CHECK(entrans::purity_to_ipr(1.0, n) == doctest::Approx(4.0 / (51.0 * 51.0)).epsilon(1e-15));
    CHECK(entrans::rescaled_ipr(0.001, n) == doctest::Approx(1.3005).epsilon(1e-14));
    for (const double p2 : {0.02, 0.4, 1.0})
        CHECK(entrans::rescaled_ipr(entrans::purity_to_ipr(p2, n), n) ==
              doctest::Approx(1.0 + p2).epsilon(1e-14));
    // Purity below the flat-spectrum floor 1/n or above 1 is impossible.
    CHECK_THROWS_AS((void)entrans::purity_to_ipr(0.001, n), entrans::config_error);
    CHECK_THROWS_AS((void)entrans::purity_to_ipr(1.5, n), entrans::config_error);
}

TEST_CASE("haar product-basis average reproduces the purity formula")
{
    RandomStream state_stream(29, 0);
    const int n = 5;
    const Eigen::VectorXcd psi = entrans::sample_haar_state(n * n, state_stream);
    const double p2 = entrans::moment(entrans::schmidt_spectrum(psi, n), 2);
    const double predicted = entrans::purity_to_ipr(p2, n);

    const RandomStream mc(29, 1);
    const auto [mean, se] = entrans::ipr_product_haar_average(psi, n, 4000, mc);
    CHECK(se > 0.0);
    CHECK(std::abs(mean - predicted) < 4.0 * se);

    // Deterministic and policy-independent.
    const auto again = entrans::ipr_product_haar_average(psi, n, 4000, mc);
    CHECK(again.first == mean);
    CHECK(again.second == se);
    const auto parallel =
        entrans::ipr_product_haar_average(psi, n, 4000, mc, ExecPolicy::Parallel);
    CHECK(parallel.first == mean);
    CHECK(parallel.second == se);
}

TEST_CASE("measure_state: one decomposition feeds every measure")
{
    RandomStream s(37, 0);
    const int n = 4;
    const Eigen::VectorXcd psi = entrans::sample_haar_state(n * n, s);
    const std::vector<int> k_set{1, 2, 3, 4};
    const std::vector<IprBasis> bases{
        IprBasis::computational(),
        IprBasis::product("rot", entrans::sample_cue(n, s), entrans::sample_cue(n, s)),
    };
    const auto rec = entrans::measure_state(psi, n, k_set, bases, 17);
    CHECK(rec.state_index == 17);
    CHECK(rec.k_set == k_set);
    CHECK(rec.basis_labels == std::vector<std::string>{"computational", "rot"});

    const auto spec = entrans::schmidt_spectrum(psi, n);
    for (std::size_t i = 0; i < k_set.size(); ++i) {
        CHECK(rec.entropies[i] == doctest::Approx(entrans::entropy(spec, k_set[i])).epsilon(1e-14));
        CHECK(rec.moments[i] == doctest::Approx(entrans::moment(spec, k_set[i])).epsilon(1e-14));
    }
    CHECK(rec.lambda1 == doctest::Approx(spec.weights(0)).epsilon(1e-14));
    CHECK(rec.lambda2 == doctest::Approx(spec.weights(1)).epsilon(1e-14));
    CHECK(rec.lambda1 >= rec.lambda2);
    CHECK(rec.iprs[0] == doctest::Approx(entrans::ipr(psi, bases[0])).epsilon(1e-14));
    CHECK(rec.iprs[1] == doctest::Approx(entrans::ipr(psi, bases[1])).epsilon(1e-14));
}

TEST_CASE("batch kernels match the per-state path under both policies")
{
    RandomStream s(43, 0);
    const int n = 5, count = 7;
    Eigen::MatrixXcd batch(n * n, count);
    for (int j = 0; j < count; ++j)
        batch.col(j) = entrans::sample_haar_state(n * n, s);
    const std::vector<int> k_set{1, 2};
    const std::vector<IprBasis> bases{IprBasis::computational()};

    const auto serial = entrans::measure_states(batch, n, k_set, bases, ExecPolicy::Serial);
    const auto parallel = entrans::measure_states(batch, n, k_set, bases, ExecPolicy::Parallel);
    REQUIRE(serial.size() == count);
    REQUIRE(parallel.size() == count);
    for (int j = 0; j < count; ++j) {
        const auto direct = entrans::measure_state(batch.col(j), n, k_set, bases, j);
        CHECK(serial[j].state_index == j);
        CHECK(serial[j].entropies == direct.entropies);
        CHECK(serial[j].moments == direct.moments);
        CHECK(serial[j].iprs == direct.iprs);
        CHECK(serial[j].lambda1 == direct.lambda1);
        CHECK(parallel[j].entropies == serial[j].entropies);
        CHECK(parallel[j].iprs == serial[j].iprs);
    }

    const auto spectra_s = entrans::schmidt_batch(batch, n, ExecPolicy::Serial);
    const auto spectra_p = entrans::schmidt_batch(batch, n, ExecPolicy::Parallel);
    for (int j = 0; j < count; ++j) {
        CHECK(spectra_s[j].weights == spectra_p[j].weights);
        CHECK((spectra_s[j].weights - entrans::schmidt_spectrum(batch.col(j), n).weights)
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }
}

} // TEST_SUITE

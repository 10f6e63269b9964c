#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "entrans/execution.hpp"
#include "entrans/rng.hpp"
#include "entrans/spectral.hpp"

namespace entrans {

// k-th moment sum(w^k) of an entanglement spectrum; k = 1 gives 1 for a
// normalized spectrum.
double moment(const SchmidtSpectrum& spectrum, int k);

// Order-k entropy (1 - moment_k) / (k - 1), defined for k >= 2.
double hct_entropy(const SchmidtSpectrum& spectrum, int k);

// -sum(w log w) with 0 log 0 = 0.
double von_neumann_entropy(const SchmidtSpectrum& spectrum);

// Unified accessor: k = 1 is the von Neumann limit, k >= 2 the moment form.
double entropy(const SchmidtSpectrum& spectrum, int k);

// Basis in which an inverse participation ratio is evaluated. Computational
// means the basis the state vector is already expressed in; Product carries
// explicit factor matrices (columns = single-system basis states).
struct IprBasis {
    enum class Kind { Computational, Product };
    Kind kind = Kind::Computational;
    std::string label = "computational";
    Eigen::MatrixXcd b1, b2;

    static IprBasis computational();
    static IprBasis product(std::string label, Eigen::MatrixXcd b1, Eigen::MatrixXcd b2);
};

// sum |amplitude|^4 of the state in the requested basis.
double ipr(const Eigen::VectorXcd& state, const IprBasis& basis);

// Mean IPR over Haar-random product bases, as a function of the state's
// entanglement purity p2: 2 (1 + p2) / (n + 1)^2.
double purity_to_ipr(double p2, int n);

// IPR in units of its product-state average: (n + 1)^2 / 2 * ipr.
double rescaled_ipr(double ipr_value, int n);

// Monte-Carlo average of the IPR of `state` over Haar product bases
// (v1 (x) v2); returns (mean, standard error). Deterministic for a given
// stream position, independent of the execution policy.
std::pair<double, double> ipr_product_haar_average(const Eigen::VectorXcd& state, int n,
                                                  int samples, const RandomStream& stream,
                                                  ExecPolicy policy = ExecPolicy::Serial);

// Everything measured on a single eigenstate.
struct MeasureRecord {
    int state_index = 0;
    std::vector<int> k_set;        // entropy orders, aligned with entropies/moments
    std::vector<double> entropies;
    std::vector<double> moments;   // moment k (k = 1 entries are always 1)
    double lambda1 = 0.0;          // largest Schmidt weight
    double lambda2 = 0.0;          // second largest (0 if n < 2)
    std::vector<std::string> basis_labels;
    std::vector<double> iprs;      // aligned with basis_labels
};

// One Schmidt decomposition feeding every requested measure.
MeasureRecord measure_state(const Eigen::VectorXcd& state, int n, std::span<const int> k_set,
                            std::span<const IprBasis> bases, int state_index = 0);

} // namespace entrans

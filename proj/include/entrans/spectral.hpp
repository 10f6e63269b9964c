#pragma once

#include <Eigen/Dense>

namespace entrans {

struct EigendecomposeOptions {
    double residual_tolerance = 1e-10;   // per-eigenpair accuracy contract
    double unitarity_tolerance = 1e-8;   // input admission threshold
    bool check_unitarity = true;         // column norms + sampled orthogonality
    bool full_unitarity_check = false;   // O(dim^3) U U^dag check (for tests)
    double cluster_gap = 1e-11;          // eigenphase gap defining a degenerate cluster
};

// Complete orthonormal eigenbasis of a unitary matrix.
struct EigenstateSet {
    int dim = 0;
    Eigen::VectorXd phases;     // eigenphases, ascending in (-pi, pi]
    Eigen::MatrixXcd vectors;   // column j pairs with phases[j]
    Eigen::VectorXd residuals;  // per-column ||U v - e^{i phase} v|| estimates
    double max_residual = 0.0;
    int refined_columns = 0;    // columns fixed by the degenerate-cluster fallback
};

// Schur decomposition route: for unitary (hence normal) input the Schur
// vectors are an orthonormal eigenbasis, and the strict upper triangle of the
// Schur form bounds each eigenpair's residual. Columns whose residual exceeds
// the tolerance are re-diagonalized inside their near-degenerate eigenphase
// cluster; if the contract still cannot be met, throws numerical_error.
EigenstateSet eigendecompose_unitary(const Eigen::MatrixXcd& u,
                                     const EigendecomposeOptions& options = {});

// Entanglement spectrum of a bipartite state on C^n (x) C^n: the squared
// singular values of the n x n coefficient matrix, descending. The input must
// hold the amplitude of (i1, i2) at linear index i1*n + i2 and be normalized.
struct SchmidtSpectrum {
    Eigen::VectorXd weights;
};

SchmidtSpectrum schmidt_spectrum(const Eigen::VectorXcd& state, int n);

// Amplitudes of `state` in the product basis with factor matrices b1, b2
// (columns = basis states): returns (b1 (x) b2)^dag state.
Eigen::VectorXcd product_basis_transform(const Eigen::VectorXcd& state,
                                         const Eigen::MatrixXcd& b1,
                                         const Eigen::MatrixXcd& b2);

} // namespace entrans

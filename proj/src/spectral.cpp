#include "entrans/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

// This lapack.h only honors pre-defined complex macros, not LAPACK_COMPLEX_CPP.
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "entrans/errors.hpp"
#include "entrans/rng.hpp"

extern "C" void openblas_set_num_threads(int);

namespace entrans {

namespace {

// Cheap admission check: every column must have unit norm, and a fixed
// pseudo-random sample of column pairs must be orthogonal. O(dim^2) instead
// of the O(dim^3) full product; catches non-unitary input without dominating
// the decomposition cost.
void check_unitary_sampled(const Eigen::MatrixXcd& u, double tol)
{
    const int dim = static_cast<int>(u.rows());
    for (int j = 0; j < dim; ++j)
        if (std::abs(u.col(j).norm() - 1.0) > tol)
            throw config_error("eigendecompose_unitary: input column " + std::to_string(j) +
                               " does not have unit norm");
    RandomStream pick(0xC0FFEE, 0);
    const int pairs = std::min(dim, 64);
    for (int s = 0; s < pairs; ++s) {
        const int i = static_cast<int>(pick.next_u64() % dim);
        int j = static_cast<int>(pick.next_u64() % dim);
        if (i == j)
            j = (j + 1) % dim;
        if (std::abs(u.col(i).dot(u.col(j))) > tol * std::sqrt(static_cast<double>(dim)))
            throw config_error("eigendecompose_unitary: input columns are not orthogonal");
    }
}

void sort_by_phase(EigenstateSet& set)
{
    const int dim = set.dim;
    std::vector<int> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](int a, int b) { return set.phases(a) < set.phases(b); });
    Eigen::VectorXd phases(dim), residuals(dim);
    Eigen::MatrixXcd vectors(dim, dim);
    for (int j = 0; j < dim; ++j) {
        phases(j) = set.phases(perm[j]);
        residuals(j) = set.residuals(perm[j]);
        vectors.col(j) = set.vectors.col(perm[j]);
    }
    set.phases = std::move(phases);
    set.residuals = std::move(residuals);
    set.vectors = std::move(vectors);
}

// Re-diagonalize the span of a near-degenerate eigenphase cluster. The Schur
// vectors of a normal matrix can mix inside such a cluster; projecting U onto
// the cluster subspace and re-solving the small problem restores eigenvectors
// while keeping orthonormality (the rotation applied is unitary).
void refine_cluster(const Eigen::MatrixXcd& u, EigenstateSet& set, int begin, int end)
{
    const int c = end - begin;
    const auto q = set.vectors.middleCols(begin, c);
    const Eigen::MatrixXcd uq = u * q;
    const Eigen::MatrixXcd m = q.adjoint() * uq;
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(m, true);
    if (schur.info() != Eigen::Success)
        throw numerical_error("eigendecompose_unitary: cluster refinement failed");
    const Eigen::MatrixXcd rotated = q * schur.matrixU();
    set.vectors.middleCols(begin, c) = rotated;
    for (int j = 0; j < c; ++j) {
        const std::complex<double> w = schur.matrixT()(j, j);
        set.phases(begin + j) = std::arg(w);
        set.residuals(begin + j) = (u * rotated.col(j) - w * rotated.col(j)).norm();
        ++set.refined_columns;
    }
}

} // namespace

EigenstateSet eigendecompose_unitary(const Eigen::MatrixXcd& u,
                                     const EigendecomposeOptions& options)
{
    const int dim = static_cast<int>(u.rows());
    if (dim < 1 || u.cols() != u.rows())
        throw config_error("eigendecompose_unitary: input must be square and nonempty");
    if (options.check_unitarity) {
        if (options.full_unitarity_check) {
            const double err =
                (u * u.adjoint() - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
            if (err > options.unitarity_tolerance)
                throw config_error("eigendecompose_unitary: input is not unitary (error " +
                                   std::to_string(err) + ")");
        } else {
            check_unitary_sampled(u, options.unitarity_tolerance);
        }
    }

    openblas_set_num_threads(1);

    Eigen::MatrixXcd t = u;  // overwritten with the Schur form
    Eigen::MatrixXcd q(dim, dim);
    Eigen::VectorXcd w(dim);
    lapack_int sdim = 0;
    const lapack_int info =
        LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, dim, t.data(), dim, &sdim,
                      w.data(), q.data(), dim);
    if (info != 0)
        throw numerical_error("eigendecompose_unitary: Schur decomposition failed (info " +
                              std::to_string(info) + ")");

    EigenstateSet set;
    set.dim = dim;
    set.phases.resize(dim);
    set.residuals.resize(dim);
    for (int j = 0; j < dim; ++j) {
        set.phases(j) = std::arg(w(j));
        // || U q_j - T_jj q_j || = || T e_j - T_jj e_j || = strict-upper column norm.
        set.residuals(j) = t.col(j).head(j).norm();
    }
    set.vectors = std::move(q);
    sort_by_phase(set);

    if (set.residuals.maxCoeff() > options.residual_tolerance) {
        int begin = 0;
        while (begin < dim) {
            int end = begin + 1;
            while (end < dim && set.phases(end) - set.phases(end - 1) < options.cluster_gap)
                ++end;
            const bool needs_fix =
                end - begin > 1 &&
                set.residuals.segment(begin, end - begin).maxCoeff() > options.residual_tolerance;
            if (needs_fix)
                refine_cluster(u, set, begin, end);
            begin = end;
        }
        sort_by_phase(set);
    }

    set.max_residual = set.residuals.maxCoeff();
    if (set.max_residual > options.residual_tolerance)
        throw numerical_error("eigendecompose_unitary: residual " +
                              std::to_string(set.max_residual) +
                              " exceeds tolerance; input may be too far from unitary");
    return set;
}

SchmidtSpectrum schmidt_spectrum(const Eigen::VectorXcd& state, int n)
{
    if (n < 2)
        throw config_error("schmidt_spectrum: subsystem dimension must be >= 2");
    if (state.size() != static_cast<Eigen::Index>(n) * n)
        throw config_error("schmidt_spectrum: state length must be n^2");
    if (std::abs(state.norm() - 1.0) > 1e-10)
        throw config_error("schmidt_spectrum: state must be normalized");

    // Coefficient matrix C(i1, i2) = state[i1*n + i2]; its singular values
    // squared are the entanglement spectrum. Row-major view, no copy yet;
    // zgesdd destroys its input so stage through a scratch buffer.
    using RowMajorMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                      Eigen::RowMajor>;
    Eigen::MatrixXcd scratch =
        Eigen::Map<const RowMajorMat>(state.data(), n, n);

    openblas_set_num_threads(1);
    Eigen::VectorXd sigma(n);
    const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', n, n, scratch.data(), n,
                                           sigma.data(), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw numerical_error("schmidt_spectrum: SVD failed (info " + std::to_string(info) +
                              ")");

    SchmidtSpectrum spectrum;
    spectrum.weights = sigma.array().square().max(0.0);
    return spectrum;
}

Eigen::VectorXcd product_basis_transform(const Eigen::VectorXcd& state,
                                         const Eigen::MatrixXcd& b1,
                                         const Eigen::MatrixXcd& b2)
{
    const int n = static_cast<int>(b1.rows());
    if (b1.cols() != n || b2.rows() != n || b2.cols() != n)
        throw config_error("product_basis_transform: basis matrices must be square and "
                           "of equal dimension");
    if (state.size() != static_cast<Eigen::Index>(n) * n)
        throw config_error("product_basis_transform: state length must match basis dimension");

    using RowMajorMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                      Eigen::RowMajor>;
    const auto c = Eigen::Map<const RowMajorMat>(state.data(), n, n);
    const RowMajorMat result = b1.adjoint() * c * b2.conjugate();
    return Eigen::Map<const Eigen::VectorXcd>(result.data(), static_cast<Eigen::Index>(n) * n);
}

} // namespace entrans

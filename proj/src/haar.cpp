#include "entrans/haar.hpp"

#include <cmath>
#include <complex>

#include "entrans/errors.hpp"

namespace entrans {

namespace {

Eigen::MatrixXcd ginibre(int n, RandomStream& stream)
{
    Eigen::MatrixXcd g(n, n);
    // Column-major fill so the draw order is part of the interface.
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            g(i, j) = stream.gaussian_complex();
    return g;
}

} // namespace

Eigen::MatrixXcd sample_cue(int n, RandomStream& stream)
{
    if (n < 1)
        throw config_error("sample_cue: dimension must be >= 1");
    const Eigen::MatrixXcd g = ginibre(n, stream);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    // QR alone is not Haar: absorb the phases of R's diagonal into Q so the
    // factorization is the unique one with positive diagonal.
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const std::complex<double> d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : std::complex<double>(1.0, 0.0);
    }
    return q;
}

Eigen::MatrixXd sample_interaction_phases(int n, RandomStream& stream)
{
    if (n < 1)
        throw config_error("sample_interaction_phases: dimension must be >= 1");
    Eigen::MatrixXd xi(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            xi(i, j) = stream.uniform_symmetric();
    return xi;
}

Eigen::VectorXcd sample_haar_state(int n, RandomStream& stream)
{
    if (n < 1)
        throw config_error("sample_haar_state: dimension must be >= 1");
    Eigen::VectorXcd psi(n);
    for (int i = 0; i < n; ++i)
        psi(i) = stream.gaussian_complex();
    psi /= psi.norm();
    return psi;
}

double unitarity_error(const Eigen::MatrixXcd& u)
{
    const int n = static_cast<int>(u.rows());
    return (u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

} // namespace entrans

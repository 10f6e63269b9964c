#pragma once

#include <Eigen/Dense>

#include "entrans/rng.hpp"

namespace entrans {

// Haar-distributed unitary (circular unitary ensemble): complex Ginibre
// matrix, QR factorization, R-phase fix so the distribution is exactly
// uniform. Consumes exactly 2*n*n draws from the stream.
Eigen::MatrixXcd sample_cue(int n, RandomStream& stream);

// n x n matrix of independent phases, each uniform on (-1/2, 1/2].
// Consumes exactly n*n draws.
Eigen::MatrixXd sample_interaction_phases(int n, RandomStream& stream);

// Haar-random unit vector in dimension n. Consumes exactly 2*n draws.
Eigen::VectorXcd sample_haar_state(int n, RandomStream& stream);

// Largest entry of |U U^dag - I|; cheap unitarity diagnostic.
double unitarity_error(const Eigen::MatrixXcd& u);

} // namespace entrans

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "entrans/execution.hpp"
#include "entrans/measures.hpp"
#include "entrans/spectral.hpp"

namespace entrans {

// Entanglement spectra of a batch of states (one per column, each of length
// n^2). The parallel policy distributes columns over OpenMP threads; output
// order and values are identical to the serial reference.
std::vector<SchmidtSpectrum> schmidt_batch(const Eigen::MatrixXcd& states, int n,
                                           ExecPolicy policy = ExecPolicy::Serial);

// Full measurement of a batch of states: one MeasureRecord per column.
std::vector<MeasureRecord> measure_states(const Eigen::MatrixXcd& states, int n,
                                          std::span<const int> k_set,
                                          std::span<const IprBasis> bases,
                                          ExecPolicy policy = ExecPolicy::Serial);

} // namespace entrans

#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "entrans/rng.hpp"

namespace entrans {

enum class ModelKind { Rmt, KickedRotor };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

// Bloch phases of the torus quantization; theta_q shifts the position grid,
// theta_p the momentum grid. Nonzero generic values break parity and
// time-reversal so the subsystem spectra are CUE-like.
struct BoundaryPhases {
    double theta_q = 0.0;
    double theta_p = 0.0;
};

// Everything needed to rebuild a coupled-pair Floquet operator exactly.
// `coupling` is the interaction strength: the phase scale epsilon for Rmt,
// the coupling constant b for KickedRotor. The seed fields record which
// random stream a Rmt realization was drawn from.
struct ModelSpec {
    ModelKind kind = ModelKind::Rmt;
    int n = 50;
    double coupling = 0.0;
    std::array<double, 2> kick_strengths{9.0, 10.0};
    std::array<BoundaryPhases, 2> boundary_phases{{{0.3157, 0.2021}, {0.2743, 0.1811}}};
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    void validate() const;  // throws config_error
};

void to_json(nlohmann::json& j, const BoundaryPhases& p);
void from_json(const nlohmann::json& j, BoundaryPhases& p);
void to_json(nlohmann::json& j, const ModelSpec& spec);
void from_json(const nlohmann::json& j, ModelSpec& spec);

// One-period propagator of the coupled pair, kept in factored form alongside
// the assembled n^2 x n^2 matrix. Row/column index convention throughout:
// the product-basis index of (i1, i2) is i1*n + i2.
struct FloquetOperator {
    ModelSpec spec;
    Eigen::MatrixXcd full;
    Eigen::MatrixXcd u1, u2;
    Eigen::VectorXcd interaction;  // diagonal of the coupling factor
};

// Random-ensemble pair: u1, u2 Haar unitaries, interaction phases
// exp(2*pi*i*eps*xi) with xi uniform on (-1/2, 1/2]. Consumes exactly 5*n*n
// draws from the stream.
FloquetOperator build_rmt_floquet(const ModelSpec& spec, RandomStream& stream);

// Quantized kicked rotor on an n-site torus: free propagation after a
// cos-potential kick, with Bloch phases threading both grids.
Eigen::MatrixXcd build_kr_subsystem(int n, double kick_strength, const BoundaryPhases& phases);

// Two kicked rotors coupled through a cos(2*pi*(q1+q2)) phase. Deterministic.
FloquetOperator build_kr_floquet(const ModelSpec& spec);

// Position -> momentum transform for one rotor (unitary for any phases).
Eigen::MatrixXcd kr_momentum_transform(int n, const BoundaryPhases& phases);

// Universal transition parameter of the given model (quadratic in coupling).
double transition_parameter(const ModelSpec& spec);

// Coupling that realizes a requested transition parameter; throws if the
// required coupling is outside the admissible range.
double coupling_for_lambda(ModelKind kind, int n, double lambda);

} // namespace entrans

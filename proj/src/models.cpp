#include "entrans/models.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "entrans/errors.hpp"
#include "entrans/haar.hpp"

namespace entrans {

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};

// full = (u1 (x) u2) * diag(interaction), assembled blockwise.
Eigen::MatrixXcd assemble(const Eigen::MatrixXcd& u1, const Eigen::MatrixXcd& u2,
                          const Eigen::VectorXcd& interaction)
{
    const int n = static_cast<int>(u1.rows());
    Eigen::MatrixXcd full(n * n, n * n);
    for (int j1 = 0; j1 < n; ++j1)
        for (int i1 = 0; i1 < n; ++i1)
            full.block(i1 * n, j1 * n, n, n) = u1(i1, j1) * u2;
    full = full * interaction.asDiagonal();
    return full;
}

} // namespace

std::string to_string(ModelKind kind)
{
    return kind == ModelKind::Rmt ? "rmt" : "kr";
}

ModelKind model_kind_from_string(const std::string& name)
{
    if (name == "rmt")
        return ModelKind::Rmt;
    if (name == "kr")
        return ModelKind::KickedRotor;
    throw config_error("unknown model kind '" + name + "' (expected rmt or kr)");
}

void ModelSpec::validate() const
{
    if (n < 2)
        throw config_error("ModelSpec: subsystem dimension must be >= 2");
    if (!(coupling >= 0.0) || !std::isfinite(coupling))
        throw config_error("ModelSpec: coupling must be finite and >= 0");
    if (kind == ModelKind::Rmt && coupling > 1.0)
        throw config_error("ModelSpec: rmt coupling epsilon must be <= 1 "
                           "(phases wrap beyond that)");
    if (kind == ModelKind::KickedRotor)
        for (const auto& k : kick_strengths)
            if (!std::isfinite(k))
                throw config_error("ModelSpec: kick strengths must be finite");
}

void to_json(nlohmann::json& j, const BoundaryPhases& p)
{
    j = nlohmann::json{{"theta_q", p.theta_q}, {"theta_p", p.theta_p}};
}

void from_json(const nlohmann::json& j, BoundaryPhases& p)
{
    j.at("theta_q").get_to(p.theta_q);
    j.at("theta_p").get_to(p.theta_p);
}

void to_json(nlohmann::json& j, const ModelSpec& spec)
{
    j = nlohmann::json{
        {"kind", to_string(spec.kind)},
        {"n", spec.n},
        {"coupling", spec.coupling},
        {"kick_strengths", spec.kick_strengths},
        {"boundary_phases", spec.boundary_phases},
        {"master_seed", spec.master_seed},
        {"stream_index", spec.stream_index},
    };
}

void from_json(const nlohmann::json& j, ModelSpec& spec)
{
    spec.kind = model_kind_from_string(j.at("kind").get<std::string>());
    j.at("n").get_to(spec.n);
    j.at("coupling").get_to(spec.coupling);
    j.at("kick_strengths").get_to(spec.kick_strengths);
    j.at("boundary_phases").get_to(spec.boundary_phases);
    j.at("master_seed").get_to(spec.master_seed);
    j.at("stream_index").get_to(spec.stream_index);
}

FloquetOperator build_rmt_floquet(const ModelSpec& spec, RandomStream& stream)
{
    if (spec.kind != ModelKind::Rmt)
        throw config_error("build_rmt_floquet: spec is not an rmt model");
    spec.validate();
    const int n = spec.n;

    FloquetOperator op;
    op.spec = spec;
    op.spec.master_seed = stream.master_seed();
    op.spec.stream_index = stream.stream_index();
    op.u1 = sample_cue(n, stream);
    op.u2 = sample_cue(n, stream);

    const Eigen::MatrixXd xi = sample_interaction_phases(n, stream);
    op.interaction.resize(n * n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            op.interaction(k * n + l) = std::exp(2.0 * kPi * kI * spec.coupling * xi(k, l));

    op.full = assemble(op.u1, op.u2, op.interaction);
    return op;
}

Eigen::MatrixXcd kr_momentum_transform(int n, const BoundaryPhases& phases)
{
    if (n < 2)
        throw config_error("kr_momentum_transform: dimension must be >= 2");
    Eigen::MatrixXcd f(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            f(k, m) = norm * std::exp(-2.0 * kPi * kI * (m + phases.theta_q) *
                                      (k + phases.theta_p) / static_cast<double>(n));
    return f;
}

Eigen::MatrixXcd build_kr_subsystem(int n, double kick_strength, const BoundaryPhases& phases)
{
    if (n < 2)
        throw config_error("build_kr_subsystem: dimension must be >= 2");
    const Eigen::MatrixXcd f = kr_momentum_transform(n, phases);

    Eigen::VectorXcd kinetic(n);
    for (int k = 0; k < n; ++k) {
        const double p = k + phases.theta_p;
        kinetic(k) = std::exp(-kI * kPi * p * p / static_cast<double>(n));
    }
    Eigen::VectorXcd potential(n);
    for (int m = 0; m < n; ++m) {
        const double q = (m + phases.theta_q) / static_cast<double>(n);
        potential(m) =
            std::exp(-kI * static_cast<double>(n) * kick_strength * std::cos(2.0 * kPi * q) /
                     (2.0 * kPi));
    }
    return f.adjoint() * kinetic.asDiagonal() * f * potential.asDiagonal();
}

FloquetOperator build_kr_floquet(const ModelSpec& spec)
{
    if (spec.kind != ModelKind::KickedRotor)
        throw config_error("build_kr_floquet: spec is not a kicked-rotor model");
    spec.validate();
    const int n = spec.n;

    FloquetOperator op;
    op.spec = spec;
    op.u1 = build_kr_subsystem(n, spec.kick_strengths[0], spec.boundary_phases[0]);
    op.u2 = build_kr_subsystem(n, spec.kick_strengths[1], spec.boundary_phases[1]);

    op.interaction.resize(n * n);
    for (int m = 0; m < n; ++m) {
        const double q1 = (m + spec.boundary_phases[0].theta_q) / static_cast<double>(n);
        for (int l = 0; l < n; ++l) {
            const double q2 = (l + spec.boundary_phases[1].theta_q) / static_cast<double>(n);
            op.interaction(m * n + l) =
                std::exp(-kI * spec.coupling * static_cast<double>(n) *
                         std::cos(2.0 * kPi * (q1 + q2)) / (2.0 * kPi));
        }
    }

    op.full = assemble(op.u1, op.u2, op.interaction);
    return op;
}

double transition_parameter(const ModelSpec& spec)
{
    const double n = spec.n;
    const double c = spec.coupling;
    if (spec.kind == ModelKind::Rmt)
        return c * c * n * n / 12.0;
    const double pi4 = kPi * kPi * kPi * kPi;
    return n * n * n * n * c * c / (32.0 * pi4);
}

double coupling_for_lambda(ModelKind kind, int n, double lambda)
{
    if (n < 2)
        throw config_error("coupling_for_lambda: subsystem dimension must be >= 2");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw config_error("coupling_for_lambda: lambda must be finite and >= 0");
    if (kind == ModelKind::Rmt) {
        const double eps = std::sqrt(12.0 * lambda) / n;
        if (eps > 1.0)
            throw config_error("coupling_for_lambda: lambda " + std::to_string(lambda) +
                               " needs rmt coupling > 1 at n = " + std::to_string(n));
        return eps;
    }
    const double pi2 = kPi * kPi;
    return std::sqrt(32.0 * lambda) * pi2 / (static_cast<double>(n) * n);
}

} // namespace entrans

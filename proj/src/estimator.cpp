#include "glf/estimator.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace glf {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Uniform double in [0, 1) from the raw engine stream; avoids the
// implementation-defined std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller. Always consumes exactly two engine values.
double standard_normal(std::mt19937_64& rng) {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

void check_pair(const EvolutionOperator& op, int k, int l, const char* fn) {
    if (k < 0 || k >= op.dim || l < 0 || l >= op.dim) {
        throw std::invalid_argument(std::string(fn) + ": input sites out of range");
    }
    if (k == l) {
        throw std::invalid_argument(std::string(fn) + ": input sites must differ");
    }
}

struct BeamSample {
    std::complex<double> coeff_k;
    std::complex<double> coeff_l;
};

// Input coefficients for one phase sample. Jitter, when enabled, perturbs
// amplitude and phase of each beam independently; the draw order is fixed so
// a seed pins the whole run.
BeamSample beam_sample(double theta, const NoiseModel& noise, std::mt19937_64& rng) {
    double amp_k = 1.0;
    double amp_l = 1.0;
    double phase_k = 0.0;
    double phase_l = theta;
    if (noise.enabled()) {
        amp_k += noise.amplitude_jitter_std * standard_normal(rng);
        amp_l += noise.amplitude_jitter_std * standard_normal(rng);
        phase_k += noise.phase_jitter_std * standard_normal(rng);
        phase_l += noise.phase_jitter_std * standard_normal(rng);
    }
    return {std::polar(amp_k, phase_k), std::polar(amp_l, phase_l)};
}

EstimateReport make_report(Eigen::MatrixXd estimate, CorrelationMatrix reference) {
    EstimateReport report;
    report.estimate.entries = std::move(estimate);
    report.estimate.provenance = Provenance::ClassicalEstimate;
    report.reference = std::move(reference);
    const ErrorStats stats = estimator_error(report.estimate, report.reference);
    report.max_abs_error = stats.max_abs_error;
    report.rms_error = stats.rms_error;
    return report;
}

} // namespace

PhasePlan PhasePlan::random_uniform(int num_samples, std::uint64_t seed) {
    if (num_samples < 1) {
        throw std::invalid_argument("PhasePlan::random_uniform: need at least one sample");
    }
    PhasePlan plan;
    plan.mode = Mode::RandomUniform;
    plan.samples = num_samples;
    plan.seed = seed;
    return plan;
}

PhasePlan PhasePlan::uniform_grid(int num_points) {
    if (num_points < 3) {
        throw std::invalid_argument("PhasePlan::uniform_grid: need at least 3 grid points");
    }
    PhasePlan plan;
    plan.mode = Mode::UniformGrid;
    plan.samples = num_points;
    return plan;
}

EstimateReport classical_estimate_separable(const EvolutionOperator& op, int k, int l,
                                            const PhasePlan& plan) {
    check_pair(op, k, l, "classical_estimate_separable");
    if (plan.samples < 1 ||
        (plan.mode == PhasePlan::Mode::UniformGrid && plan.samples < 3)) {
        throw std::invalid_argument(
            "classical_estimate_separable: invalid plan (grid needs P >= 3, random needs M >= 1)");
    }

    const Eigen::VectorXcd a = op.entries.col(k);
    const Eigen::VectorXcd b = op.entries.col(l);
    const Eigen::VectorXd intensity_k = a.cwiseAbs2();
    const Eigen::VectorXd intensity_l = b.cwiseAbs2();

    std::mt19937_64 rng(plan.seed);
    const int m = plan.samples;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(op.dim, op.dim);
    for (int i = 0; i < m; ++i) {
        const double theta = (plan.mode == PhasePlan::Mode::UniformGrid)
                                 ? two_pi * i / m
                                 : two_pi * uniform01(rng);
        const BeamSample s = beam_sample(theta, plan.noise, rng);
        const Eigen::VectorXd intensity = (s.coeff_k * a + s.coeff_l * b).cwiseAbs2();
        acc.noalias() += intensity * intensity.transpose();
    }
    acc /= static_cast<double>(m);
    acc.noalias() -= intensity_k * intensity_k.transpose();
    acc.noalias() -= intensity_l * intensity_l.transpose();

    return make_report(std::move(acc), correlation_boson_separable(op, k, l));
}

EstimateReport classical_estimate_noon(const EvolutionOperator& op, int k, int l, int sign,
                                       int grid_points, const NoiseModel& noise,
                                       std::uint64_t seed) {
    check_pair(op, k, l, "classical_estimate_noon");
    if (sign != +1 && sign != -1) {
        throw std::invalid_argument("classical_estimate_noon: sign must be +1 or -1");
    }
    if (grid_points < 5) {
        throw std::invalid_argument(
            "classical_estimate_noon: grid needs P >= 5, the second harmonic aliases otherwise");
    }

    const Eigen::VectorXcd a = op.entries.col(k);
    const Eigen::VectorXcd b = op.entries.col(l);
    const Eigen::VectorXd intensity_k = a.cwiseAbs2();
    const Eigen::VectorXd intensity_l = b.cwiseAbs2();

    std::mt19937_64 rng(seed);
    // Second-harmonic DFT coefficient of I_q(theta) I_r(theta).
    Eigen::MatrixXcd c2 = Eigen::MatrixXcd::Zero(op.dim, op.dim);
    for (int p = 0; p < grid_points; ++p) {
        const double theta = two_pi * p / grid_points;
        const BeamSample s = beam_sample(theta, noise, rng);
        const Eigen::VectorXd intensity = (s.coeff_k * a + s.coeff_l * b).cwiseAbs2();
        c2.noalias() += std::polar(1.0, -2.0 * theta) *
                        (intensity * intensity.transpose()).cast<std::complex<double>>();
    }
    c2 /= static_cast<double>(grid_points);

    Eigen::MatrixXd estimate = intensity_k * intensity_k.transpose() +
                               intensity_l * intensity_l.transpose() +
                               2.0 * static_cast<double>(sign) * c2.real();

    return make_report(std::move(estimate), correlation_noon(op, k, l, sign));
}

ErrorStats estimator_error(const CorrelationMatrix& estimate, const CorrelationMatrix& exact) {
    if (estimate.entries.rows() != exact.entries.rows() ||
        estimate.entries.cols() != exact.entries.cols()) {
        throw std::invalid_argument("estimator_error: dimension mismatch");
    }
    const Eigen::MatrixXd diff = estimate.entries - exact.entries;
    ErrorStats stats;
    stats.max_abs_error = diff.cwiseAbs().maxCoeff();
    stats.rms_error = std::sqrt(diff.squaredNorm() / static_cast<double>(diff.size()));
    return stats;
}

} // namespace glf

#include "glf/correlation.hpp"

#include <cmath>

namespace glf {

namespace {

void check_site(const EvolutionOperator& op, int site, const char* fn) {
    if (site < 0 || site >= op.dim) {
        throw std::invalid_argument(std::string(fn) + ": site " + std::to_string(site) +
                                    " out of range [0, " + std::to_string(op.dim) + ")");
    }
}

void check_distinct(int k, int l, const char* fn) {
    if (k == l) {
        throw std::invalid_argument(std::string(fn) + ": input sites must differ (k = l = " +
                                    std::to_string(k) + ")");
    }
}

} // namespace

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::ExactBoson: return "exact_boson";
        case Provenance::ExactNoonPlus: return "exact_noon_plus";
        case Provenance::ExactNoonMinus: return "exact_noon_minus";
        case Provenance::ExactFermion: return "exact_fermion";
        case Provenance::ClassicalEstimate: return "classical_estimate";
    }
    return "unknown";
}

std::string to_string(Normalization n) {
    return n == Normalization::Raw ? "raw" : "peak_normalized";
}

InputState InputState::single(int k) {
    if (k < 0) throw std::invalid_argument("InputState::single: site must be >= 0");
    return InputState{Kind::Single, k, k, +1};
}

InputState InputState::separable_pair(int k, int l) {
    if (k < 0 || l < 0) throw std::invalid_argument("InputState::separable_pair: sites must be >= 0");
    return InputState{Kind::SeparablePair, k, l, +1};
}

InputState InputState::noon_pair(int k, int l, int sign) {
    if (k < 0 || l < 0) throw std::invalid_argument("InputState::noon_pair: sites must be >= 0");
    check_distinct(k, l, "InputState::noon_pair");
    if (sign != +1 && sign != -1) {
        throw std::invalid_argument("InputState::noon_pair: sign must be +1 or -1");
    }
    return InputState{Kind::NoonPair, k, l, sign};
}

InputState InputState::fermion_pair(int k, int l) {
    if (k < 0 || l < 0) throw std::invalid_argument("InputState::fermion_pair: sites must be >= 0");
    check_distinct(k, l, "InputState::fermion_pair");
    return InputState{Kind::FermionPair, k, l, +1};
}

CorrelationMatrix correlation_boson_separable(const EvolutionOperator& op, int k, int l) {
    check_site(op, k, "correlation_boson_separable");
    check_site(op, l, "correlation_boson_separable");
    const Eigen::VectorXcd a = op.entries.col(k);
    const Eigen::VectorXcd b = op.entries.col(l);
    const double scale = (k == l) ? 0.5 : 1.0;

    CorrelationMatrix gamma;
    gamma.provenance = Provenance::ExactBoson;
    gamma.entries.resize(op.dim, op.dim);
    for (int q = 0; q < op.dim; ++q) {
        for (int r = q; r < op.dim; ++r) {
            const double value = scale * std::norm(a(q) * b(r) + b(q) * a(r));
            gamma.entries(q, r) = value;
            gamma.entries(r, q) = value;
        }
    }
    return gamma;
}

CorrelationMatrix correlation_noon(const EvolutionOperator& op, int k, int l, int sign) {
    check_site(op, k, "correlation_noon");
    check_site(op, l, "correlation_noon");
    check_distinct(k, l, "correlation_noon");
    if (sign != +1 && sign != -1) {
        throw std::invalid_argument("correlation_noon: sign must be +1 or -1");
    }
    const Eigen::VectorXcd a = op.entries.col(k);
    const Eigen::VectorXcd b = op.entries.col(l);
    const double s = static_cast<double>(sign);

    CorrelationMatrix gamma;
    gamma.provenance = sign > 0 ? Provenance::ExactNoonPlus : Provenance::ExactNoonMinus;
    gamma.entries.resize(op.dim, op.dim);
    for (int q = 0; q < op.dim; ++q) {
        for (int r = q; r < op.dim; ++r) {
            const double value = std::norm(a(q) * a(r) + s * b(q) * b(r));
            gamma.entries(q, r) = value;
            gamma.entries(r, q) = value;
        }
    }
    return gamma;
}

CorrelationMatrix correlation_fermion(const EvolutionOperator& op, int k, int l) {
    check_site(op, k, "correlation_fermion");
    check_site(op, l, "correlation_fermion");
    check_distinct(k, l, "correlation_fermion");
    const Eigen::VectorXcd a = op.entries.col(k);
    const Eigen::VectorXcd b = op.entries.col(l);

    CorrelationMatrix gamma;
    gamma.provenance = Provenance::ExactFermion;
    gamma.entries.resize(op.dim, op.dim);
    for (int q = 0; q < op.dim; ++q) {
        for (int r = q; r < op.dim; ++r) {
            // q = r gives a(q)b(q) - b(q)a(q), which is exactly zero.
            const double value = std::norm(a(q) * b(r) - b(q) * a(r));
            gamma.entries(q, r) = value;
            gamma.entries(r, q) = value;
        }
    }
    return gamma;
}

CorrelationMatrix correlation(const EvolutionOperator& op, const InputState& input) {
    switch (input.kind) {
        case InputState::Kind::SeparablePair:
            return correlation_boson_separable(op, input.k, input.l);
        case InputState::Kind::NoonPair:
            return correlation_noon(op, input.k, input.l, input.sign);
        case InputState::Kind::FermionPair:
            return correlation_fermion(op, input.k, input.l);
        case InputState::Kind::Single:
            break;
    }
    throw std::invalid_argument("correlation: input state is not a two-particle variant");
}

std::vector<double> single_particle_distribution(const EvolutionOperator& op, int k) {
    check_site(op, k, "single_particle_distribution");
    const Eigen::VectorXd p = op.entries.col(k).cwiseAbs2();
    return {p.data(), p.data() + p.size()};
}

CorrelationMatrix peak_normalize(const CorrelationMatrix& gamma) {
    const double peak = gamma.entries.maxCoeff();
    if (!(peak > 0.0)) {
        throw std::invalid_argument("peak_normalize: matrix has no positive entry");
    }
    CorrelationMatrix out;
    out.entries = gamma.entries / peak;
    out.provenance = gamma.provenance;
    out.normalization = Normalization::PeakNormalized;
    return out;
}

} // namespace glf

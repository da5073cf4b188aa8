// correlation.hpp — exact two-particle correlation matrices Gamma_qr for
// separable photon pairs, path-entangled N00N pairs, and fermion pairs.

#pragma once

#include "glf/propagation.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace glf {

// Which formula (or estimation protocol) produced a correlation matrix.
enum class Provenance {
    ExactBoson,
    ExactNoonPlus,
    ExactNoonMinus,
    ExactFermion,
    ClassicalEstimate,
};

enum class Normalization { Raw, PeakNormalized };

std::string to_string(Provenance p);
std::string to_string(Normalization n);

// Tagged two-particle (or single-site) input state over lattice sites.
// NoonPair and FermionPair require k != l.
struct InputState {
    enum class Kind { Single, SeparablePair, NoonPair, FermionPair };

    Kind kind = Kind::Single;
    int k = 0;
    int l = 0;
    int sign = +1; // N00N only: +1 or -1

    static InputState single(int k);
    static InputState separable_pair(int k, int l);
    static InputState noon_pair(int k, int l, int sign);
    static InputState fermion_pair(int k, int l);
};

// Coincidence matrix Gamma_qr with its provenance. Entries of the exact
// formulas are non-negative and symmetric; classical estimates may carry
// small negative entries from Monte Carlo noise.
struct CorrelationMatrix {
    Eigen::MatrixXd entries; // N x N
    Provenance provenance = Provenance::ExactBoson;
    Normalization normalization = Normalization::Raw;

    int dim() const { return static_cast<int>(entries.rows()); }
};

// Gamma_qr = |U_qk U_rl + U_ql U_rk|^2 / (1 + delta_kl). The k = l case is
// scaled so the sum rule sum Gamma = 2 holds for every input.
CorrelationMatrix correlation_boson_separable(const EvolutionOperator& op, int k, int l);

// Gamma_qr = |U_qk U_rk +- U_ql U_rl|^2 for the biphoton N00N input; k != l.
CorrelationMatrix correlation_noon(const EvolutionOperator& op, int k, int l, int sign);

// Gamma_qr = |U_qk U_rl - U_ql U_rk|^2; the diagonal vanishes identically
// (Pauli exclusion); k != l.
CorrelationMatrix correlation_fermion(const EvolutionOperator& op, int k, int l);

// Dispatch over the pair variants of InputState.
CorrelationMatrix correlation(const EvolutionOperator& op, const InputState& input);

// p_q = |U_qk|^2.
std::vector<double> single_particle_distribution(const EvolutionOperator& op, int k);

// Entries divided by the largest entry. Rejects all-zero matrices.
CorrelationMatrix peak_normalize(const CorrelationMatrix& gamma);

} // namespace glf

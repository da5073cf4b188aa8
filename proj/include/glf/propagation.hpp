// propagation.hpp — evolution operator U(z) = exp(iz C) of a coupling matrix,
// field propagation, intensity evolution maps, and the diagnostics used to
// certify the finite lattice behaves like a semi-infinite one.

#pragma once

#include "glf/lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace glf {

// Thrown on eigensolver non-convergence and similar numerical failures.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Spectral decomposition C = V diag(lambda) V^T of the real symmetric
// tridiagonal coupling matrix. Computed once, reused for every z.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;  // [cm^-1], ascending
    Eigen::MatrixXd eigenvectors; // orthonormal columns
};

SpectralDecomposition decompose(const CouplingMatrix& matrix);

// U(z) = V diag(exp(iz lambda)) V^T. Unitary by construction; carries the
// decomposition so further operators at other z are cheap.
struct EvolutionOperator {
    int dim = 0;
    double z = 0.0; // [cm]
    Eigen::MatrixXcd entries;
    std::shared_ptr<const SpectralDecomposition> spectrum;
};

EvolutionOperator evolution_operator(const CouplingMatrix& matrix, double z);
EvolutionOperator evolution_operator(std::shared_ptr<const SpectralDecomposition> spectrum,
                                     double z);

// Modal field amplitudes phi_n at a fixed propagation distance.
struct FieldState {
    Eigen::VectorXcd amplitudes;
    double z = 0.0; // [cm]

    Eigen::VectorXd intensities() const { return amplitudes.cwiseAbs2(); }
    double total_power() const { return amplitudes.squaredNorm(); }
};

// delta_{nk} input: unit amplitude in guide k.
FieldState single_site_excitation(int n_sites, int k);

// phi(z0 + z) = U(z) phi(z0).
FieldState propagate(const EvolutionOperator& op, const FieldState& input);

// |phi_n(z_j)|^2 sampled on a z grid; one row per sample.
struct IntensityMap {
    std::vector<double> z_samples; // [cm]
    Eigen::MatrixXd intensities;   // num_samples x N
};

// Evolves the input over the whole grid reusing a single spectral
// decomposition. z_grid must be non-empty and sorted ascending.
IntensityMap intensity_map(const CouplingMatrix& matrix, const FieldState& input,
                           const std::vector<double>& z_grid);

// Number of local maxima above `floor`, counting boundary maxima and
// counting a plateau of equal values once.
int count_maxima(std::span<const double> intensities, double floor);

// Same with the default floor of 1e-6 times the peak value, which ignores
// numerical ripple without hiding genuine structure.
int count_maxima(std::span<const double> intensities);

// Power in the last tail_width sites. Small values certify that the
// truncation boundary was not reached.
double tail_leakage(const FieldState& field, int tail_width);

} // namespace glf

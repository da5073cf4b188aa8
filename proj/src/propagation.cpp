#include "glf/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace glf {

namespace {

Eigen::VectorXcd phase_factors(const Eigen::VectorXd& eigenvalues, double z) {
    const std::complex<double> iz(0.0, z);
    return (iz * eigenvalues.cast<std::complex<double>>().array()).exp();
}

} // namespace

SpectralDecomposition decompose(const CouplingMatrix& matrix) {
    if (matrix.dim < 1) {
        throw std::invalid_argument("decompose: empty coupling matrix");
    }
    const Eigen::VectorXd diag = Eigen::VectorXd::Zero(matrix.dim);
    const Eigen::VectorXd subdiag = Eigen::Map<const Eigen::VectorXd>(
        matrix.off_diagonal.data(), static_cast<Eigen::Index>(matrix.off_diagonal.size()));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("decompose: tridiagonal eigensolver did not converge (dim " +
                              std::to_string(matrix.dim) + ")");
    }
    return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

EvolutionOperator evolution_operator(const CouplingMatrix& matrix, double z) {
    return evolution_operator(std::make_shared<const SpectralDecomposition>(decompose(matrix)), z);
}

EvolutionOperator evolution_operator(std::shared_ptr<const SpectralDecomposition> spectrum,
                                     double z) {
    if (!spectrum || spectrum->eigenvalues.size() == 0) {
        throw std::invalid_argument("evolution_operator: empty spectral decomposition");
    }
    if (!std::isfinite(z)) {
        throw std::invalid_argument("evolution_operator: z must be finite");
    }
    EvolutionOperator op;
    op.dim = static_cast<int>(spectrum->eigenvalues.size());
    op.z = z;
    const Eigen::MatrixXd& v = spectrum->eigenvectors;
    op.entries = v.cast<std::complex<double>>() *
                 phase_factors(spectrum->eigenvalues, z).asDiagonal() *
                 v.transpose().cast<std::complex<double>>();
    op.spectrum = std::move(spectrum);
    return op;
}

FieldState single_site_excitation(int n_sites, int k) {
    if (n_sites < 1) {
        throw std::invalid_argument("single_site_excitation: n_sites must be >= 1");
    }
    if (k < 0 || k >= n_sites) {
        throw std::invalid_argument("single_site_excitation: site " + std::to_string(k) +
                                    " out of range [0, " + std::to_string(n_sites) + ")");
    }
    FieldState state;
    state.amplitudes = Eigen::VectorXcd::Zero(n_sites);
    state.amplitudes(k) = 1.0;
    return state;
}

FieldState propagate(const EvolutionOperator& op, const FieldState& input) {
    if (input.amplitudes.size() != op.dim) {
        throw std::invalid_argument("propagate: field has " + std::to_string(input.amplitudes.size()) +
                                    " amplitudes, operator dimension is " + std::to_string(op.dim));
    }
    FieldState out;
    out.amplitudes = op.entries * input.amplitudes;
    out.z = input.z + op.z;
    return out;
}

IntensityMap intensity_map(const CouplingMatrix& matrix, const FieldState& input,
                           const std::vector<double>& z_grid) {
    if (z_grid.empty()) {
        throw std::invalid_argument("intensity_map: z_grid must not be empty");
    }
    if (!std::is_sorted(z_grid.begin(), z_grid.end())) {
        throw std::invalid_argument("intensity_map: z_grid must be sorted ascending");
    }
    if (input.amplitudes.size() != matrix.dim) {
        throw std::invalid_argument("intensity_map: field/matrix dimension mismatch");
    }

    const SpectralDecomposition spectrum = decompose(matrix);
    const Eigen::MatrixXd& v = spectrum.eigenvectors;
    // One basis change up front; each z sample is then a diagonal phase twist.
    const Eigen::VectorXcd modal = v.transpose().cast<std::complex<double>>() * input.amplitudes;

    IntensityMap map;
    map.z_samples = z_grid;
    map.intensities.resize(static_cast<Eigen::Index>(z_grid.size()), matrix.dim);
    for (std::size_t j = 0; j < z_grid.size(); ++j) {
        const Eigen::VectorXcd amp =
            v.cast<std::complex<double>>() *
            phase_factors(spectrum.eigenvalues, z_grid[j]).cwiseProduct(modal);
        map.intensities.row(static_cast<Eigen::Index>(j)) = amp.cwiseAbs2().transpose();
    }
    return map;
}

int count_maxima(std::span<const double> intensities, double floor) {
    if (intensities.empty()) {
        throw std::invalid_argument("count_maxima: empty input");
    }
    if (floor < 0.0) {
        throw std::invalid_argument("count_maxima: floor must be >= 0");
    }
    const std::size_t n = intensities.size();
    const double neg_inf = -std::numeric_limits<double>::infinity();
    int count = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && intensities[j + 1] == intensities[i]) {
            ++j; // plateau of equal values counts once
        }
        const double left = (i > 0) ? intensities[i - 1] : neg_inf;
        const double right = (j + 1 < n) ? intensities[j + 1] : neg_inf;
        if (intensities[i] > floor && intensities[i] > left && intensities[i] > right) {
            ++count;
        }
        i = j + 1;
    }
    return count;
}

int count_maxima(std::span<const double> intensities) {
    if (intensities.empty()) {
        throw std::invalid_argument("count_maxima: empty input");
    }
    const double peak = *std::max_element(intensities.begin(), intensities.end());
    return count_maxima(intensities, 1e-6 * peak);
}

double tail_leakage(const FieldState& field, int tail_width) {
    const int n = static_cast<int>(field.amplitudes.size());
    if (tail_width < 1 || tail_width >= n) {
        throw std::invalid_argument("tail_leakage: tail_width must be in [1, " +
                                    std::to_string(n) + ")");
    }
    return field.amplitudes.tail(tail_width).squaredNorm();
}

} // namespace glf

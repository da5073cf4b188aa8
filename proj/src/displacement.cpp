#include "glf/displacement.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace glf {

double associated_laguerre(int degree, int order, double x) {
    if (degree < 0 || order < 0) {
        throw std::invalid_argument("associated_laguerre: degree and order must be >= 0");
    }
    if (degree == 0) {
        return 1.0;
    }
    const double a = static_cast<double>(order);
    double prev = 1.0;          // L_0
    double curr = 1.0 + a - x;  // L_1
    for (int m = 1; m < degree; ++m) {
        const double next =
            ((2.0 * m + 1.0 + a - x) * curr - (m + a) * prev) / (m + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

std::complex<double> dfs_amplitude(int n, int k, std::complex<double> alpha) {
    if (n < 0 || k < 0) {
        throw std::invalid_argument("dfs_amplitude: indices must be >= 0");
    }
    if (n > dfs_max_index || k > dfs_max_index) {
        throw std::domain_error("dfs_amplitude: index " + std::to_string(std::max(n, k)) +
                                " exceeds supported maximum " + std::to_string(dfs_max_index));
    }

    const double x = std::norm(alpha);
    const int lo = std::min(n, k);
    const int hi = std::max(n, k);
    const int diff = hi - lo;

    // For n < k the roles of the power base and the index pair swap:
    // <n|D(alpha)|k> = sqrt(n!/k!) * (-alpha*)^(k-n) * e^(-x/2) * L_n^{(k-n)}(x).
    const std::complex<double> base = (n >= k) ? alpha : -std::conj(alpha);
    if (diff > 0 && base == std::complex<double>(0.0, 0.0)) {
        return 0.0; // D(0) = identity
    }

    double log_mag = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0)) - x / 2.0;
    double phase = 0.0;
    if (diff > 0) {
        log_mag += diff * std::log(std::abs(base));
        phase = diff * std::arg(base);
    }
    const double laguerre = associated_laguerre(lo, diff, x);
    return std::exp(log_mag) * std::polar(1.0, phase) * laguerre;
}

} // namespace glf

// displacement.hpp — analytic matrix elements of the displacement operator
// D(alpha) = exp(alpha a† - alpha* a) in the number basis. Serves as the
// closed-form reference the lattice propagation is checked against.

#pragma once

#include <complex>

namespace glf {

// Indices above this limit are rejected instead of silently losing precision.
inline constexpr int dfs_max_index = 170;

// Associated Laguerre polynomial L_k^{(a)}(x), integer order a >= 0, evaluated
// by the three-term recurrence in the degree k.
double associated_laguerre(int degree, int order, double x);

// <n|D(alpha)|k>. For n >= k,
//   <n|D(alpha)|k> = sqrt(k!/n!) * alpha^(n-k) * exp(-|alpha|^2/2) * L_k^{(n-k)}(|alpha|^2)
// and for n < k the conjugate-symmetric relation with (-alpha*)^(k-n) applies.
// Factorial ratios and the power of alpha are combined in log space so the
// result stays accurate up to n, k = dfs_max_index.
std::complex<double> dfs_amplitude(int n, int k, std::complex<double> alpha);

} // namespace glf

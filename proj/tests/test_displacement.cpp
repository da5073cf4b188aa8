#include "glf/displacement.hpp"

#include "dfs_reference.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace glf;
using std::complex;

namespace {
complex<double> random_alpha(std::mt19937_64& rng, double max_mag) {
    const double mag = max_mag * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double arg = 2.0 * M_PI * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return std::polar(mag, arg);
}
} // namespace

TEST_CASE("associated Laguerre polynomials") {
    CHECK(associated_laguerre(0, 0, 3.7) == 1.0);
    CHECK(associated_laguerre(1, 0, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(associated_laguerre(1, 2, 0.5) == doctest::Approx(2.5).epsilon(1e-15));
    // L_2^{(0)}(x) = x^2/2 - 2x + 1
    CHECK(associated_laguerre(2, 0, 1.5) ==
          doctest::Approx(1.5 * 1.5 / 2.0 - 2.0 * 1.5 + 1.0).epsilon(1e-14));
    // L_2^{(1)}(x) = x^2/2 - 3x + 3
    CHECK(associated_laguerre(2, 1, 2.0) == doctest::Approx(2.0 - 6.0 + 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(associated_laguerre(-1, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(associated_laguerre(2, -1, 1.0), std::invalid_argument);
}

TEST_CASE("vacuum overlap and first diagonal element") {
    const complex<double> alpha(0.3, 0.7);
    const double x = std::norm(alpha);
    CHECK(std::abs(dfs_amplitude(0, 0, alpha) - std::exp(-x / 2.0)) < 1e-15);
    // <1|D|1> = e^{-x/2} (1 - x)
    CHECK(std::abs(dfs_amplitude(1, 1, alpha) - std::exp(-x / 2.0) * (1.0 - x)) < 1e-15);
}

TEST_CASE("agrees with the normally ordered series") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const complex<double> alpha = random_alpha(rng, 2.5);
        const int n = static_cast<int>(rng() % 12);
        const int k = static_cast<int>(rng() % 12);
        const complex<double> got = dfs_amplitude(n, k, alpha);
        const complex<double> want = glf_test::dfs_amplitude_series(n, k, alpha);
        CHECK(std::abs(got - want) < 1e-12);
    }
}

TEST_CASE("magnitude is symmetric in n and k") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const complex<double> alpha = random_alpha(rng, 4.0);
        const int n = static_cast<int>(rng() % 30);
        const int k = static_cast<int>(rng() % 30);
        CHECK(std::abs(dfs_amplitude(n, k, alpha)) ==
              doctest::Approx(std::abs(dfs_amplitude(k, n, alpha))).epsilon(1e-12));
    }
}

TEST_CASE("zero displacement is the identity") {
    CHECK(dfs_amplitude(4, 4, 0.0) == complex<double>(1.0, 0.0));
    CHECK(dfs_amplitude(5, 4, 0.0) == complex<double>(0.0, 0.0));
    CHECK(dfs_amplitude(0, 3, 0.0) == complex<double>(0.0, 0.0));
}

TEST_CASE("columns of D(alpha) are unit vectors") {
    // sum_n |<n|D(alpha)|k>|^2 = 1; the sum converges well before n = 120
    const complex<double> alpha(0.0, 3.7);
    for (int k : {0, 1, 4, 9}) {
        double total = 0.0;
        for (int n = 0; n <= 120; ++n) {
            total += std::norm(dfs_amplitude(n, k, alpha));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("index validation") {
    CHECK_THROWS_AS(dfs_amplitude(-1, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(dfs_amplitude(0, -3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(dfs_amplitude(dfs_max_index + 1, 0, 1.0), std::domain_error);
    CHECK_THROWS_AS(dfs_amplitude(0, dfs_max_index + 1, 1.0), std::domain_error);
    CHECK_NOTHROW(dfs_amplitude(dfs_max_index, dfs_max_index, complex<double>(0.0, 1.0)));
}

// estimator.hpp — classical-light estimation of two-particle correlations:
// random-phase intensity-correlation averaging for separable pairs and
// controlled-phase harmonic extraction for N00N pairs.

#pragma once

#include "glf/correlation.hpp"
#include "glf/propagation.hpp"

#include <cstdint>

namespace glf {

// Optional per-sample jitter of the two injected beams, emulating amplitude
// and phase fluctuations of real laser light. Off by default; exactness
// guarantees hold only at zero noise.
struct NoiseModel {
    double amplitude_jitter_std = 0.0; // relative
    double phase_jitter_std = 0.0;     // radians

    bool enabled() const { return amplitude_jitter_std > 0.0 || phase_jitter_std > 0.0; }
};

// How the relative phase between the two beams is swept.
//
// Random draws come from std::mt19937_64 with doubles built directly from the
// raw 64-bit stream ((x >> 11) * 2^-53) and Box-Muller for the jitter, so a
// given seed reproduces bitwise on every platform.
struct PhasePlan {
    enum class Mode { RandomUniform, UniformGrid };

    Mode mode = Mode::UniformGrid;
    int samples = 0;       // M (random) or P (grid)
    std::uint64_t seed = 0; // used for random phases and for jitter draws
    NoiseModel noise;

    static PhasePlan random_uniform(int num_samples, std::uint64_t seed);
    static PhasePlan uniform_grid(int num_points);
};

struct ErrorStats {
    double max_abs_error = 0.0;
    double rms_error = 0.0;
};

// A classical estimate next to the exact matrix it approximates. Errors are
// computed on the raw (unnormalized) matrices.
struct EstimateReport {
    CorrelationMatrix estimate;  // provenance ClassicalEstimate
    CorrelationMatrix reference; // exact formula
    double max_abs_error = 0.0;
    double rms_error = 0.0;
};

// Two unit-amplitude coherent beams into guides k and l with relative phase
// theta; averages the output intensity correlations over the phase sweep and
// deducts the single-guide intensity products. A uniform grid with P >= 3
// reproduces the exact bosonic Gamma to rounding; M random phases converge
// as M^(-1/2).
EstimateReport classical_estimate_separable(const EvolutionOperator& op, int k, int l,
                                            const PhasePlan& plan);

// Controlled-phase variant: sweeps P >= 5 equidistant phases, extracts the
// second harmonic of the intensity correlation by a discrete Fourier
// coefficient, and assembles Gamma^(+-). P < 5 aliases the second harmonic
// and is rejected.
EstimateReport classical_estimate_noon(const EvolutionOperator& op, int k, int l, int sign,
                                       int grid_points, const NoiseModel& noise = {},
                                       std::uint64_t seed = 0);

// Elementwise max-abs and root-mean-square difference of two raw matrices.
ErrorStats estimator_error(const CorrelationMatrix& estimate, const CorrelationMatrix& exact);

} // namespace glf

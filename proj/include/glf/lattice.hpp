// lattice.hpp — Glauber-Fock coupling profiles, tridiagonal coupling matrices,
// and the forward/inverse fabrication-geometry problem.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace glf {

// Thrown when a coupling profile cannot be realised with positive waveguide
// separations. Carries the first offending site index.
class infeasible_geometry_error : public std::runtime_error {
public:
    infeasible_geometry_error(int site, double separation)
        : std::runtime_error("infeasible geometry: separation d_" + std::to_string(site) +
                             " = " + std::to_string(separation) + " um is not positive"),
          site_(site) {}

    int site() const noexcept { return site_; }

private:
    int site_;
};

// Nearest-neighbour coupling strengths of an N-site lattice. Sites are
// 0-based; couplings[n-1] (= C_n, cm^-1) joins sites n-1 and n.
struct CouplingProfile {
    int n_sites = 0;               // N
    double base_coupling = 0.0;    // C_1 [cm^-1]
    std::vector<double> couplings; // C_1..C_{N-1} [cm^-1], strictly positive
};

// Square-root coupling law C_n = sqrt(n) * C1. The resulting lattice maps the
// Fock ladder: site n plays the number state |n>.
CouplingProfile build_glauber_fock_profile(int n_sites, double base_coupling);

// Real symmetric tridiagonal coupling matrix. Only the sub/superdiagonal is
// stored; off_diagonal[n] couples sites n and n+1.
struct CouplingMatrix {
    int dim = 0;
    std::vector<double> off_diagonal; // [cm^-1], dim-1 entries

    Eigen::MatrixXd dense() const;
};

CouplingMatrix coupling_matrix(const CouplingProfile& profile);

// Fit parameters of the exponential coupling-distance law
// C(d) = base_coupling * exp(-(d - d1)/kappa).
struct Calibration {
    double d1 = 0.0;            // separation realising base_coupling [um]
    double kappa = 0.0;         // decay length [um], > 0
    double base_coupling = 0.0; // C_1 [cm^-1], > 0
    double wavelength = 0.0;    // design wavelength [nm]; metadata only
};

// Transverse layout of the array. Site 0 sits at position 0; positions are
// cumulative sums of the separations and strictly increasing.
struct GeometrySpec {
    std::vector<double> separations; // d_1..d_{N-1} [um]
    std::vector<double> positions;   // N entries [um]
};

// Separations realising the profile under the exponential coupling law:
// d_n = d1 - kappa * ln(C_n / C1). For a Glauber-Fock profile this reduces to
// d_n = d1 - kappa * ln(sqrt(n)). Throws infeasible_geometry_error if any
// separation would be non-positive.
GeometrySpec design_geometry(const CouplingProfile& profile, const Calibration& cal);

// Inverse of design_geometry: C_n = C1 * exp(-(d_n - d1)/kappa).
CouplingProfile couplings_from_geometry(const GeometrySpec& geom, const Calibration& cal);

struct FabricationReport {
    bool feasible = false;
    int max_site = 0; // largest N with C1*sqrt(N-1) <= max_coupling
};

// Largest coupling demonstrated for laser-written arrays, cm^-1.
inline constexpr double default_max_coupling = 5.5;

// Checks every coupling against the fabrication limit and reports how many
// sites a Glauber-Fock lattice with this base coupling could support.
FabricationReport validate_fabrication(const CouplingProfile& profile,
                                       double max_coupling = default_max_coupling);

} // namespace glf

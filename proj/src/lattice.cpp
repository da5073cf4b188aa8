#include "glf/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace glf {

CouplingProfile build_glauber_fock_profile(int n_sites, double base_coupling) {
    if (n_sites < 1) {
        throw std::invalid_argument("build_glauber_fock_profile: n_sites must be >= 1");
    }
    if (!(base_coupling > 0.0)) {
        throw std::invalid_argument("build_glauber_fock_profile: base_coupling must be > 0");
    }
    CouplingProfile profile;
    profile.n_sites = n_sites;
    profile.base_coupling = base_coupling;
    profile.couplings.reserve(static_cast<std::size_t>(n_sites - 1));
    for (int n = 1; n < n_sites; ++n) {
        profile.couplings.push_back(base_coupling * std::sqrt(static_cast<double>(n)));
    }
    return profile;
}

Eigen::MatrixXd CouplingMatrix::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        m(n, n + 1) = off_diagonal[static_cast<std::size_t>(n)];
        m(n + 1, n) = off_diagonal[static_cast<std::size_t>(n)];
    }
    return m;
}

CouplingMatrix coupling_matrix(const CouplingProfile& profile) {
    if (profile.n_sites < 1) {
        throw std::invalid_argument("coupling_matrix: profile has no sites");
    }
    if (profile.couplings.size() != static_cast<std::size_t>(profile.n_sites - 1)) {
        throw std::invalid_argument("coupling_matrix: profile has " +
                                    std::to_string(profile.couplings.size()) +
                                    " couplings for " + std::to_string(profile.n_sites) +
                                    " sites");
    }
    return CouplingMatrix{profile.n_sites, profile.couplings};
}

GeometrySpec design_geometry(const CouplingProfile& profile, const Calibration& cal) {
    if (!(cal.kappa > 0.0) || !(cal.base_coupling > 0.0)) {
        throw std::invalid_argument("design_geometry: calibration requires kappa > 0 and base_coupling > 0");
    }
    GeometrySpec geom;
    geom.separations.reserve(profile.couplings.size());
    geom.positions.reserve(static_cast<std::size_t>(profile.n_sites));
    geom.positions.push_back(0.0);
    for (std::size_t i = 0; i < profile.couplings.size(); ++i) {
        const double d = cal.d1 - cal.kappa * std::log(profile.couplings[i] / cal.base_coupling);
        if (!(d > 0.0)) {
            throw infeasible_geometry_error(static_cast<int>(i + 1), d);
        }
        geom.separations.push_back(d);
        geom.positions.push_back(geom.positions.back() + d);
    }
    return geom;
}

CouplingProfile couplings_from_geometry(const GeometrySpec& geom, const Calibration& cal) {
    if (!(cal.kappa > 0.0) || !(cal.base_coupling > 0.0)) {
        throw std::invalid_argument("couplings_from_geometry: calibration requires kappa > 0 and base_coupling > 0");
    }
    CouplingProfile profile;
    profile.n_sites = static_cast<int>(geom.separations.size()) + 1;
    profile.couplings.reserve(geom.separations.size());
    for (double d : geom.separations) {
        profile.couplings.push_back(cal.base_coupling * std::exp(-(d - cal.d1) / cal.kappa));
    }
    profile.base_coupling = profile.couplings.empty() ? cal.base_coupling : profile.couplings.front();
    return profile;
}

FabricationReport validate_fabrication(const CouplingProfile& profile, double max_coupling) {
    if (!(max_coupling > 0.0)) {
        throw std::invalid_argument("validate_fabrication: max_coupling must be > 0");
    }
    FabricationReport report;
    report.feasible = profile.couplings.empty() ||
                      *std::max_element(profile.couplings.begin(), profile.couplings.end()) <= max_coupling;
    const double ratio = max_coupling / profile.base_coupling;
    report.max_site = static_cast<int>(std::floor(ratio * ratio)) + 1;
    return report;
}

} // namespace glf

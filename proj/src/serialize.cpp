#include "glf/serialize.hpp"

namespace glf {

void to_json(nlohmann::json& j, const CouplingProfile& profile) {
    j["n_sites"] = profile.n_sites;
    j["base_coupling"] = profile.base_coupling;
    j["couplings"] = profile.couplings;
}

void from_json(const nlohmann::json& j, CouplingProfile& profile) {
    j.at("n_sites").get_to(profile.n_sites);
    j.at("base_coupling").get_to(profile.base_coupling);
    j.at("couplings").get_to(profile.couplings);
    if (profile.couplings.size() + 1 != static_cast<std::size_t>(profile.n_sites)) {
        throw std::invalid_argument("CouplingProfile: couplings length must be n_sites - 1");
    }
}

void to_json(nlohmann::json& j, const Calibration& cal) {
    j["d1"] = cal.d1;
    j["kappa"] = cal.kappa;
    j["base_coupling"] = cal.base_coupling;
    j["wavelength"] = cal.wavelength;
}

void from_json(const nlohmann::json& j, Calibration& cal) {
    j.at("d1").get_to(cal.d1);
    j.at("kappa").get_to(cal.kappa);
    j.at("base_coupling").get_to(cal.base_coupling);
    cal.wavelength = j.value("wavelength", 0.0);
}

void to_json(nlohmann::json& j, const GeometrySpec& geom) {
    j["separations"] = geom.separations;
}

void from_json(const nlohmann::json& j, GeometrySpec& geom) {
    j.at("separations").get_to(geom.separations);
    geom.positions.clear();
    geom.positions.reserve(geom.separations.size() + 1);
    geom.positions.push_back(0.0);
    for (double d : geom.separations) {
        if (!(d > 0.0)) {
            throw std::invalid_argument("GeometrySpec: separations must be positive");
        }
        geom.positions.push_back(geom.positions.back() + d);
    }
}

} // namespace glf

// serialize.hpp — flat JSON documents for profiles, calibrations, and
// geometries. Key names are fixed in docs/file-formats.md; a single document
// may combine the keys of several types (as the `design` command output does).

#pragma once

#include "glf/lattice.hpp"

#include <json.hpp>

namespace glf {

void to_json(nlohmann::json& j, const CouplingProfile& profile);
void from_json(const nlohmann::json& j, CouplingProfile& profile);

void to_json(nlohmann::json& j, const Calibration& cal);
void from_json(const nlohmann::json& j, Calibration& cal);

// Geometry serializes its separations only; positions are rebuilt on load
// with site 0 pinned at 0.
void to_json(nlohmann::json& j, const GeometrySpec& geom);
void from_json(const nlohmann::json& j, GeometrySpec& geom);

} // namespace glf

// io.hpp — file export of simulation results: CSV with fixed formatting,
// binary PGM heatmaps, and atomic writes so partial files never appear.

#pragma once

#include "glf/correlation.hpp"
#include "glf/lattice.hpp"
#include "glf/propagation.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace glf::io {

// Scientific notation, 9 significant digits. All CSV values use this.
std::string format_sci(double value);

// Header row "z,site_0,...,site_{N-1}", one row per z sample.
std::string intensity_map_csv(const IntensityMap& map);

// Plain N x M matrix, no header.
std::string matrix_csv(const Eigen::MatrixXd& values);

// Output profile: "site,intensity" rows.
std::string profile_csv(const Eigen::VectorXd& intensities);

// Geometry table: "n,separation_um,position_um,coupling_cm1".
std::string geometry_csv(const CouplingProfile& profile, const GeometrySpec& geom);

enum class PgmDepth { bits8, bits16 };
enum class PgmScaling { global_peak, per_row };

// Binary PGM (P5) with linear intensity mapping; gamma != 1 applies a
// display-style power law after normalization. Negative values clamp to 0.
std::string pgm_image(const Eigen::MatrixXd& values, PgmDepth depth, PgmScaling scaling,
                      double gamma = 1.0);

// FNV-1a 64-bit digest; used for the frozen figure fixtures.
std::uint64_t fnv1a64(std::string_view bytes);

// Writes to a temp file in the target directory and renames into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

} // namespace glf::io

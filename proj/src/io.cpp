#include "glf/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace glf::io {

std::string format_sci(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.8e", value);
    return buf;
}

std::string intensity_map_csv(const IntensityMap& map) {
    const Eigen::Index cols = map.intensities.cols();
    std::string out = "z";
    for (Eigen::Index n = 0; n < cols; ++n) {
        out += ",site_" + std::to_string(n);
    }
    out += '\n';
    for (std::size_t j = 0; j < map.z_samples.size(); ++j) {
        out += format_sci(map.z_samples[j]);
        for (Eigen::Index n = 0; n < cols; ++n) {
            out += ',';
            out += format_sci(map.intensities(static_cast<Eigen::Index>(j), n));
        }
        out += '\n';
    }
    return out;
}

std::string matrix_csv(const Eigen::MatrixXd& values) {
    std::string out;
    for (Eigen::Index q = 0; q < values.rows(); ++q) {
        for (Eigen::Index r = 0; r < values.cols(); ++r) {
            if (r > 0) out += ',';
            out += format_sci(values(q, r));
        }
        out += '\n';
    }
    return out;
}

std::string profile_csv(const Eigen::VectorXd& intensities) {
    std::string out = "site,intensity\n";
    for (Eigen::Index n = 0; n < intensities.size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_sci(intensities(n));
        out += '\n';
    }
    return out;
}

std::string geometry_csv(const CouplingProfile& profile, const GeometrySpec& geom) {
    std::string out = "n,separation_um,position_um,coupling_cm1\n";
    // Row 0 is the reference guide: no separation, no coupling.
    out += "0,," + format_sci(geom.positions.at(0)) + ",\n";
    for (std::size_t n = 1; n < geom.positions.size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_sci(geom.separations.at(n - 1));
        out += ',';
        out += format_sci(geom.positions.at(n));
        out += ',';
        out += format_sci(profile.couplings.at(n - 1));
        out += '\n';
    }
    return out;
}

std::string pgm_image(const Eigen::MatrixXd& values, PgmDepth depth, PgmScaling scaling,
                      double gamma) {
    if (values.size() == 0) {
        throw std::invalid_argument("pgm_image: empty matrix");
    }
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("pgm_image: gamma must be > 0");
    }
    const int maxval = depth == PgmDepth::bits8 ? 255 : 65535;
    const Eigen::Index rows = values.rows();
    const Eigen::Index cols = values.cols();

    std::string out = "P5\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n" +
                      std::to_string(maxval) + "\n";
    const double global_peak = std::max(values.maxCoeff(), 0.0);
    for (Eigen::Index q = 0; q < rows; ++q) {
        const double peak = scaling == PgmScaling::per_row
                                ? std::max(values.row(q).maxCoeff(), 0.0)
                                : global_peak;
        for (Eigen::Index r = 0; r < cols; ++r) {
            double v = peak > 0.0 ? std::clamp(values(q, r) / peak, 0.0, 1.0) : 0.0;
            if (gamma != 1.0) {
                v = std::pow(v, 1.0 / gamma);
            }
            const int pixel = static_cast<int>(std::lround(v * maxval));
            if (depth == PgmDepth::bits16) {
                out += static_cast<char>((pixel >> 8) & 0xff); // big-endian per PGM
            }
            out += static_cast<char>(pixel & 0xff);
        }
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
        if (!stream) {
            throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
        }
        stream.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!stream) {
            throw std::runtime_error("write_file_atomic: short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw std::runtime_error("read_file: cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(stream), std::istreambuf_iterator<char>()};
}

} // namespace glf::io

// glfsim — command line front end: designs lattice geometries, renders
// intensity evolution maps, computes exact two-particle correlation matrices,
// runs classical estimates, and regenerates the canonical figure set against
// frozen fixtures.
//
// Exit codes: 0 success, 2 invalid arguments/config, 3 infeasible physics,
// 4 numerical failure.

#include "glf/correlation.hpp"
#include "glf/displacement.hpp"
#include "glf/estimator.hpp"
#include "glf/io.hpp"
#include "glf/lattice.hpp"
#include "glf/propagation.hpp"
#include "glf/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double tail_warn_threshold = 1e-6;

struct RunConfig {
    // lattice: either a Glauber-Fock profile (n_sites, base_coupling) or a
    // geometry file read back through the calibration
    int n_sites = 59;
    double base_coupling = 0.37;
    bool base_coupling_set = false;
    std::string geometry_file;
    glf::Calibration calibration{23.0, 5.5, 0.37, 633.0};

    // propagation
    double z_length = 10.0; // cm
    int z_samples = 201;

    // input state
    std::string state = "single"; // single|boson|noon+|noon-|fermion
    int input_k = 0;
    int input_l = 1;
    bool input_l_set = false;

    // output
    std::string out_dir = "out";
    bool out_dir_set = false;
    std::set<std::string> formats = {"csv", "json", "pgm"};
    std::string normalize = "peak"; // raw|peak

    // estimation plan
    std::string phases = "grid:8"; // "M" or "grid:P"
    std::uint64_t seed = 0;
    double amplitude_jitter = 0.0;
    double phase_jitter = 0.0;

    // rendering
    int pgm_depth = 16;            // 8|16
    std::string pgm_scale = "global"; // global|row
    double gamma = 1.0;

    // design
    double max_coupling = glf::default_max_coupling;
};

// ----------------------------- config loading ------------------------------

void apply_config_json(RunConfig& cfg, const json& j) {
    if (j.contains("lattice")) {
        const json& lat = j.at("lattice");
        if (lat.contains("n_sites")) cfg.n_sites = lat.at("n_sites").get<int>();
        if (lat.contains("base_coupling")) {
            cfg.base_coupling = lat.at("base_coupling").get<double>();
            cfg.base_coupling_set = true;
        }
        if (lat.contains("geometry")) cfg.geometry_file = lat.at("geometry").get<std::string>();
        if (lat.contains("calibration")) cfg.calibration = lat.at("calibration").get<glf::Calibration>();
    }
    if (j.contains("propagation")) {
        const json& prop = j.at("propagation");
        if (prop.contains("z_length_cm")) cfg.z_length = prop.at("z_length_cm").get<double>();
        if (prop.contains("z_samples")) cfg.z_samples = prop.at("z_samples").get<int>();
    }
    if (j.contains("input")) {
        const json& in = j.at("input");
        if (in.contains("state")) cfg.state = in.at("state").get<std::string>();
        if (in.contains("k")) cfg.input_k = in.at("k").get<int>();
        if (in.contains("l")) {
            cfg.input_l = in.at("l").get<int>();
            cfg.input_l_set = true;
        }
    }
    if (j.contains("output")) {
        const json& out = j.at("output");
        if (out.contains("directory")) {
            cfg.out_dir = out.at("directory").get<std::string>();
            cfg.out_dir_set = true;
        }
        if (out.contains("formats")) {
            cfg.formats.clear();
            for (const auto& f : out.at("formats")) cfg.formats.insert(f.get<std::string>());
        }
        if (out.contains("normalization")) cfg.normalize = out.at("normalization").get<std::string>();
    }
    if (j.contains("estimate")) {
        const json& est = j.at("estimate");
        if (est.contains("phases")) cfg.phases = est.at("phases").get<std::string>();
        if (est.contains("seed")) cfg.seed = est.at("seed").get<std::uint64_t>();
        if (est.contains("amplitude_jitter_std"))
            cfg.amplitude_jitter = est.at("amplitude_jitter_std").get<double>();
        if (est.contains("phase_jitter_std"))
            cfg.phase_jitter = est.at("phase_jitter_std").get<double>();
    }
}

void validate_formats(const RunConfig& cfg) {
    for (const auto& f : cfg.formats) {
        if (f != "csv" && f != "json" && f != "pgm") {
            throw std::invalid_argument("unknown output format '" + f +
                                        "' (expected csv, json, pgm)");
        }
    }
    if (cfg.normalize != "raw" && cfg.normalize != "peak") {
        throw std::invalid_argument("--normalize must be raw or peak");
    }
    if (cfg.pgm_depth != 8 && cfg.pgm_depth != 16) {
        throw std::invalid_argument("--pgm-depth must be 8 or 16");
    }
    if (cfg.pgm_scale != "global" && cfg.pgm_scale != "row") {
        throw std::invalid_argument("--pgm-scale must be global or row");
    }
}

// Lattice profile from either construction route; rejects ambiguous configs.
glf::CouplingProfile make_profile(const RunConfig& cfg) {
    if (!cfg.geometry_file.empty() && cfg.base_coupling_set) {
        throw std::invalid_argument(
            "provide exactly one of --coupling or --geometry, not both");
    }
    if (!cfg.geometry_file.empty()) {
        const json doc = json::parse(glf::io::read_file(cfg.geometry_file));
        const auto geom = doc.get<glf::GeometrySpec>();
        glf::Calibration cal = cfg.calibration;
        if (doc.contains("d1") && doc.contains("kappa")) {
            cal = doc.get<glf::Calibration>(); // file carries its own calibration
        }
        return couplings_from_geometry(geom, cal);
    }
    return glf::build_glauber_fock_profile(cfg.n_sites, cfg.base_coupling);
}

glf::InputState make_input_state(const RunConfig& cfg) {
    if (cfg.state == "single") return glf::InputState::single(cfg.input_k);
    if (!cfg.input_l_set) {
        throw std::invalid_argument("state '" + cfg.state + "' needs a pair: --input k,l");
    }
    if (cfg.state == "boson") return glf::InputState::separable_pair(cfg.input_k, cfg.input_l);
    if (cfg.state == "noon+") return glf::InputState::noon_pair(cfg.input_k, cfg.input_l, +1);
    if (cfg.state == "noon-") return glf::InputState::noon_pair(cfg.input_k, cfg.input_l, -1);
    if (cfg.state == "fermion") return glf::InputState::fermion_pair(cfg.input_k, cfg.input_l);
    throw std::invalid_argument("unknown input state '" + cfg.state +
                                "' (expected single, boson, noon+, noon-, fermion)");
}

void parse_input_sites(const std::string& text, RunConfig& cfg) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            cfg.input_k = std::stoi(text);
            cfg.input_l_set = false;
        } else {
            cfg.input_k = std::stoi(text.substr(0, comma));
            cfg.input_l = std::stoi(text.substr(comma + 1));
            cfg.input_l_set = true;
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("--input expects k or k,l (got '" + text + "')");
    }
}

struct PlanSpec {
    bool grid = false;
    int samples = 0;
};

PlanSpec parse_phases(const std::string& text) {
    PlanSpec plan;
    std::string number = text;
    if (text.rfind("grid:", 0) == 0) {
        plan.grid = true;
        number = text.substr(5);
    }
    if (number.empty() ||
        !std::all_of(number.begin(), number.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw std::invalid_argument("--phases expects M or grid:P (got '" + text + "')");
    }
    plan.samples = std::stoi(number);
    return plan;
}

// ------------------------------ output helpers -----------------------------

glf::io::PgmDepth pgm_depth(const RunConfig& cfg) {
    return cfg.pgm_depth == 8 ? glf::io::PgmDepth::bits8 : glf::io::PgmDepth::bits16;
}

glf::io::PgmScaling pgm_scaling(const RunConfig& cfg) {
    return cfg.pgm_scale == "row" ? glf::io::PgmScaling::per_row
                                  : glf::io::PgmScaling::global_peak;
}

void write_if(const RunConfig& cfg, const std::string& format, const fs::path& path,
              const std::string& content) {
    if (cfg.formats.count(format)) {
        glf::io::write_file_atomic(path, content);
        std::cout << "wrote " << path.string() << "\n";
    }
}

std::vector<double> make_z_grid(const RunConfig& cfg) {
    if (cfg.z_samples < 1) throw std::invalid_argument("--z-samples must be >= 1");
    if (cfg.z_length < 0.0) throw std::invalid_argument("--length-cm must be >= 0");
    if (cfg.z_length == 0.0 || cfg.z_samples == 1) {
        return {cfg.z_length};
    }
    std::vector<double> grid(static_cast<std::size_t>(cfg.z_samples));
    for (int j = 0; j < cfg.z_samples; ++j) {
        grid[static_cast<std::size_t>(j)] = cfg.z_length * j / (cfg.z_samples - 1);
    }
    return grid;
}

json lattice_json(const glf::CouplingProfile& profile, const RunConfig& cfg) {
    json j;
    to_json(j, profile);
    j["z_length_cm"] = cfg.z_length;
    return j;
}

// ------------------------------- subcommands -------------------------------

int cmd_design(const RunConfig& cfg) {
    const auto profile = glf::build_glauber_fock_profile(cfg.n_sites, cfg.base_coupling);
    const auto geom = design_geometry(profile, cfg.calibration); // throws infeasible (exit 3)
    const auto report = validate_fabrication(profile, cfg.max_coupling);

    const fs::path dir(cfg.out_dir);
    json doc;
    to_json(doc, profile);
    to_json(doc, cfg.calibration);
    to_json(doc, geom);
    doc["feasible"] = report.feasible;
    doc["max_site"] = report.max_site;
    write_if(cfg, "json", dir / "design.json", doc.dump(2) + "\n");
    write_if(cfg, "csv", dir / "design.csv", glf::io::geometry_csv(profile, geom));

    const double peak_coupling = profile.couplings.empty() ? 0.0 : profile.couplings.back();
    std::cout << "sites: " << profile.n_sites << ", peak coupling: " << peak_coupling
              << " cm^-1, limit: " << cfg.max_coupling << " cm^-1\n";
    std::cout << "max sites at this base coupling: " << report.max_site << "\n";
    if (!report.feasible) {
        std::cerr << "infeasible: C_" << profile.n_sites - 1 << " = " << peak_coupling
                  << " cm^-1 exceeds the fabrication limit " << cfg.max_coupling << " cm^-1\n";
        return 3;
    }
    std::cout << "feasible: yes\n";
    return 0;
}

int cmd_propagate(const RunConfig& cfg) {
    if (cfg.state != "single") {
        throw std::invalid_argument("propagate expects --state single");
    }
    const auto profile = make_profile(cfg);
    const auto matrix = coupling_matrix(profile);
    const auto input = glf::single_site_excitation(profile.n_sites, cfg.input_k);

    const auto grid = make_z_grid(cfg);
    const auto map = intensity_map(matrix, input, grid);
    const auto final_state = propagate(evolution_operator(matrix, cfg.z_length), input);
    const Eigen::VectorXd final_intensities = final_state.intensities();

    const std::vector<double> profile_values(final_intensities.data(),
                                             final_intensities.data() + final_intensities.size());
    const int maxima = glf::count_maxima(profile_values);
    const double leakage = profile.n_sites > 1
                               ? glf::tail_leakage(final_state, std::min(5, profile.n_sites - 1))
                               : 0.0;

    const fs::path dir(cfg.out_dir);
    write_if(cfg, "csv", dir / "map.csv", glf::io::intensity_map_csv(map));
    write_if(cfg, "csv", dir / "profile.csv", glf::io::profile_csv(final_intensities));
    write_if(cfg, "pgm", dir / "map.pgm",
             glf::io::pgm_image(map.intensities, pgm_depth(cfg), pgm_scaling(cfg), cfg.gamma));

    json run = lattice_json(profile, cfg);
    run["input_site"] = cfg.input_k;
    run["z_samples"] = static_cast<int>(grid.size());
    run["maxima"] = maxima;
    run["tail_leakage"] = leakage;
    write_if(cfg, "json", dir / "run.json", run.dump(2) + "\n");

    std::cout << "output intensity maxima: " << maxima << "\n";
    std::cout << "tail leakage (last 5 sites): " << glf::io::format_sci(leakage) << "\n";
    if (leakage > tail_warn_threshold) {
        std::cerr << "warning: tail leakage " << glf::io::format_sci(leakage)
                  << " exceeds " << glf::io::format_sci(tail_warn_threshold)
                  << "; the lattice no longer approximates a semi-infinite array,"
                  << " increase --sites\n";
    }
    return 0;
}

json correlation_sidecar(const glf::CorrelationMatrix& gamma, const glf::InputState& input,
                         const glf::CouplingProfile& profile, const RunConfig& cfg) {
    json j;
    j["provenance"] = to_string(gamma.provenance);
    j["normalization"] = to_string(gamma.normalization);
    j["k"] = input.k;
    j["l"] = input.l;
    if (input.kind == glf::InputState::Kind::NoonPair) j["sign"] = input.sign;
    j["z_cm"] = cfg.z_length;
    j["base_coupling"] = profile.base_coupling;
    j["n_sites"] = profile.n_sites;
    return j;
}

int cmd_correlate(const RunConfig& cfg) {
    const auto input = make_input_state(cfg);
    if (input.kind == glf::InputState::Kind::Single) {
        throw std::invalid_argument("correlate expects a pair state (boson, noon+, noon-, fermion)");
    }
    const auto profile = make_profile(cfg);
    const auto op = evolution_operator(coupling_matrix(profile), cfg.z_length);
    const auto raw = correlation(op, input);

    if (input.kind == glf::InputState::Kind::FermionPair &&
        raw.entries.diagonal().cwiseAbs().maxCoeff() > 1e-20) {
        throw glf::numerical_error("fermion correlation diagonal is not zero");
    }

    const auto peak = peak_normalize(raw);
    const auto& rendered = cfg.normalize == "raw" ? raw : peak;

    const fs::path dir(cfg.out_dir);
    write_if(cfg, "csv", dir / "gamma_raw.csv", glf::io::matrix_csv(raw.entries));
    write_if(cfg, "csv", dir / "gamma_peak.csv", glf::io::matrix_csv(peak.entries));
    write_if(cfg, "pgm", dir / "gamma.pgm",
             glf::io::pgm_image(rendered.entries, pgm_depth(cfg),
                                glf::io::PgmScaling::global_peak, cfg.gamma));

    json sidecar = correlation_sidecar(rendered, input, profile, cfg);
    sidecar["sum"] = raw.entries.sum();
    Eigen::Index q, r;
    raw.entries.maxCoeff(&q, &r);
    sidecar["argmax"] = {static_cast<int>(q), static_cast<int>(r)};
    write_if(cfg, "json", dir / "gamma.json", sidecar.dump(2) + "\n");

    std::cout << to_string(raw.provenance) << " correlation, sum = " << raw.entries.sum()
              << ", peak at (" << q << ", " << r << ")\n";
    return 0;
}

int cmd_estimate(const RunConfig& cfg) {
    const auto input = make_input_state(cfg);
    const auto plan_spec = parse_phases(cfg.phases);
    const auto profile = make_profile(cfg);
    const auto op = evolution_operator(coupling_matrix(profile), cfg.z_length);

    glf::NoiseModel noise{cfg.amplitude_jitter, cfg.phase_jitter};
    glf::EstimateReport report;
    if (input.kind == glf::InputState::Kind::SeparablePair) {
        glf::PhasePlan plan = plan_spec.grid
                                  ? glf::PhasePlan::uniform_grid(plan_spec.samples)
                                  : glf::PhasePlan::random_uniform(plan_spec.samples, cfg.seed);
        plan.seed = cfg.seed;
        plan.noise = noise;
        report = classical_estimate_separable(op, input.k, input.l, plan);
    } else if (input.kind == glf::InputState::Kind::NoonPair) {
        if (!plan_spec.grid) {
            throw std::invalid_argument(
                "N00N estimation requires a controlled phase grid: --phases grid:P with P >= 5");
        }
        report = classical_estimate_noon(op, input.k, input.l, input.sign, plan_spec.samples,
                                         noise, cfg.seed);
    } else {
        throw std::invalid_argument("estimate expects --state boson, noon+ or noon-");
    }

    const fs::path dir(cfg.out_dir);
    write_if(cfg, "csv", dir / "estimate_raw.csv", glf::io::matrix_csv(report.estimate.entries));
    write_if(cfg, "csv", dir / "reference_raw.csv",
             glf::io::matrix_csv(report.reference.entries));
    write_if(cfg, "pgm", dir / "estimate.pgm",
             glf::io::pgm_image(report.estimate.entries, pgm_depth(cfg),
                                glf::io::PgmScaling::global_peak, cfg.gamma));

    json j = correlation_sidecar(report.estimate, input, profile, cfg);
    j["reference_provenance"] = to_string(report.reference.provenance);
    j["phases"] = cfg.phases;
    j["seed"] = cfg.seed;
    j["amplitude_jitter_std"] = noise.amplitude_jitter_std;
    j["phase_jitter_std"] = noise.phase_jitter_std;
    j["max_abs_error"] = report.max_abs_error;
    j["rms_error"] = report.rms_error;
    write_if(cfg, "json", dir / "estimate.json", j.dump(2) + "\n");

    std::cout << "max abs error vs exact: " << glf::io::format_sci(report.max_abs_error) << "\n";
    std::cout << "rms error vs exact:     " << glf::io::format_sci(report.rms_error) << "\n";
    return 0;
}

// --------------------------- figure reproduction ---------------------------

struct CanonicalRun {
    std::string name;
    std::string file; // file covered by the fixture manifest
};

int cmd_reproduce(const RunConfig& cfg, const std::string& manifest_path, bool update) {
    const fs::path dir(cfg.out_dir);
    std::vector<CanonicalRun> runs;
    bool checks_ok = true;
    const auto check = [&](bool ok, const std::string& label) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << label << "\n";
        checks_ok = checks_ok && ok;
    };

    // intensity evolution maps, 633 nm lattice
    {
        const auto profile = glf::build_glauber_fock_profile(59, 0.37);
        const auto matrix = coupling_matrix(profile);
        const std::array<std::pair<std::string, int>, 4> panels{
            {{"fig2a", 0}, {"fig2b", 1}, {"fig2c", 2}, {"fig2d", 4}}};
        std::vector<double> grid(201);
        for (int j = 0; j <= 200; ++j) grid[static_cast<std::size_t>(j)] = 10.0 * j / 200.0;

        for (const auto& [name, site] : panels) {
            const auto input = glf::single_site_excitation(59, site);
            const auto map = intensity_map(matrix, input, grid);
            const std::string file = name + "_map.csv";
            glf::io::write_file_atomic(dir / file, glf::io::intensity_map_csv(map));
            glf::io::write_file_atomic(dir / (name + "_map.pgm"),
                                       glf::io::pgm_image(map.intensities, glf::io::PgmDepth::bits16,
                                                          glf::io::PgmScaling::per_row));
            runs.push_back({name, file});

            const Eigen::VectorXd last = map.intensities.row(200);
            const std::vector<double> values(last.data(), last.data() + last.size());
            check(glf::count_maxima(values) == site + 1,
                  name + ": output profile has k+1 = " + std::to_string(site + 1) + " maxima");
        }
    }

    // correlation maps, 800 nm lattice
    {
        const auto profile = glf::build_glauber_fock_profile(59, 0.36);
        const auto op = evolution_operator(coupling_matrix(profile), 10.0);
        struct Panel {
            std::string name;
            glf::InputState input;
        };
        const std::vector<Panel> panels{
            {"fig3d", glf::InputState::separable_pair(0, 1)},
            {"fig3e", glf::InputState::separable_pair(1, 2)},
            {"fig3f", glf::InputState::separable_pair(0, 2)},
            {"fig4d", glf::InputState::noon_pair(0, 1, -1)},
            {"fig4g", glf::InputState::fermion_pair(0, 1)},
        };

        std::vector<Eigen::MatrixXd> boson_maps;
        for (const auto& panel : panels) {
            const auto raw = correlation(op, panel.input);
            const auto peak = peak_normalize(raw);
            const std::string file = panel.name + "_gamma_raw.csv";
            glf::io::write_file_atomic(dir / file, glf::io::matrix_csv(raw.entries));
            glf::io::write_file_atomic(dir / (panel.name + "_gamma_peak.csv"),
                                       glf::io::matrix_csv(peak.entries));
            glf::io::write_file_atomic(dir / (panel.name + "_gamma.pgm"),
                                       glf::io::pgm_image(peak.entries, glf::io::PgmDepth::bits16,
                                                          glf::io::PgmScaling::global_peak));
            runs.push_back({panel.name, file});

            check(std::abs(raw.entries.sum() - 2.0) < 1e-9, panel.name + ": sum rule = 2");
            if (panel.input.kind == glf::InputState::Kind::SeparablePair) {
                boson_maps.push_back(peak.entries);
            }

            Eigen::Index q, r;
            raw.entries.maxCoeff(&q, &r);
            if (panel.name == "fig3d") {
                check(q == r, "fig3d: boson (0,1) correlation peaks on the diagonal");
            }
            if (panel.name == "fig4g") {
                check(q != r, "fig4g: fermion (0,1) correlation peaks off the diagonal");
                check(raw.entries.diagonal().cwiseAbs().maxCoeff() < 1e-20,
                      "fig4g: fermion diagonal is zero");
            }
        }

        const char* pair_names[3] = {"(0,1)/(1,2)", "(0,1)/(0,2)", "(1,2)/(0,2)"};
        int idx = 0;
        for (std::size_t i = 0; i < boson_maps.size(); ++i) {
            for (std::size_t j = i + 1; j < boson_maps.size(); ++j) {
                const double dist = (boson_maps[i] - boson_maps[j]).cwiseAbs().maxCoeff();
                check(dist > 0.1, std::string("boson maps ") + pair_names[idx++] +
                                      " differ by > 0.1 in max norm");
            }
        }
    }

    // fixture manifest: bytes + FNV-1a digest of each canonical CSV
    if (update) {
        json manifest;
        for (const auto& run : runs) {
            const std::string content = glf::io::read_file(dir / run.file);
            char digest[19];
            std::snprintf(digest, sizeof(digest), "0x%016llx",
                          static_cast<unsigned long long>(glf::io::fnv1a64(content)));
            manifest["files"][run.file] = {{"bytes", content.size()}, {"fnv1a64", digest}};
        }
        glf::io::write_file_atomic(manifest_path, manifest.dump(2) + "\n");
        std::cout << "wrote fixture manifest " << manifest_path << "\n";
    } else {
        if (!fs::exists(manifest_path)) {
            std::cerr << "fixture manifest " << manifest_path
                      << " not found; run with --update-fixtures to create it\n";
            return 2;
        }
        const json manifest = json::parse(glf::io::read_file(manifest_path));
        for (const auto& run : runs) {
            const std::string content = glf::io::read_file(dir / run.file);
            char digest[19];
            std::snprintf(digest, sizeof(digest), "0x%016llx",
                          static_cast<unsigned long long>(glf::io::fnv1a64(content)));
            const json& entry = manifest.at("files").at(run.file);
            const bool ok = entry.at("bytes").get<std::size_t>() == content.size() &&
                            entry.at("fnv1a64").get<std::string>() == digest;
            check(ok, run.file + " matches the frozen fixture");
        }
    }

    if (!checks_ok) {
        std::cerr << "figure reproduction failed\n";
        return 4;
    }
    std::cout << "all canonical maps reproduced\n";
    return 0;
}

// ------------------------------- CLI wiring --------------------------------

struct CliOptions {
    std::string config_path;
    std::string input_text;
    std::string format_text;
    RunConfig values; // receives CLI flag values before merging
    std::string manifest = "fixtures/reproduce_manifest.json";
    bool update_fixtures = false;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON config file; flags override it");
    cmd->add_option("--sites", opts.values.n_sites, "number of waveguides N");
    cmd->add_option("--coupling", opts.values.base_coupling, "base coupling C1 [cm^-1]");
    cmd->add_option("--geometry", opts.values.geometry_file,
                    "geometry JSON file; couplings recovered via the calibration");
    cmd->add_option("--d1", opts.values.calibration.d1, "calibration separation d1 [um]");
    cmd->add_option("--kappa", opts.values.calibration.kappa, "calibration decay length [um]");
    cmd->add_option("--wavelength", opts.values.calibration.wavelength,
                    "design wavelength [nm], metadata");
    cmd->add_option("--length-cm", opts.values.z_length, "propagation length [cm]");
    cmd->add_option("--z-samples", opts.values.z_samples, "number of z samples");
    cmd->add_option("--input", opts.input_text, "input site k, or pair k,l");
    cmd->add_option("--state", opts.values.state,
                    "input state: single, boson, noon+, noon-, fermion");
    cmd->add_option("--out-dir", opts.values.out_dir, "output directory");
    cmd->add_option("--format", opts.format_text, "comma list from csv,json,pgm");
    cmd->add_option("--normalize", opts.values.normalize, "raw or peak");
    cmd->add_option("--seed", opts.values.seed, "random seed for estimation");
    cmd->add_option("--phases", opts.values.phases, "phase plan: M or grid:P");
    cmd->add_option("--amplitude-jitter", opts.values.amplitude_jitter,
                    "relative amplitude jitter std per sample");
    cmd->add_option("--phase-jitter", opts.values.phase_jitter,
                    "phase jitter std per sample [rad]");
    cmd->add_option("--pgm-depth", opts.values.pgm_depth, "PGM bit depth: 8 or 16");
    cmd->add_option("--pgm-scale", opts.values.pgm_scale, "PGM normalization: global or row");
    cmd->add_option("--gamma", opts.values.gamma, "PGM display gamma");
    cmd->add_option("--max-coupling", opts.values.max_coupling,
                    "fabrication coupling limit [cm^-1]");
}

// Precedence: CLI flag > config file > built-in default.
RunConfig merge_config(const CLI::App* cmd, const CliOptions& opts) {
    RunConfig cfg;
    if (!opts.config_path.empty()) {
        apply_config_json(cfg, json::parse(glf::io::read_file(opts.config_path)));
    }
    const auto set = [&](const std::string& flag) { return cmd->count(flag) > 0; };
    if (set("--sites")) cfg.n_sites = opts.values.n_sites;
    if (set("--coupling")) {
        cfg.base_coupling = opts.values.base_coupling;
        cfg.base_coupling_set = true;
    }
    if (set("--geometry")) cfg.geometry_file = opts.values.geometry_file;
    if (set("--d1")) cfg.calibration.d1 = opts.values.calibration.d1;
    if (set("--kappa")) cfg.calibration.kappa = opts.values.calibration.kappa;
    if (set("--wavelength")) cfg.calibration.wavelength = opts.values.calibration.wavelength;
    if (set("--length-cm")) cfg.z_length = opts.values.z_length;
    if (set("--z-samples")) cfg.z_samples = opts.values.z_samples;
    if (set("--input")) parse_input_sites(opts.input_text, cfg);
    if (set("--state")) cfg.state = opts.values.state;
    if (set("--out-dir")) {
        cfg.out_dir = opts.values.out_dir;
        cfg.out_dir_set = true;
    }
    if (set("--format")) {
        cfg.formats.clear();
        std::string token;
        for (char c : opts.format_text + ",") {
            if (c == ',') {
                if (!token.empty()) cfg.formats.insert(token);
                token.clear();
            } else {
                token += c;
            }
        }
    }
    if (set("--normalize")) cfg.normalize = opts.values.normalize;
    if (set("--seed")) cfg.seed = opts.values.seed;
    if (set("--phases")) cfg.phases = opts.values.phases;
    if (set("--amplitude-jitter")) cfg.amplitude_jitter = opts.values.amplitude_jitter;
    if (set("--phase-jitter")) cfg.phase_jitter = opts.values.phase_jitter;
    if (set("--pgm-depth")) cfg.pgm_depth = opts.values.pgm_depth;
    if (set("--pgm-scale")) cfg.pgm_scale = opts.values.pgm_scale;
    if (set("--gamma")) cfg.gamma = opts.values.gamma;
    if (set("--max-coupling")) cfg.max_coupling = opts.values.max_coupling;

    // the calibration shares C1 with the lattice unless the config split them
    if (set("--coupling")) cfg.calibration.base_coupling = opts.values.base_coupling;
    validate_formats(cfg);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Glauber-Fock photonic lattice simulator"};
    app.require_subcommand(1);

    CliOptions design_opts, propagate_opts, correlate_opts, estimate_opts, reproduce_opts;

    CLI::App* design = app.add_subcommand("design", "waveguide separations for a target profile");
    add_common_options(design, design_opts);

    CLI::App* prop = app.add_subcommand("propagate", "intensity evolution of a single-site input");
    add_common_options(prop, propagate_opts);

    CLI::App* corr = app.add_subcommand("correlate", "exact two-particle correlation matrix");
    add_common_options(corr, correlate_opts);

    CLI::App* est = app.add_subcommand("estimate", "classical-light correlation estimate");
    add_common_options(est, estimate_opts);

    CLI::App* repro =
        app.add_subcommand("reproduce-paper", "regenerate the canonical figure set and "
                                              "compare with frozen fixtures");
    add_common_options(repro, reproduce_opts);
    repro->add_option("--manifest", reproduce_opts.manifest, "fixture manifest path");
    repro->add_flag("--update-fixtures", reproduce_opts.update_fixtures,
                    "rewrite the manifest from this run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (design->parsed()) return cmd_design(merge_config(design, design_opts));
        if (prop->parsed()) return cmd_propagate(merge_config(prop, propagate_opts));
        if (corr->parsed()) return cmd_correlate(merge_config(corr, correlate_opts));
        if (est->parsed()) return cmd_estimate(merge_config(est, estimate_opts));
        if (repro->parsed()) {
            RunConfig cfg = merge_config(repro, reproduce_opts);
            if (!cfg.out_dir_set) cfg.out_dir = "paper_out";
            return cmd_reproduce(cfg, reproduce_opts.manifest, reproduce_opts.update_fixtures);
        }
    } catch (const glf::infeasible_geometry_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const glf::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

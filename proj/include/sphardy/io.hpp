#pragma once

// Artifact plumbing for the command-line tool: flat key=value config files
// (diff-friendly, lossless round trip), fixed-format CSV rows, and JSON
// manifests/summaries.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphardy/experiment.hpp"

namespace sphardy {

constexpr const char* library_version = "0.1.0";

/// Shortest exact decimal form of a double (%.17g round-trips).
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    return parts;
}

inline double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw config_error("config: bad number for " + key + ": '" + value + "'");
    }
}

inline long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw config_error("config: bad integer for " + key + ": '" + value + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw config_error("config: bad boolean for " + key + ": '" + value + "'");
}

}  // namespace detail

/// key = value lines; '#' starts a comment; blank lines ignored.
inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(lineno) +
                               " is not key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        if (key.empty())
            throw config_error("config: empty key on line " + std::to_string(lineno));
        kv[key] = detail::trim(line.substr(eq + 1));
    }
    return kv;
}

/// Applies parsed keys onto a config; unknown keys are errors.
inline ExperimentConfig config_from_map(const std::map<std::string, std::string>& kv,
                                        ExperimentConfig cfg = {}) {
    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_int;
    for (const auto& [key, value] : kv) {
        if (key == "sigma") {
            cfg.sigma = value;
        } else if (key == "center") {
            const std::vector<std::string> p = detail::split(value, ',');
            if (p.size() != 3) throw config_error("config: center needs three components");
            cfg.center = Vec3(parse_double(key, p[0]), parse_double(key, p[1]),
                              parse_double(key, p[2]));
        } else if (key == "rho") {
            cfg.rho = parse_double(key, value);
        } else if (key == "n_max") {
            cfg.n_max = static_cast<int>(parse_int(key, value));
        } else if (key == "degree") {
            cfg.degree = static_cast<int>(parse_int(key, value));
        } else if (key == "s") {
            cfg.s = parse_double(key, value);
        } else if (key == "nu") {
            cfg.nu = parse_double(key, value);
        } else if (key == "cbar") {
            cfg.cbar = parse_double(key, value);
        } else if (key == "gamma") {
            cfg.gamma = parse_double(key, value);
        } else if (key == "anchor_h") {
            cfg.anchor_h = parse_double(key, value);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "lambdas") {
            cfg.lambdas.clear();
            for (const std::string& l : detail::split(value, ','))
                cfg.lambdas.push_back(parse_double(key, l));
        } else if (key == "allow_large") {
            cfg.allow_large = parse_bool(key, value);
        } else if (key == "out") {
            cfg.out_dir = value;
        } else {
            throw config_error("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

/// Emits the flat file form; parse_config_text(write_config(c)) restores
/// every field exactly.
inline std::string write_config(const ExperimentConfig& cfg) {
    std::string out;
    out += "sigma = " + cfg.sigma + "\n";
    out += "center = " + format_double(cfg.center.x()) + ", " + format_double(cfg.center.y()) +
           ", " + format_double(cfg.center.z()) + "\n";
    out += "rho = " + format_double(cfg.rho) + "\n";
    out += "n_max = " + std::to_string(cfg.n_max) + "\n";
    out += "degree = " + std::to_string(cfg.degree) + "\n";
    out += "s = " + format_double(cfg.s) + "\n";
    out += "nu = " + format_double(cfg.nu) + "\n";
    out += "cbar = " + format_double(cfg.cbar) + "\n";
    out += "gamma = " + format_double(cfg.gamma) + "\n";
    out += "anchor_h = " + format_double(cfg.anchor_h) + "\n";
    out += "seed = " + std::to_string(cfg.seed) + "\n";
    std::string grid;
    for (const double l : cfg.lambdas) {
        if (!grid.empty()) grid += ", ";
        grid += format_double(l);
    }
    out += "lambdas = " + grid + "\n";
    out += "allow_large = " + std::string(cfg.allow_large ? "true" : "false") + "\n";
    out += "out = " + cfg.out_dir + "\n";
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("config: cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write '" + path + "'");
    out << content;
}

// ---------------------------------------------------------------------------
// CSV artifacts
// ---------------------------------------------------------------------------

inline constexpr const char* convergence_csv_header =
    "sigma,n,h_n,num_atoms,delta_n,rho_n,lambda,rel_error";

inline std::string convergence_csv_row(const std::string& sigma, const ConvergenceLevel& r) {
    std::string row = sigma;
    row += "," + std::to_string(r.n);
    row += "," + format_double(r.h_n);
    row += "," + std::to_string(r.num_atoms);
    row += "," + format_double(r.delta_n);
    row += "," + format_double(r.rho_n);
    row += "," + format_double(r.lambda);
    row += "," + format_double(r.rel_error);
    return row;
}

// ---------------------------------------------------------------------------
// JSON artifacts
// ---------------------------------------------------------------------------

inline nlohmann::json config_json(const ExperimentConfig& cfg) {
    return nlohmann::json{{"sigma", cfg.sigma},
                          {"center", {cfg.center.x(), cfg.center.y(), cfg.center.z()}},
                          {"rho", cfg.rho},
                          {"n_max", cfg.n_max},
                          {"degree", cfg.degree},
                          {"s", cfg.s},
                          {"nu", cfg.nu},
                          {"cbar", cfg.cbar},
                          {"gamma", cfg.gamma},
                          {"anchor_h", cfg.anchor_h},
                          {"seed", cfg.seed},
                          {"lambdas", cfg.lambdas},
                          {"allow_large", cfg.allow_large},
                          {"out", cfg.out_dir}};
}

/// Every command writes one of these next to its outputs.
inline nlohmann::json manifest_json(const std::string& command, const ExperimentConfig& cfg,
                                    const std::vector<ConvergenceLevel>& levels,
                                    double total_seconds) {
    nlohmann::json wall = nlohmann::json::array();
    for (const ConvergenceLevel& r : levels)
        wall.push_back({{"n", r.n}, {"seconds", r.seconds}});
    return nlohmann::json{{"command", command},
                          {"version", library_version},
                          {"config", config_json(cfg)},
                          {"wall_clock_per_level", wall},
                          {"total_seconds", total_seconds}};
}

inline nlohmann::json convergence_summary_json(const ExperimentConfig& cfg,
                                               const ConvergenceTargets& targets,
                                               const std::vector<ConvergenceLevel>& levels) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ConvergenceLevel& r : levels)
        rows.push_back({{"n", r.n},
                        {"h_n", r.h_n},
                        {"num_atoms", r.num_atoms},
                        {"delta_n", r.delta_n},
                        {"rho_n", r.rho_n},
                        {"lambda", r.lambda},
                        {"rel_error", r.rel_error},
                        {"envelope", r.envelope}});
    return nlohmann::json{{"sigma", cfg.sigma},
                          {"degree", cfg.degree},
                          {"s", cfg.s},
                          {"denominator", targets.denominator},
                          {"baseline_rel_error", targets.baseline},
                          {"levels", rows}};
}

}  // namespace sphardy

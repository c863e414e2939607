#include "conemc/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conemc/curvature.hpp"
#include "conemc/io.hpp"
#include "conemc/spectral.hpp"

namespace conemc {

namespace {

const char* const kTolKeys[] = {"tol_conformality", "tol_claim2",       "tol_gz",
                                "tol_roundtrip",    "tol_maineq",       "tol_beltrami",
                                "tol_cone",         "tol_equivariance", "tol_gausspde",
                                "tol_weierstrass",  "tol_radial",       "sigma_mask"};

double parse_number(const std::string& value, const std::string& key, int line) {
    try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        if (!std::isfinite(v)) throw std::invalid_argument("not finite");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': '" + value + "'", line);
    }
}

std::vector<double> parse_number_list(const std::string& value, const std::string& key, int line) {
    std::vector<double> out;
    size_t start = 0;
    while (start <= value.size()) {
        size_t end = value.find(',', start);
        if (end == std::string::npos) end = value.size();
        out.push_back(parse_number(value.substr(start, end - start), key, line));
        if (end == value.size()) break;
        start = end + 1;
    }
    return out;
}

bool parse_bool(const std::string& value, const std::string& key, int line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("bad boolean for '" + key + "': '" + value + "'", line);
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value, int line,
               bool& mode_seen) {
    if (key == "mode") {
        mode_seen = true;
        if (value == "solve") {
            cfg.mode = RunMode::solve;
        } else if (value == "radial") {
            cfg.mode = RunMode::radial;
        } else if (value == "extract") {
            cfg.mode = RunMode::extract;
        } else if (value == "check") {
            cfg.mode = RunMode::check;
        } else if (value == "export") {
            cfg.mode = RunMode::export_mode;
        } else {
            throw ConfigError("unknown mode '" + value + "'", line);
        }
        return;
    }
    if (key == "A") {
        cfg.a_cos = {parse_number(value, key, line)};
        cfg.a_sin.clear();
        cfg.has_A = true;
        return;
    }
    if (key == "A_cos") {
        cfg.a_cos = parse_number_list(value, key, line);
        cfg.has_A = true;
        return;
    }
    if (key == "A_sin") {
        cfg.a_sin = parse_number_list(value, key, line);
        cfg.has_A = true;
        return;
    }
    if (key == "H") {
        try {
            PrescribedCurvature::expression(value);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("bad H expression: ") + e.what(), line);
        }
        cfg.h_text = value;
        return;
    }
    if (key == "n") {
        const double v = parse_number(value, key, line);
        const int n = static_cast<int>(v);
        if (v != n || n < 8 || !is_power_of_two(n)) {
            throw ConfigError("n must be a power of two >= 8, got '" + value + "'", line);
        }
        cfg.n = n;
        return;
    }
    if (key == "dv") {
        cfg.dv = parse_number(value, key, line);
        if (!(cfg.dv > 0.0)) throw ConfigError("dv must be > 0", line);
        return;
    }
    if (key == "v_max") {
        cfg.v_max = parse_number(value, key, line);
        if (!(cfg.v_max > 0.0)) throw ConfigError("v_max must be > 0", line);
        return;
    }
    if (key == "filter_strength") {
        cfg.filter_strength = parse_number(value, key, line);
        if (cfg.filter_strength < 0.0) throw ConfigError("filter_strength must be >= 0", line);
        return;
    }
    if (key == "residual_budget") {
        cfg.residual_budget = parse_number(value, key, line);
        if (!(cfg.residual_budget > 0.0)) throw ConfigError("residual_budget must be > 0", line);
        return;
    }
    if (key == "p0") {
        const std::vector<double> v = parse_number_list(value, key, line);
        if (v.size() != 3) throw ConfigError("p0 must be x,y,z", line);
        cfg.p0 = {v[0], v[1], v[2]};
        return;
    }
    if (key == "out") {
        if (value.empty()) throw ConfigError("out must not be empty", line);
        cfg.out_dir = value;
        return;
    }
    if (key == "surface") {
        cfg.surface_in = value;
        return;
    }
    if (key == "obj") {
        cfg.write_obj = parse_bool(value, key, line);
        return;
    }
    if (key == "graph_csv") {
        cfg.write_graph = parse_bool(value, key, line);
        return;
    }
    for (const char* tk : kTolKeys) {
        if (key == tk) {
            const double v = parse_number(value, key, line);
            if (!(v > 0.0)) throw ConfigError(std::string(tk) + " must be > 0", line);
            cfg.tol[key] = v;
            return;
        }
    }
    throw ConfigError("unknown key '" + key + "'", line);
}

}  // namespace

std::map<std::string, double> RunConfig::default_tolerances() {
    return {{"tol_conformality", 1e-6}, {"tol_claim2", 1e-3},       {"tol_gz", 1e-3},
            {"tol_roundtrip", 1e-3},    {"tol_maineq", 1e-4},       {"tol_beltrami", 1e-6},
            {"tol_cone", 1e-2},         {"tol_equivariance", 1e-9}, {"tol_gausspde", 1e-4},
            {"tol_weierstrass", 1e-4},  {"tol_radial", 1e-8},       {"sigma_mask", 1e-8}};
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.tol = RunConfig::default_tolerances();
    bool mode_seen = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // trim
        const size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const size_t last = line.find_last_not_of(" \t");
        line = line.substr(first, last - first + 1);
        if (line.empty() || line[0] == '#') continue;

        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected key=value, got '" + line + "'", lineno);
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        while (!value.empty() && (value.front() == ' ' || value.front() == '\t')) {
            value.erase(value.begin());
        }
        apply_key(cfg, key, value, lineno, mode_seen);
    }

    if (!mode_seen) throw ConfigError("missing mode (one of solve|radial|extract|check|export)", 0);

    // cross-field validation
    if ((cfg.mode == RunMode::solve || cfg.mode == RunMode::radial) && !cfg.has_A) {
        throw ConfigError("mode requires a height function: set A or A_cos/A_sin", 0);
    }
    if ((cfg.mode == RunMode::extract || cfg.mode == RunMode::check ||
         cfg.mode == RunMode::export_mode) &&
        cfg.surface_in.empty()) {
        throw ConfigError("mode requires surface=<input csv path>", 0);
    }
    if (cfg.mode == RunMode::radial) {
        if (!cfg.a_sin.empty() || cfg.a_cos.size() != 1 ||
            (cfg.a_cos[0] != 0.25 && cfg.a_cos[0] != -0.25)) {
            throw ConfigError("radial mode supports constant A = -0.25 or A = 0.25", 0);
        }
    }
    return cfg;
}

const char* mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::solve: return "solve";
        case RunMode::radial: return "radial";
        case RunMode::extract: return "extract";
        case RunMode::check: return "check";
        case RunMode::export_mode: return "export";
    }
    return "?";
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("mode", mode_name(cfg.mode));
    if (cfg.has_A) {
        std::string cosv, sinv;
        for (size_t i = 0; i < cfg.a_cos.size(); ++i) {
            if (i) cosv += ',';
            cosv += format_double(cfg.a_cos[i]);
        }
        for (size_t i = 0; i < cfg.a_sin.size(); ++i) {
            if (i) sinv += ',';
            sinv += format_double(cfg.a_sin[i]);
        }
        out.emplace_back("A_cos", cosv);
        if (!sinv.empty()) out.emplace_back("A_sin", sinv);
    }
    out.emplace_back("H", cfg.h_text);
    out.emplace_back("n", std::to_string(cfg.n));
    out.emplace_back("dv", format_double(cfg.dv));
    out.emplace_back("v_max", format_double(cfg.v_max));
    out.emplace_back("filter_strength", format_double(cfg.filter_strength));
    out.emplace_back("residual_budget", format_double(cfg.residual_budget));
    out.emplace_back("p0", format_double(cfg.p0.x) + "," + format_double(cfg.p0.y) + "," +
                               format_double(cfg.p0.z));
    out.emplace_back("out", cfg.out_dir);
    if (!cfg.surface_in.empty()) out.emplace_back("surface", cfg.surface_in);
    out.emplace_back("obj", cfg.write_obj ? "true" : "false");
    out.emplace_back("graph_csv", cfg.write_graph ? "true" : "false");
    for (const auto& [k, v] : cfg.tol) out.emplace_back(k, format_double(v));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace conemc

#pragma once

// Run configuration in key=value line format. Blank lines and lines starting
// with '#' are ignored; duplicate keys resolve last-wins (the CLI appends its
// verb and flag overrides after the config-file text, so flags win).
//
// Keys:
//   mode            solve | radial | extract | check | export
//   A               constant height function (shorthand for A_cos=<value>)
//   A_cos           comma list c0,c1,...   A(u) = c0 + sum_k c_k cos(ku) + ...
//   A_sin           comma list s1,s2,...   ... + sum_k s_k sin(ku)
//   H               curvature expression over x, y, z, r2 (default 1)
//   n, dv, v_max, filter_strength, residual_budget, p0 (x,y,z)
//   out             output directory
//   surface         input surface csv (extract/check/export)
//   obj, graph_csv  true|false extra exports
//   tol_conformality, tol_claim2, tol_gz, tol_roundtrip, tol_maineq,
//   tol_beltrami, tol_cone, tol_equivariance, sigma_mask

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "conemc/lorentz.hpp"

namespace conemc {

struct ConfigError : std::runtime_error {
    int line;  // 0 when not tied to a config line
    ConfigError(const std::string& msg, int line_no)
        : std::runtime_error(msg + (line_no > 0 ? " (line " + std::to_string(line_no) + ")" : "")),
          line(line_no) {}
};

enum class RunMode { solve, radial, extract, check, export_mode };

struct RunConfig {
    RunMode mode = RunMode::solve;
    bool has_A = false;
    std::vector<double> a_cos;  // c0, c1, ...
    std::vector<double> a_sin;  // s1, ...
    std::string h_text = "1";
    int n = 64;
    double dv = 1e-3;
    double v_max = 0.8;
    double filter_strength = 36.0;
    double residual_budget = 1e-6;
    LVec3 p0{0.0, 0.0, 0.0};
    std::string out_dir = "out";
    std::string surface_in;
    bool write_obj = false;
    bool write_graph = false;
    std::map<std::string, double> tol;  // filled with defaults

    static std::map<std::string, double> default_tolerances();
};

// Parses and validates; throws ConfigError (with line number) on unknown
// keys, malformed or out-of-range values, or a missing/invalid mode.
RunConfig parse_config(const std::string& text);

// Canonical echo of the effective configuration, one key per line, sorted.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg);

const char* mode_name(RunMode mode);

}  // namespace conemc

#include "conemc/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>

#include "conemc/analysis.hpp"
#include "conemc/fd.hpp"
#include "conemc/graph.hpp"
#include "conemc/io.hpp"
#include "conemc/radial.hpp"

namespace conemc {

namespace {

PeriodicField height_field(const RunConfig& cfg) {
    return NullCurveSpec::cosine_series(cfg.n, cfg.a_cos, cfg.a_sin).A;
}

SolverConfig solver_config(const RunConfig& cfg) {
    SolverConfig sc;
    sc.n = cfg.n;
    sc.dv = cfg.dv;
    sc.v_max = cfg.v_max;
    sc.filter_strength = cfg.filter_strength;
    sc.residual_budget = cfg.residual_budget;
    sc.p0 = cfg.p0;
    return sc;
}

double patch_conformality(const SurfacePatch& patch) {
    double worst = 0.0;
    for (int k = 0; k < patch.levels(); ++k) {
        CauchyState s;
        s.v = patch.v_levels[static_cast<size_t>(k)];
        s.psi = patch.psi[static_cast<size_t>(k)];
        s.psi_v = patch.psi_v[static_cast<size_t>(k)];
        worst = std::max(worst, conformality_residual(s));
    }
    return worst;
}

// n3 = x_u y_v - x_v y_u per row; one-sided d/dv at v = 0 against A(u)^2
double claim2_identity_error(const SurfacePatch& patch) {
    const int width = 6;
    if (patch.levels() < width) throw SolverError("claim2: too few levels");
    const int n = patch.n;
    std::vector<std::vector<double>> n3(width, std::vector<double>(static_cast<size_t>(n)));
    for (int k = 0; k < width; ++k) {
        const std::vector<LVec3> du = row_derivative(patch.psi[static_cast<size_t>(k)], 1);
        for (int j = 0; j < n; ++j) {
            const LVec3& a = du[static_cast<size_t>(j)];
            const LVec3& b = patch.psi_v[static_cast<size_t>(k)][static_cast<size_t>(j)];
            n3[static_cast<size_t>(k)][static_cast<size_t>(j)] = a.x * b.y - b.x * a.y;
        }
    }
    double worst = 0.0;
    std::vector<double> col(width);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < width; ++k) col[static_cast<size_t>(k)] = n3[static_cast<size_t>(k)][static_cast<size_t>(j)];
        const double slope = fd_derivative_at(col, patch.dv, 1, 4, 0);
        const double a = patch.psi_v[0][static_cast<size_t>(j)].z;
        worst = std::max(worst, std::abs(slope - a * a));
        worst = std::max(worst, std::abs(col[0]));  // n3(u,0) = 0
    }
    return worst;
}

struct BatteryContext {
    const RunConfig& cfg;
    DiagnosticsReport& rep;
    double tol(const std::string& key) const { return cfg.tol.at(key); }
};

void add_check(DiagnosticsReport& rep, const std::string& name, double value, double tol,
               bool pass, const std::string& note = "") {
    rep.checks.push_back({name, value, tol, pass, note});
}

void run_value_check(BatteryContext& ctx, const std::string& name, const std::string& tol_key,
                     const std::function<double()>& fn) {
    const double tol = ctx.tol(tol_key);
    try {
        const double v = fn();
        add_check(ctx.rep, name, v, tol, v <= tol);
    } catch (const std::exception& e) {
        add_check(ctx.rep, name, std::numeric_limits<double>::quiet_NaN(), tol, false, e.what());
    }
}

// strictly decreasing deviations as v decreases; returns the worst increase
double monotone_violation(const std::vector<std::pair<double, double>>& by_v) {
    // by_v sorted by decreasing v; value must decrease along the vector
    double worst = 0.0;
    for (size_t i = 1; i < by_v.size(); ++i) {
        worst = std::max(worst, by_v[i].second - by_v[i - 1].second);
    }
    return worst;
}

std::vector<int> sample_levels(const SurfacePatch& patch, std::initializer_list<double> targets) {
    std::vector<int> out;
    for (double v : targets) {
        if (v > patch.v_ok + patch.dv / 2.0) continue;
        const int k = static_cast<int>(std::lround(v / patch.dv));
        if (k >= 1 && k < patch.levels() &&
            std::abs(patch.v_levels[static_cast<size_t>(k)] - v) <= patch.dv / 2.0) {
            out.push_back(k);
        }
    }
    return out;
}

void run_battery(BatteryContext& ctx, const SurfacePatch& patch, const PrescribedCurvature& H,
                 const PeriodicField* input_A) {
    DiagnosticsReport& rep = ctx.rep;

    rep.meta("solver.v_ok", format_double(patch.v_ok));
    rep.meta("solver.levels", std::to_string(patch.levels()));
    rep.meta("solver.degraded", patch.degraded ? "true" : "false");
    if (patch.degraded) rep.meta("solver.degrade_reason", patch.degrade_reason);
    if (!patch.residual_history.empty()) {
        const size_t m = patch.residual_history.size();
        for (size_t i = 0; i < 8; ++i) {
            const size_t idx = i * (m - 1) / 7;
            rep.meta("solver.residual[" + format_double(patch.residual_history[idx].first) + "]",
                     format_double(patch.residual_history[idx].second));
        }
    }

    run_value_check(ctx, "conformality", "tol_conformality",
                    [&] { return patch_conformality(patch); });
    run_value_check(ctx, "claim2_boundary_identity", "tol_claim2",
                    [&] { return claim2_identity_error(patch); });

    // limit null curve: existence, embeddedness margins, canonical trace
    LimitNullCurve curve;
    bool have_curve = false;
    try {
        curve = extract_null_curve(patch);
        have_curve = true;
        const double margin = spacelike_regularity_min(curve);
        add_check(rep, "boundary.spacelike_regularity", margin, 0.0, margin > 0.0);
        double min_b = std::numeric_limits<double>::infinity();
        for (const auto& b : patch.psi_v[0]) min_b = std::min(min_b, euclidean_norm(b));
        add_check(rep, "boundary.nonvanishing", min_b, 0.0, min_b > 0.0);
        rep.meta("boundary.cone", curve.cone_sign > 0 ? "upper" : "lower");
    } catch (const std::exception& e) {
        add_check(rep, "boundary.limit_null_curve", std::numeric_limits<double>::quiet_NaN(), 0.0,
                  false, e.what());
    }

    if (input_A != nullptr && have_curve) {
        const double tol = ctx.tol("tol_roundtrip");
        double worst = 0.0;
        for (int j = 0; j < patch.n; ++j) {
            worst = std::max(worst, std::abs(curve.A.real_at(j) - input_A->real_at(j)));
        }
        add_check(rep, "round_trip", worst, tol, worst <= tol);
    }

    // Gauss map diagnostics
    try {
        const GaussField g = gauss_map(patch);
        const int degree = boundary_trace_degree(g);
        add_check(rep, "gauss.boundary_degree", degree, 1.0, degree == 1);
        const double gmax = interior_gauss_modulus_max(g);
        add_check(rep, "gauss.interior_modulus", gmax, 1.0, gmax < 1.0);
        run_value_check(ctx, "gauss.pde_residual", "tol_gausspde",
                        [&] { return gauss_pde_residual(g, H, patch); });
        run_value_check(ctx, "weierstrass", "tol_weierstrass",
                        [&] { return weierstrass_check(patch, g, H); });
        run_value_check(ctx, "gz_identity", "tol_gz", [&] { return gz_identity_check(patch, g); });

        const CurvatureField kf = gaussian_curvature(g, H, patch);
        const std::vector<int> klevels = sample_levels(patch, {0.3, 0.2, 0.1, 0.05});
        if (klevels.size() >= 2) {
            std::vector<std::pair<double, double>> by_v;
            double kmin = std::numeric_limits<double>::infinity();
            for (int lvl : klevels) {
                const double kmax = kf.row_max(lvl);
                by_v.emplace_back(patch.v_levels[static_cast<size_t>(lvl)], kmax);
                kmin = std::min(kmin, kmax);
            }
            std::sort(by_v.begin(), by_v.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            // K positive and strictly increasing as v decreases
            double worst_nonincrease = 0.0;
            for (size_t i = 1; i < by_v.size(); ++i) {
                worst_nonincrease =
                    std::max(worst_nonincrease, by_v[i - 1].second - by_v[i].second);
            }
            add_check(rep, "curvature.blowup_monotone", worst_nonincrease, 0.0,
                      worst_nonincrease <= 0.0 && kmin > 0.0);
        } else {
            rep.meta("curvature.blowup_monotone", "skipped: strip too short");
        }
    } catch (const std::exception& e) {
        add_check(rep, "gauss.analysis", std::numeric_limits<double>::quiet_NaN(), 0.0, false,
                  e.what());
    }

    // equivariance for rotationally symmetric data
    const bool const_A = input_A != nullptr && mode_energy(*input_A, 0) > 0.0 && [&] {
        for (int k = 1; k <= patch.n / 2; ++k) {
            if (mode_energy(*input_A, k) > 1e-24) return false;
        }
        return true;
    }();
    if (const_A && H.is_rotationally_symmetric()) {
        const double tol = ctx.tol("tol_equivariance");
        const double err = equivariance_error(patch, patch.n / 8);
        add_check(rep, "equivariance", err, tol, err <= tol);
    }

    // graph reconstruction and the quasilinear equation
    try {
        const GraphGrid gg = reconstruct(patch);
        add_check(rep, "graph.injectivity", 0.0, 0.0, true);
        run_value_check(ctx, "graph.maineq_residual", "tol_maineq",
                        [&] { return maineq_residual(gg, H, ctx.tol("sigma_mask")); });
        run_value_check(ctx, "graph.beltrami_residual", "tol_beltrami",
                        [&] { return beltrami_check(patch, gg, ctx.tol("sigma_mask")); });

        const HessianReport hess = hessian_sign(gg);
        add_check(rep, "graph.hessian_sign_constant", hess.min_abs, 0.0,
                  hess.sign_constant && !hess.vanishes,
                  hess.sign > 0 ? "sign +1" : "sign -1");

        const int w = gradient_winding(gg, gg.levels() - 1);
        add_check(rep, "graph.gradient_winding", w, 1.0, std::abs(w) == 1);

        const std::vector<double> ratios = cone_ratio(gg);
        const std::vector<int> clevels =
            sample_levels(patch, {0.4, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01});
        if (!clevels.empty()) {
            std::vector<std::pair<double, double>> by_v;
            for (int lvl : clevels) {
                by_v.emplace_back(patch.v_levels[static_cast<size_t>(lvl)],
                                  ratios[static_cast<size_t>(lvl - 1)]);
            }
            std::sort(by_v.begin(), by_v.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            add_check(rep, "graph.cone_ratio_monotone", monotone_violation(by_v), 0.0,
                      monotone_violation(by_v) <= 0.0);
            const int k001 = static_cast<int>(std::lround(0.01 / patch.dv));
            if (k001 >= 1 && k001 < patch.levels()) {
                const double tol = ctx.tol("tol_cone");
                const double dev = ratios[static_cast<size_t>(k001 - 1)];
                add_check(rep, "graph.cone_ratio_at_0.01", dev, tol, dev <= tol);
            }
        }
    } catch (const std::exception& e) {
        add_check(rep, "graph.injectivity", std::numeric_limits<double>::quiet_NaN(), 0.0, false,
                  e.what());
    }
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void write_artifact(RunResult& result, const std::string& path, const std::string& content) {
    write_text_file(path, content);
    result.files_written.push_back(path);
}

}  // namespace

bool DiagnosticsReport::overall() const {
    if (error_code != "none") return false;
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

void DiagnosticsReport::meta(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
}

std::string DiagnosticsReport::render() const {
    std::string out = "conemc.report: 1\n";
    for (const auto& [k, v] : metadata) out += "meta." + k + ": " + v + "\n";
    for (const auto& c : checks) {
        out += "check." + c.name + ".value: " + format_double(c.value) + "\n";
        out += "check." + c.name + ".tol: " + format_double(c.tol) + "\n";
        out += "check." + c.name + ".pass: " + (c.pass ? std::string("true") : std::string("false")) +
               "\n";
        if (!c.note.empty()) out += "check." + c.name + ".note: " + c.note + "\n";
    }
    out += "overall.pass: " + std::string(overall() ? "true" : "false") + "\n";
    out += "error.code: " + error_code + "\n";
    if (!error_detail.empty()) out += "error.detail: " + error_detail + "\n";
    return out;
}

RunResult run(const RunConfig& cfg) {
    RunResult result;
    DiagnosticsReport& rep = result.report;
    for (const auto& [k, v] : config_echo(cfg)) rep.meta("config." + k, v);

    BatteryContext ctx{cfg, rep};
    try {
        const PrescribedCurvature H = PrescribedCurvature::expression(cfg.h_text);
        switch (cfg.mode) {
            case RunMode::solve: {
                const PeriodicField A = height_field(cfg);
                NullCurveSpec spec{A};
                const SurfacePatch patch = march(spec, H, solver_config(cfg));
                write_artifact(result, out_path(cfg, "surface.csv"), format_surface_csv(patch));
                if (cfg.write_obj) {
                    write_artifact(result, out_path(cfg, "surface.obj"), format_obj(patch));
                }
                run_battery(ctx, patch, H, &A);
                if (cfg.write_graph) {
                    write_artifact(result, out_path(cfg, "graph.csv"),
                                   format_graph_csv(reconstruct(patch)));
                }
                break;
            }
            case RunMode::radial: {
                const double a = cfg.a_cos[0];
                const RadialProfile profile = a > 0.0 ? integrate_pos_quarter(cfg.v_max, cfg.dv)
                                                      : closed_form_profile(cfg.v_max, cfg.dv);
                const SurfacePatch patch = radial_surface(profile, cfg.n);
                write_artifact(result, out_path(cfg, "profile.csv"), format_profile_csv(profile));
                write_artifact(result, out_path(cfg, "surface.csv"), format_surface_csv(patch));
                if (cfg.write_obj) {
                    write_artifact(result, out_path(cfg, "surface.obj"), format_obj(patch));
                }
                run_value_check(ctx, "radial.ansatz_residual", "tol_radial",
                                [&] { return radial_residual(profile, H); });
                const PeriodicField A = height_field(cfg);
                run_battery(ctx, patch, H, &A);
                if (cfg.write_graph) {
                    write_artifact(result, out_path(cfg, "graph.csv"),
                                   format_graph_csv(reconstruct(patch)));
                }
                break;
            }
            case RunMode::extract: {
                const SurfacePatch patch = parse_surface_csv(read_text_file(cfg.surface_in));
                rep.meta("input.levels", std::to_string(patch.levels()));
                try {
                    const LimitNullCurve curve = extract_null_curve(patch);
                    write_artifact(result, out_path(cfg, "height.csv"), format_height_csv(curve));
                    rep.meta("boundary.cone", curve.cone_sign > 0 ? "upper" : "lower");
                    const double margin = spacelike_regularity_min(curve);
                    add_check(rep, "boundary.spacelike_regularity", margin, 0.0, margin > 0.0);
                } catch (const SolverError& e) {
                    add_check(rep, "boundary.limit_null_curve",
                              std::numeric_limits<double>::quiet_NaN(), 0.0, false, e.what());
                }
                break;
            }
            case RunMode::check: {
                const SurfacePatch patch = parse_surface_csv(read_text_file(cfg.surface_in));
                run_battery(ctx, patch, H, nullptr);
                break;
            }
            case RunMode::export_mode: {
                const SurfacePatch patch = parse_surface_csv(read_text_file(cfg.surface_in));
                write_artifact(result, out_path(cfg, "surface.obj"), format_obj(patch));
                if (cfg.write_graph) {
                    write_artifact(result, out_path(cfg, "graph.csv"),
                                   format_graph_csv(reconstruct(patch)));
                }
                break;
            }
        }
        result.exit_code = rep.overall() ? 0 : 2;
    } catch (const ConfigError& e) {
        rep.error_code = "config";
        rep.error_detail = e.what();
        result.exit_code = 1;
    } catch (const SolverError& e) {
        rep.error_code = "solver";
        rep.error_detail = e.what();
        result.exit_code = 1;
    } catch (const IoError& e) {
        rep.error_code = "io";
        rep.error_detail = e.what();
        result.exit_code = 1;
    } catch (const std::exception& e) {
        rep.error_code = "internal";
        rep.error_detail = e.what();
        result.exit_code = 1;
    }

    try {
        write_artifact(result, out_path(cfg, "report.txt"), rep.render());
    } catch (const std::exception&) {
        // leave the report on stdout only; exit code already reflects the run
    }
    return result;
}

}  // namespace conemc

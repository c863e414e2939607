#include "conemc/radial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conemc/fd.hpp"

namespace conemc {

namespace {

int grid_steps(double v_max, double dv) {
    if (!(v_max > 0.0) || !(dv > 0.0)) {
        throw std::invalid_argument("radial profile: v_max and dv must be > 0");
    }
    return static_cast<int>(std::floor(v_max / dv + 0.5));
}

// right-hand sides of the A = +1/4 system
double pos_quarter_fp(double f) { return std::sqrt(1.0 / 16.0 + 1.5 * f * f + f * f * f * f); }
double pos_quarter_hp(double f) { return 0.25 + f * f; }

}  // namespace

void closed_form_neg_quarter(double v, double* f, double* h) {
    if (!(std::abs(v) < std::numbers::pi)) {
        throw std::domain_error("closed form requires |v| < pi (tangent pole)");
    }
    const double t = std::tan(v / 2.0);
    if (f) *f = -0.5 * t;
    if (h) *h = -0.5 * (v - t);
}

void closed_form_neg_quarter_deriv(double v, double* fp, double* hp) {
    if (!(std::abs(v) < std::numbers::pi)) {
        throw std::domain_error("closed form requires |v| < pi (tangent pole)");
    }
    const double t = std::tan(v / 2.0);
    if (fp) *fp = -0.25 * (1.0 + t * t);
    if (hp) *hp = 0.25 * (t * t - 1.0);
}

RadialProfile closed_form_profile(double v_max, double dv) {
    const int steps = grid_steps(v_max, dv);
    RadialProfile p;
    p.v_grid.reserve(static_cast<size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        const double v = k * dv;
        double f = 0.0, h = 0.0, fp = 0.0, hp = 0.0;
        closed_form_neg_quarter(v, &f, &h);
        closed_form_neg_quarter_deriv(v, &fp, &hp);
        p.v_grid.push_back(v);
        p.f.push_back(f);
        p.h.push_back(h);
        p.fp.push_back(fp);
        p.hp.push_back(hp);
    }
    return p;
}

RadialProfile integrate_pos_quarter(double v_max, double dv) {
    const int steps = grid_steps(v_max, dv);
    RadialProfile p;
    double f = 0.0;
    double h = 0.0;
    p.v_grid.push_back(0.0);
    p.f.push_back(f);
    p.h.push_back(h);
    p.fp.push_back(pos_quarter_fp(f));
    p.hp.push_back(pos_quarter_hp(f));
    for (int k = 1; k <= steps; ++k) {
        const double k1f = pos_quarter_fp(f);
        const double k1h = pos_quarter_hp(f);
        const double k2f = pos_quarter_fp(f + 0.5 * dv * k1f);
        const double k2h = pos_quarter_hp(f + 0.5 * dv * k1f);
        const double k3f = pos_quarter_fp(f + 0.5 * dv * k2f);
        const double k3h = pos_quarter_hp(f + 0.5 * dv * k2f);
        const double k4f = pos_quarter_fp(f + dv * k3f);
        const double k4h = pos_quarter_hp(f + dv * k3f);
        f += (dv / 6.0) * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
        h += (dv / 6.0) * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
        p.v_grid.push_back(k * dv);
        p.f.push_back(f);
        p.h.push_back(h);
        p.fp.push_back(pos_quarter_fp(f));
        p.hp.push_back(pos_quarter_hp(f));
    }
    return p;
}

SurfacePatch radial_surface(const RadialProfile& p, int n) {
    if (p.v_grid.empty() || p.v_grid[0] != 0.0) {
        throw std::invalid_argument("radial_surface: profile must start at v = 0");
    }
    const size_t levels = p.v_grid.size();
    std::vector<double> fp = p.fp;
    std::vector<double> hp = p.hp;
    if (fp.size() != levels || hp.size() != levels) {
        const double dv = levels > 1 ? p.v_grid[1] - p.v_grid[0] : 1.0;
        fp = fd_derivative_uniform(p.f, dv, 1, 6);
        hp = fd_derivative_uniform(p.h, dv, 1, 6);
    }

    SurfacePatch patch;
    patch.n = n;
    patch.dv = levels > 1 ? p.v_grid[1] - p.v_grid[0] : 0.0;
    patch.v_levels = p.v_grid;
    patch.v_ok = p.v_grid.back();
    patch.psi.resize(levels);
    patch.psi_v.resize(levels);
    for (size_t k = 0; k < levels; ++k) {
        patch.psi[k].resize(static_cast<size_t>(n));
        patch.psi_v[k].resize(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double u = 2.0 * std::numbers::pi * j / n;
            const double cu = std::cos(u);
            const double su = std::sin(u);
            patch.psi[k][static_cast<size_t>(j)] = {cu * p.f[k], -su * p.f[k], p.h[k]};
            patch.psi_v[k][static_cast<size_t>(j)] = {cu * fp[k], -su * fp[k], hp[k]};
        }
    }
    return patch;
}

double radial_residual(const RadialProfile& p, const PrescribedCurvature& H) {
    if (!H.is_rotationally_symmetric()) {
        throw std::invalid_argument("radial_residual: H must be rotationally symmetric");
    }
    const size_t levels = p.v_grid.size();
    if (levels < 8) {
        throw std::invalid_argument("radial_residual: profile too short for 6th-order stencils");
    }
    const double dv = p.v_grid[1] - p.v_grid[0];
    // direct substitution: derivatives by finite differences only, independent
    // of any stored analytic derivatives
    const std::vector<double> fp = fd_derivative_uniform(p.f, dv, 1, 6);
    const std::vector<double> hp = fd_derivative_uniform(p.h, dv, 1, 6);
    const std::vector<double> fpp = fd_derivative_uniform(p.f, dv, 2, 6);
    const std::vector<double> hpp = fd_derivative_uniform(p.h, dv, 2, 6);

    double worst = 0.0;
    for (size_t k = 0; k < levels; ++k) {
        // evaluate H on the u = 0 meridian; rotational symmetry covers the rest
        const double hval = H(LVec3{p.f[k], 0.0, p.h[k]});
        const double r1 = fpp[k] - p.f[k] - 2.0 * hval * p.f[k] * hp[k];
        const double r2 = hpp[k] - 2.0 * hval * p.f[k] * fp[k];
        worst = std::max(worst, std::hypot(r1, r2));
    }
    return worst;
}

}  // namespace conemc

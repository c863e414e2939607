#pragma once

// Rotationally symmetric solutions psi(u,v) = (cos(u) f(v), -sin(u) f(v), h(v))
// for H = 1: the closed form for the constant height function A = -1/4, the
// first-order system for A = +1/4, and a substitution oracle that measures the
// residual of the full system on any radial profile.

#include <vector>

#include "conemc/curvature.hpp"
#include "conemc/solver.hpp"

namespace conemc {

struct RadialProfile {
    std::vector<double> v_grid;  // increasing, starting at 0
    std::vector<double> f;       // signed horizontal radius, f(0) = 0
    std::vector<double> h;       // height, h(0) = 0
    // exact first derivatives when the generator knows them; otherwise empty
    // and consumers fall back to finite differences
    std::vector<double> fp;
    std::vector<double> hp;
};

// f(v) = -tan(v/2)/2, h(v) = -(v - tan(v/2))/2; requires |v| < pi.
void closed_form_neg_quarter(double v, double* f, double* h);
// First derivatives of the closed form (f'(0) = h'(0) = -1/4).
void closed_form_neg_quarter_deriv(double v, double* fp, double* hp);
// Convenience: profile sampled on v_k = k*dv up to v_max.
RadialProfile closed_form_profile(double v_max, double dv);

// RK4 integration of f' = sqrt(1/16 + 3/2 f^2 + f^4), h' = 1/4 + f^2,
// f(0) = h(0) = 0, on v_k = k*dv up to v_max.
RadialProfile integrate_pos_quarter(double v_max, double dv);

// Patch built from the rotational ansatz; psi_v rows from (f', h').
SurfacePatch radial_surface(const RadialProfile& p, int n);

// sup_v |Delta psi - 2 H(psi) psi_u x psi_v| on the ansatz, with derivatives
// of f and h taken by 6th-order finite differences. H must be rotationally
// symmetric.
double radial_residual(const RadialProfile& p, const PrescribedCurvature& H);

}  // namespace conemc

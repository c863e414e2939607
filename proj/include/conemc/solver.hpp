#pragma once

// Cauchy marching for the conformal prescribed-mean-curvature system
//
//     psi_uu + psi_vv = 2 H(psi) psi_u x psi_v,
//     psi(u,0)   = p0,
//     psi_v(u,0) = b(u) = A(u) (cos u, -sin u, 1),
//
// rewritten as d/dv (psi, psi_v) = (psi_v, -psi_uu + 2 H(psi) psi_u x psi_v)
// and advanced with explicit RK4 in v, spectral u-derivatives, and a 16th
// order exponential filter applied after each step. The continuum problem is
// elliptic, so the march is stabilized by the filter and halted by a residual
// budget; the returned patch carries the validated strip height v_ok.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conemc/curvature.hpp"
#include "conemc/lorentz.hpp"
#include "conemc/spectral.hpp"

namespace conemc {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Height function A(u), nowhere vanishing, defining b(u) = A(u)(cos u, -sin u, 1).
struct NullCurveSpec {
    PeriodicField A;

    static NullCurveSpec constant(int n, double a);
    // A(u) = c0 + sum_k c_k cos(ku) + sum_k s_k sin(ku); cos starts at c0, sin at s1.
    static NullCurveSpec cosine_series(int n, const std::vector<double>& cos_coeffs,
                                       const std::vector<double>& sin_coeffs);

    // +1 for the upper cone (A > 0), -1 for the lower (A < 0).
    int cone_sign() const;
    std::vector<LVec3> curve_samples() const;  // b(u_j)
    // Throws SolverError if A vanishes or changes sign on the grid.
    void validate() const;
};

struct SolverConfig {
    int n = 64;
    double dv = 1e-3;
    double v_max = 0.8;
    double filter_strength = 36.0;
    double residual_budget = 1e-6;
    LVec3 p0{0.0, 0.0, 0.0};

    void validate() const;
};

struct CauchyState {
    double v = 0.0;
    std::vector<LVec3> psi;
    std::vector<LVec3> psi_v;
    bool degraded = false;
};

struct SurfacePatch {
    int n = 0;
    double dv = 0.0;
    LVec3 p0{0.0, 0.0, 0.0};
    std::vector<double> v_levels;              // k * dv, starting at 0
    std::vector<std::vector<LVec3>> psi;       // [level][j]
    std::vector<std::vector<LVec3>> psi_v;     // [level][j]
    double v_ok = 0.0;
    bool degraded = false;
    std::string degrade_reason;
    std::vector<std::pair<double, double>> residual_history;  // (v, residual)
    // true when psi_v was re-derived from psi by finite differences (loaded surfaces)
    bool psi_v_derived = false;

    int levels() const { return static_cast<int>(v_levels.size()); }
    // index of the level at height v (nearest); throws if no level is within dv/2
    int level_at(double v) const;
};

// State at v = 0: psi = p0, psi_v = b(u_j); every psi_v sample is null.
CauchyState build_initial_data(const NullCurveSpec& spec, const LVec3& p0, int n);

// One RK4 step of size cfg.dv followed by the spectral filter on both rows.
// Throws SolverError when H is nonpositive or non-finite along the way.
CauchyState step(const CauchyState& s, const PrescribedCurvature& H, const SolverConfig& cfg);

// sup_j |<psi_w, psi_w>| with psi_w = (psi_u - i psi_v)/2.
double conformality_residual(const CauchyState& s);

// March until v_max, the residual budget, or loss of the spacelike condition.
// Throws SolverError when not even one step validates (v_ok = 0).
SurfacePatch march(const NullCurveSpec& spec, const PrescribedCurvature& H,
                   const SolverConfig& cfg);

// Componentwise spectral u-derivative of a row of points.
std::vector<LVec3> row_derivative(const std::vector<LVec3>& row, int order);

}  // namespace conemc

#pragma once

// Reconstruction of the Euclidean graph z = z(x,y) on the punctured disk from
// a conformal patch: first and second derivatives of z through per-node 2x2
// Jacobian inversion of the (u,v) -> (x,y) map, global injectivity testing by
// row nesting, and residual checks for the quasilinear graph equation
//
//   (1-q^2) r + 2pq s + (1-p^2) t = 2 H(x,y,z) (1-p^2-q^2)^{3/2},
//
// the equivalent Beltrami system, Hessian nonvanishing, and cone asymptotics.

#include <cstdint>
#include <vector>

#include "conemc/curvature.hpp"
#include "conemc/solver.hpp"

namespace conemc {

struct GraphNode {
    double x = 0.0, y = 0.0, z = 0.0;
    double p = 0.0, q = 0.0;        // z_x, z_y
    double r = 0.0, s = 0.0, t = 0.0;  // z_xx, z_xy, z_yy
    double sigma = 0.0;             // 1 - p^2 - q^2
    double jacobian = 0.0;          // x_u y_v - x_v y_u
};

struct GraphGrid {
    int n = 0;
    double dv = 0.0;
    LVec3 p0{0.0, 0.0, 0.0};
    std::vector<double> v_levels;              // patch levels starting at row 1
    std::vector<std::vector<GraphNode>> rows;  // [level][j]

    int levels() const { return static_cast<int>(v_levels.size()); }
    int level_at(double v) const;
};

struct HessianReport {
    double min_abs = 0.0;      // min |rt - s^2| over samples
    bool sign_constant = false;
    int sign = 0;              // sign of rt - s^2 when constant
    bool vanishes = false;     // some sample with |rt - s^2| below floor
};

// Throws SolverError on a nonpositive Jacobian or when adjacent v-rows
// overlap / lose their nesting (covering with more than one sheet).
GraphGrid reconstruct(const SurfacePatch& patch);

// sup over samples with sigma >= sigma_mask of the graph-equation residual.
// Throws if ellipticity p^2 + q^2 < 1 fails at an unmasked sample.
double maineq_residual(const GraphGrid& gg, const PrescribedCurvature& H,
                       double sigma_mask = 1e-8);

// sup over nodes with sigma >= sigma_mask of
// |(x_v, y_v) - (b x_u - a y_u, c x_u - b y_u)/sqrt(sigma)|,
// a = 1-q^2, b = pq, c = 1-p^2.
double beltrami_check(const SurfacePatch& patch, const GraphGrid& gg,
                      double sigma_mask = 1e-8);

HessianReport hessian_sign(const GraphGrid& gg);

// Per-row max |(z-z0)^2/((x-x0)^2+(y-y0)^2) - 1| relative to the base point.
std::vector<double> cone_ratio(const GraphGrid& gg);

// Winding number of the gradient-image curve (p,q)(., v) for one row.
int gradient_winding(const GraphGrid& gg, int level);

}  // namespace conemc

#pragma once

// Gauss-map analysis of a surface patch: the map g = (x_w - i y_w)/z_w into
// the unit disk, its PDE and representation-formula residuals, the Gaussian
// curvature field, the limit null curve at v = 0, canonical phase
// normalization of its trace, and the classification round trip.
//
// Derivatives in u are spectral; derivatives in v use 4th-order stencils on
// the uniform v-grid (one-sided at the strip edges).

#include <complex>
#include <cstdint>
#include <vector>

#include "conemc/curvature.hpp"
#include "conemc/solver.hpp"
#include "conemc/spectral.hpp"

namespace conemc {

struct GaussField {
    int n = 0;
    double dv = 0.0;
    std::vector<double> v_levels;                // aligned with the source patch
    std::vector<std::vector<cplx>> g;            // row 0 is the boundary trace
    std::vector<std::vector<std::uint8_t>> masked;  // |z_w| below threshold

    bool any_masked() const;
};

struct CurvatureField {
    std::vector<double> v_levels;
    std::vector<std::vector<double>> K;
    std::vector<std::vector<std::uint8_t>> blowup;  // |g_wbar| below threshold; K unreported

    // max K over a row's unflagged nodes; throws if the whole row is flagged
    double row_max(int level) const;
};

struct LimitNullCurve {
    std::vector<LVec3> b;  // samples at u_j
    PeriodicField A;       // third component b3(u)
    int cone_sign = 0;     // +1 upper cone, -1 lower
    bool canonical = false;
};

// Interior values by pointwise evaluation from psi_u (spectral) and the
// stored psi_v rows; boundary row from b(u). Nodes with |z_w| < 1e-10 are masked.
GaussField gauss_map(const SurfacePatch& patch);

// Winding number of the boundary trace around the origin (+1 expected).
int boundary_trace_degree(const GaussField& g);

// Largest |g| over interior (v > 0) unmasked nodes.
double interior_gauss_modulus_max(const GaussField& g);

// sup | H (g_ww_bar + 2 g_bar/(1-|g|^2) g_w g_wbar) - H_w g_wbar | over
// interior unmasked nodes; the harmonic-map residual when H is constant.
double gauss_pde_residual(const GaussField& g, const PrescribedCurvature& H,
                          const SurfacePatch& patch);

// sup over interior unmasked nodes of |(x_w, y_w, z_w) - rhs| for the
// representation x_w = conj(g_wbar)(1+g^2)/(H(1-|g|^2)^2),
// y_w = -i conj(g_wbar)(1-g^2)/(H(1-|g|^2)^2), z_w = 2 conj(g_wbar) g /(H(1-|g|^2)^2).
double weierstrass_check(const SurfacePatch& patch, const GaussField& g,
                         const PrescribedCurvature& H);

// K = H^2 (|g_w|^2 / |g_wbar|^2 - 1); nodes with |g_wbar| < 1e-10 are
// reported as blow-up markers (row 0 always is).
CurvatureField gaussian_curvature(const GaussField& g, const PrescribedCurvature& H,
                                  const SurfacePatch& patch);

// Validates b != 0, constant cone sign, and <b',b'> > 0; A sampled from b3.
LimitNullCurve make_limit_null_curve(const std::vector<LVec3>& b);

// Row v = 0 of the patch, canonicalized via canonical_phase.
LimitNullCurve extract_null_curve(const SurfacePatch& patch);

// Normalizes the boundary trace to exp(iu): unwraps the phase of
// (b1 - i b2)/b3, requires strict monotonicity and total increase 2*pi, and
// resamples b through the inverse phase map. Throws SolverError otherwise.
LimitNullCurve canonical_phase(const LimitNullCurve& curve);

// min over nodes of <b'(u), b'(u)> (spacelike regularity margin).
double spacelike_regularity_min(const LimitNullCurve& curve);

// march -> extract_null_curve -> sup |A_extracted - A|. A must be nowhere
// vanishing and spectrally resolved (top-quarter mode energy below 1e-10).
double round_trip(const PeriodicField& A, const PrescribedCurvature& H,
                  const SolverConfig& cfg);

// sup_u | 4 |g_w z_w|^2 (u,0) - <b'(u), b'(u)> |, one-sided stencils at v = 0.
double gz_identity_check(const SurfacePatch& patch, const GaussField& g);

// sup over the grid of |I_theta(psi(u,v)) - psi(u+theta, v)| for the
// grid-aligned rotation theta = 2*pi*m/n about the vertical axis.
double equivariance_error(const SurfacePatch& patch, int m);

}  // namespace conemc

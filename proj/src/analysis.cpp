#include "conemc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "conemc/fd.hpp"

namespace conemc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZwMask = 1e-10;
constexpr double kGwbarBlowup = 1e-10;

using Grid = std::vector<std::vector<cplx>>;

std::vector<cplx> complex_row_derivative(const std::vector<cplx>& row, int order) {
    std::vector<cplx> m = row;
    fft_forward(m);
    apply_derivative_modes(m, order);
    fft_inverse(m);
    const double inv = 1.0 / static_cast<double>(m.size());
    for (auto& c : m) c *= inv;
    return m;
}

Grid grid_du(const Grid& g, int order) {
    Grid out(g.size());
    for (size_t k = 0; k < g.size(); ++k) out[k] = complex_row_derivative(g[k], order);
    return out;
}

Grid grid_dv(const Grid& g, double dv, int m_order) {
    const size_t levels = g.size();
    const size_t n = g.empty() ? 0 : g[0].size();
    Grid out(levels, std::vector<cplx>(n));
    std::vector<double> re(levels), im(levels);
    for (size_t j = 0; j < n; ++j) {
        for (size_t k = 0; k < levels; ++k) {
            re[k] = g[k][j].real();
            im[k] = g[k][j].imag();
        }
        const std::vector<double> dre = fd_derivative_uniform(re, dv, m_order, 4);
        const std::vector<double> dim = fd_derivative_uniform(im, dv, m_order, 4);
        for (size_t k = 0; k < levels; ++k) out[k][j] = {dre[k], dim[k]};
    }
    return out;
}

struct WDerivs {
    Grid w;     // (d_u - i d_v)/2
    Grid wbar;  // (d_u + i d_v)/2
};

WDerivs grid_w_derivatives(const Grid& g, double dv) {
    const Grid du = grid_du(g, 1);
    const Grid dvg = grid_dv(g, dv, 1);
    WDerivs out;
    out.w.resize(g.size());
    out.wbar.resize(g.size());
    const cplx i_unit(0.0, 1.0);
    for (size_t k = 0; k < g.size(); ++k) {
        out.w[k].resize(g[k].size());
        out.wbar[k].resize(g[k].size());
        for (size_t j = 0; j < g[k].size(); ++j) {
            out.w[k][j] = 0.5 * (du[k][j] - i_unit * dvg[k][j]);
            out.wbar[k][j] = 0.5 * (du[k][j] + i_unit * dvg[k][j]);
        }
    }
    return out;
}

void check_patch(const SurfacePatch& patch) {
    if (patch.levels() < 5) {
        throw SolverError("analysis: patch needs at least 5 v-levels for stencils");
    }
}

double principal_angle(double a) {
    while (a <= -std::numbers::pi) a += kTwoPi;
    while (a > std::numbers::pi) a -= kTwoPi;
    return a;
}

// unwrapped phase of a closed complex trace by nearest-branch continuation;
// phases[n] carries the total increase
std::vector<double> unwrap_phase(const std::vector<cplx>& trace) {
    const size_t n = trace.size();
    std::vector<double> phases(n + 1);
    phases[0] = std::arg(trace[0]);
    for (size_t j = 1; j <= n; ++j) {
        const cplx prev = trace[j - 1];
        const cplx cur = trace[j % n];
        phases[j] = phases[j - 1] + principal_angle(std::arg(cur) - std::arg(prev));
    }
    return phases;
}

}  // namespace

bool GaussField::any_masked() const {
    for (const auto& row : masked) {
        for (auto m : row) {
            if (m) return true;
        }
    }
    return false;
}

double CurvatureField::row_max(int level) const {
    const auto& row = K[static_cast<size_t>(level)];
    const auto& flag = blowup[static_cast<size_t>(level)];
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (size_t j = 0; j < row.size(); ++j) {
        if (!flag[j]) {
            best = std::max(best, row[j]);
            any = true;
        }
    }
    if (!any) throw SolverError("curvature: entire row is flagged as blow-up");
    return best;
}

GaussField gauss_map(const SurfacePatch& patch) {
    check_patch(patch);
    GaussField out;
    out.n = patch.n;
    out.dv = patch.dv;
    out.v_levels = patch.v_levels;
    out.g.resize(patch.psi.size());
    out.masked.resize(patch.psi.size());

    const cplx i_unit(0.0, 1.0);
    for (size_t k = 0; k < patch.psi.size(); ++k) {
        const size_t n = patch.psi[k].size();
        out.g[k].resize(n);
        out.masked[k].assign(n, 0);
        if (k == 0) {
            // boundary trace from the limit null curve
            for (size_t j = 0; j < n; ++j) {
                const LVec3& b = patch.psi_v[0][j];
                if (std::abs(b.z) < kZwMask) {
                    out.masked[0][j] = 1;
                    out.g[0][j] = 0.0;
                } else {
                    out.g[0][j] = cplx(b.x, -b.y) / b.z;
                }
            }
            continue;
        }
        const std::vector<LVec3> psi_u = row_derivative(patch.psi[k], 1);
        for (size_t j = 0; j < n; ++j) {
            const LVec3& pu = psi_u[j];
            const LVec3& pv = patch.psi_v[k][j];
            const cplx xw = 0.5 * cplx(pu.x, -pv.x);
            const cplx yw = 0.5 * cplx(pu.y, -pv.y);
            const cplx zw = 0.5 * cplx(pu.z, -pv.z);
            if (std::abs(zw) < kZwMask) {
                out.masked[k][j] = 1;
                out.g[k][j] = 0.0;
            } else {
                out.g[k][j] = (xw - i_unit * yw) / zw;
            }
        }
    }
    return out;
}

int boundary_trace_degree(const GaussField& g) {
    const std::vector<double> phases = unwrap_phase(g.g[0]);
    return static_cast<int>(std::lround((phases.back() - phases.front()) / kTwoPi));
}

double interior_gauss_modulus_max(const GaussField& g) {
    double worst = 0.0;
    for (size_t k = 1; k < g.g.size(); ++k) {
        for (size_t j = 0; j < g.g[k].size(); ++j) {
            if (!g.masked[k][j]) worst = std::max(worst, std::abs(g.g[k][j]));
        }
    }
    return worst;
}

double gauss_pde_residual(const GaussField& g, const PrescribedCurvature& H,
                          const SurfacePatch& patch) {
    check_patch(patch);
    const Grid guu = grid_du(g.g, 2);
    const Grid gvv = grid_dv(g.g, g.dv, 2);
    const WDerivs d = grid_w_derivatives(g.g, g.dv);

    const bool const_h = H.kind() == PrescribedCurvature::Kind::constant;
    Grid hw;
    std::vector<std::vector<double>> hval(g.g.size());
    {
        Grid hgrid(g.g.size());
        for (size_t k = 0; k < g.g.size(); ++k) {
            hgrid[k].resize(g.g[k].size());
            hval[k].resize(g.g[k].size());
            for (size_t j = 0; j < g.g[k].size(); ++j) {
                const double h = H(patch.psi[k][j]);
                hgrid[k][j] = h;
                hval[k][j] = h;
            }
        }
        if (!const_h) hw = grid_w_derivatives(hgrid, g.dv).w;
    }

    double worst = 0.0;
    for (size_t k = 1; k < g.g.size(); ++k) {
        for (size_t j = 0; j < g.g[k].size(); ++j) {
            if (g.masked[k][j]) continue;
            const cplx gv = g.g[k][j];
            const double denom = 1.0 - std::norm(gv);
            if (denom <= 0.0) continue;
            const cplx gwwbar = 0.25 * (guu[k][j] + gvv[k][j]);
            const cplx lhs =
                hval[k][j] * (gwwbar + 2.0 * std::conj(gv) / denom * d.w[k][j] * d.wbar[k][j]);
            const cplx rhs = const_h ? cplx(0.0, 0.0) : hw[k][j] * d.wbar[k][j];
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

double weierstrass_check(const SurfacePatch& patch, const GaussField& g,
                         const PrescribedCurvature& H) {
    check_patch(patch);
    const WDerivs d = grid_w_derivatives(g.g, g.dv);
    const cplx i_unit(0.0, 1.0);

    double worst = 0.0;
    for (size_t k = 1; k < g.g.size(); ++k) {
        const std::vector<LVec3> psi_u = row_derivative(patch.psi[k], 1);
        for (size_t j = 0; j < g.g[k].size(); ++j) {
            if (g.masked[k][j]) continue;
            const cplx gv = g.g[k][j];
            const double denom = 1.0 - std::norm(gv);
            if (denom <= 0.0) continue;
            const double h = H(patch.psi[k][j]);
            const cplx gbar_w = std::conj(d.wbar[k][j]);
            const double scale = h * denom * denom;

            const cplx xw_rep = gbar_w * (1.0 + gv * gv) / scale;
            const cplx yw_rep = -i_unit * gbar_w * (1.0 - gv * gv) / scale;
            const cplx zw_rep = 2.0 * gbar_w * gv / scale;

            const LVec3& pu = psi_u[j];
            const LVec3& pv = patch.psi_v[k][j];
            const cplx xw = 0.5 * cplx(pu.x, -pv.x);
            const cplx yw = 0.5 * cplx(pu.y, -pv.y);
            const cplx zw = 0.5 * cplx(pu.z, -pv.z);

            const double err = std::sqrt(std::norm(xw - xw_rep) + std::norm(yw - yw_rep) +
                                         std::norm(zw - zw_rep));
            worst = std::max(worst, err);
        }
    }
    return worst;
}

CurvatureField gaussian_curvature(const GaussField& g, const PrescribedCurvature& H,
                                  const SurfacePatch& patch) {
    check_patch(patch);
    const WDerivs d = grid_w_derivatives(g.g, g.dv);
    CurvatureField out;
    out.v_levels = g.v_levels;
    out.K.resize(g.g.size());
    out.blowup.resize(g.g.size());
    for (size_t k = 0; k < g.g.size(); ++k) {
        const size_t n = g.g[k].size();
        out.K[k].assign(n, 0.0);
        out.blowup[k].assign(n, 0);
        for (size_t j = 0; j < n; ++j) {
            const double gwbar = std::abs(d.wbar[k][j]);
            if (k == 0 || g.masked[k][j] || gwbar < kGwbarBlowup) {
                out.blowup[k][j] = 1;
                continue;
            }
            const double h = H(patch.psi[k][j]);
            const double ratio = std::norm(d.w[k][j]) / (gwbar * gwbar);
            out.K[k][j] = h * h * (ratio - 1.0);
        }
    }
    return out;
}

LimitNullCurve make_limit_null_curve(const std::vector<LVec3>& b) {
    const int n = static_cast<int>(b.size());
    LimitNullCurve curve;
    curve.b = b;
    std::vector<double> b3(b.size());
    for (size_t j = 0; j < b.size(); ++j) b3[j] = b[j].z;
    curve.A = PeriodicField(b3);
    const int sign0 = b[0].z > 0.0 ? 1 : -1;
    for (int j = 0; j < n; ++j) {
        const LVec3& p = b[static_cast<size_t>(j)];
        if (euclidean_norm(p) < 1e-8) {
            throw SolverError("limit null curve: b(u) vanishes at a node");
        }
        if ((p.z > 0.0 ? 1 : -1) != sign0 || p.z == 0.0) {
            throw SolverError("limit null curve: cone sign is not constant");
        }
    }
    curve.cone_sign = sign0;
    if (spacelike_regularity_min(curve) <= 0.0) {
        throw SolverError("limit null curve: <b',b'> <= 0 at a node (not spacelike regular)");
    }
    return curve;
}

double spacelike_regularity_min(const LimitNullCurve& curve) {
    const std::vector<LVec3> bp = row_derivative(curve.b, 1);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& d : bp) worst = std::min(worst, minkowski_dot(d, d));
    return worst;
}

LimitNullCurve canonical_phase(const LimitNullCurve& curve) {
    const int n = static_cast<int>(curve.b.size());
    std::vector<cplx> trace(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const LVec3& p = curve.b[static_cast<size_t>(j)];
        trace[static_cast<size_t>(j)] = cplx(p.x, -p.y) / p.z;
    }

    const std::vector<double> phases = unwrap_phase(trace);
    const double total = phases.back() - phases.front();
    const int degree = static_cast<int>(std::lround(total / kTwoPi));
    for (int j = 1; j <= n; ++j) {
        if (!(phases[static_cast<size_t>(j)] > phases[static_cast<size_t>(j - 1)])) {
            throw SolverError("canonical phase: boundary trace phase is not strictly increasing");
        }
    }
    if (degree != 1) {
        std::ostringstream msg;
        msg << "canonical phase: boundary trace degree is " << degree << ", expected 1";
        throw SolverError(msg.str());
    }

    // phi(u) = u + dev(u) with dev 2*pi-periodic
    std::vector<double> dev(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        dev[static_cast<size_t>(j)] = phases[static_cast<size_t>(j)] - kTwoPi * j / n;
    }
    const PeriodicField dev_field{dev};
    const PeriodicField dev_prime = differentiate(dev_field, 1);

    PeriodicField bx{[&] {
        std::vector<double> s(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] = curve.b[static_cast<size_t>(j)].x;
        return s;
    }()};
    PeriodicField by{[&] {
        std::vector<double> s(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] = curve.b[static_cast<size_t>(j)].y;
        return s;
    }()};
    PeriodicField bz{[&] {
        std::vector<double> s(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] = curve.b[static_cast<size_t>(j)].z;
        return s;
    }()};

    std::vector<LVec3> resampled(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double s = kTwoPi * k / n;
        // Newton on phi(u) = s; phi' = 1 + dev' > 0 by monotonicity
        double u = s - dev_field.eval(s).real();
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            const double fval = u + dev_field.eval(u).real() - s;
            const double fder = 1.0 + dev_prime.eval(u).real();
            const double du = fval / fder;
            u -= du;
            if (std::abs(du) < 1e-14) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw SolverError("canonical phase: phase inversion did not converge");
        }
        resampled[static_cast<size_t>(k)] = {bx.eval(u).real(), by.eval(u).real(),
                                             bz.eval(u).real()};
    }

    LimitNullCurve out = make_limit_null_curve(resampled);
    out.canonical = true;
    return out;
}

LimitNullCurve extract_null_curve(const SurfacePatch& patch) {
    if (patch.psi_v.empty()) throw SolverError("extract: patch has no psi_v rows");
    const LimitNullCurve raw = make_limit_null_curve(patch.psi_v[0]);
    return canonical_phase(raw);
}

double round_trip(const PeriodicField& A, const PrescribedCurvature& H,
                  const SolverConfig& cfg) {
    const int n = A.size();
    double top_energy = 0.0;
    for (int k = 3 * n / 8; k <= n / 2; ++k) top_energy += mode_energy(A, k);
    if (top_energy >= 1e-10) {
        throw SolverError("round trip: A is not spectrally resolved (top-quarter mode energy)");
    }
    NullCurveSpec spec{A};
    const SurfacePatch patch = march(spec, H, cfg);
    const LimitNullCurve curve = extract_null_curve(patch);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        worst = std::max(worst, std::abs(curve.A.real_at(j) - A.real_at(j)));
    }
    return worst;
}

double gz_identity_check(const SurfacePatch& patch, const GaussField& g) {
    check_patch(patch);
    const size_t n = static_cast<size_t>(patch.n);

    // g_v(u,0) by one-sided 4th-order stencil down the first rows
    std::vector<cplx> gv0(n);
    const int width = 5;
    std::vector<double> col_re(width), col_im(width);
    for (size_t j = 0; j < n; ++j) {
        for (int k = 0; k < width; ++k) {
            col_re[static_cast<size_t>(k)] = g.g[static_cast<size_t>(k)][j].real();
            col_im[static_cast<size_t>(k)] = g.g[static_cast<size_t>(k)][j].imag();
        }
        gv0[j] = {fd_derivative_at(col_re, g.dv, 1, 4, 0), fd_derivative_at(col_im, g.dv, 1, 4, 0)};
    }
    const std::vector<cplx> gu0 = complex_row_derivative(g.g[0], 1);
    const std::vector<LVec3> psi_u0 = row_derivative(patch.psi[0], 1);
    const std::vector<LVec3> bprime = row_derivative(patch.psi_v[0], 1);

    const cplx i_unit(0.0, 1.0);
    double worst = 0.0;
    for (size_t j = 0; j < n; ++j) {
        const cplx gw = 0.5 * (gu0[j] - i_unit * gv0[j]);
        const cplx zw = 0.5 * cplx(psi_u0[j].z, -patch.psi_v[0][j].z);
        const double lhs = 4.0 * std::norm(gw * zw);
        const double rhs = minkowski_dot(bprime[j], bprime[j]);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double equivariance_error(const SurfacePatch& patch, int m) {
    const int n = patch.n;
    const double theta = kTwoPi * m / n;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    double worst = 0.0;
    for (size_t k = 0; k < patch.psi.size(); ++k) {
        for (int j = 0; j < n; ++j) {
            const LVec3& p = patch.psi[k][static_cast<size_t>(j)];
            const LVec3 rotated{p.x * c + p.y * s, -p.x * s + p.y * c, p.z};
            const LVec3& shifted = patch.psi[k][static_cast<size_t>((j + m) % n)];
            worst = std::max(worst, euclidean_norm(rotated - shifted));
        }
    }
    return worst;
}

}  // namespace conemc

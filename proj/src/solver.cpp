#include "conemc/solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace conemc {

namespace {


struct RowModes {
    std::vector<cplx> x, y, z;
};

RowModes forward_rows(const std::vector<LVec3>& row) {
    const size_t n = row.size();
    RowModes m{std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n)};
    for (size_t j = 0; j < n; ++j) {
        m.x[j] = row[j].x;
        m.y[j] = row[j].y;
        m.z[j] = row[j].z;
    }
    fft_forward(m.x);
    fft_forward(m.y);
    fft_forward(m.z);
    return m;
}

std::vector<LVec3> inverse_rows(RowModes m) {
    const size_t n = m.x.size();
    fft_inverse(m.x);
    fft_inverse(m.y);
    fft_inverse(m.z);
    std::vector<LVec3> row(n);
    const double inv = 1.0 / static_cast<double>(n);
    for (size_t j = 0; j < n; ++j) {
        row[j] = {m.x[j].real() * inv, m.y[j].real() * inv, m.z[j].real() * inv};
    }
    return row;
}

std::vector<LVec3> filter_row(const std::vector<LVec3>& row, double strength) {
    if (strength == 0.0) return row;
    RowModes m = forward_rows(row);
    apply_filter_modes(m.x, strength);
    apply_filter_modes(m.y, strength);
    apply_filter_modes(m.z, strength);
    return inverse_rows(std::move(m));
}

// d/dv (psi, psi_v) = (psi_v, -psi_uu + 2 H(psi) psi_u x psi_v)
void rhs(const std::vector<LVec3>& psi, const std::vector<LVec3>& psi_v,
         const PrescribedCurvature& H, double v, std::vector<LVec3>& dpsi,
         std::vector<LVec3>& dpsi_v) {
    const size_t n = psi.size();
    const std::vector<LVec3> psi_u = row_derivative(psi, 1);
    const std::vector<LVec3> psi_uu = row_derivative(psi, 2);
    dpsi = psi_v;
    dpsi_v.resize(n);
    for (size_t j = 0; j < n; ++j) {
        const double h = H(psi[j]);
        if (!std::isfinite(h) || h <= 0.0) {
            std::ostringstream msg;
            msg << "prescribed curvature must be positive: H = " << h << " at ("
                << psi[j].x << ", " << psi[j].y << ", " << psi[j].z << "), v = " << v
                << ", node " << j;
            throw SolverError(msg.str());
        }
        dpsi_v[j] = -psi_uu[j] + 2.0 * h * lorentz_cross(psi_u[j], psi_v[j]);
    }
}

void axpy(std::vector<LVec3>& out, const std::vector<LVec3>& base,
          const std::vector<LVec3>& d, double s) {
    out.resize(base.size());
    for (size_t j = 0; j < base.size(); ++j) out[j] = base[j] + s * d[j];
}

double conformality_residual_with(const std::vector<LVec3>& psi_u,
                                  const std::vector<LVec3>& psi_v) {
    double worst = 0.0;
    for (size_t j = 0; j < psi_u.size(); ++j) {
        const double re =
            (minkowski_dot(psi_u[j], psi_u[j]) - minkowski_dot(psi_v[j], psi_v[j])) / 4.0;
        const double im = -0.5 * minkowski_dot(psi_u[j], psi_v[j]);
        worst = std::max(worst, std::hypot(re, im));
    }
    return worst;
}

}  // namespace

std::vector<LVec3> row_derivative(const std::vector<LVec3>& row, int order) {
    RowModes m = forward_rows(row);
    apply_derivative_modes(m.x, order);
    apply_derivative_modes(m.y, order);
    apply_derivative_modes(m.z, order);
    return inverse_rows(std::move(m));
}

NullCurveSpec NullCurveSpec::constant(int n, double a) {
    return NullCurveSpec{PeriodicField::constant(n, a)};
}

NullCurveSpec NullCurveSpec::cosine_series(int n, const std::vector<double>& cos_coeffs,
                                           const std::vector<double>& sin_coeffs) {
    return NullCurveSpec{PeriodicField::sample(n, [&](double u) {
        double a = cos_coeffs.empty() ? 0.0 : cos_coeffs[0];
        for (size_t k = 1; k < cos_coeffs.size(); ++k) {
            a += cos_coeffs[k] * std::cos(static_cast<double>(k) * u);
        }
        for (size_t k = 0; k < sin_coeffs.size(); ++k) {
            a += sin_coeffs[k] * std::sin(static_cast<double>(k + 1) * u);
        }
        return a;
    })};
}

int NullCurveSpec::cone_sign() const { return A.real_at(0) > 0.0 ? 1 : -1; }

std::vector<LVec3> NullCurveSpec::curve_samples() const {
    const int n = A.size();
    std::vector<LVec3> b(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double u = A.node(j);
        const double a = A.real_at(j);
        b[static_cast<size_t>(j)] = {a * std::cos(u), -a * std::sin(u), a};
    }
    return b;
}

void NullCurveSpec::validate() const {
    const int n = A.size();
    const int sign0 = A.real_at(0) > 0.0 ? 1 : -1;
    for (int j = 0; j < n; ++j) {
        const double a = A.real_at(j);
        if (a == 0.0 || (a > 0.0 ? 1 : -1) != sign0) {
            std::ostringstream msg;
            msg << "height function A must be nowhere vanishing with constant sign; "
                << "A(" << A.node(j) << ") = " << a;
            throw SolverError(msg.str());
        }
    }
}

void SolverConfig::validate() const {
    if (!is_power_of_two(n) || n < 8) throw SolverError("config: n must be a power of two >= 8");
    if (!(dv > 0.0)) throw SolverError("config: dv must be > 0");
    if (!(v_max > 0.0)) throw SolverError("config: v_max must be > 0");
    if (!(residual_budget > 0.0)) throw SolverError("config: residual_budget must be > 0");
    if (filter_strength < 0.0) throw SolverError("config: filter_strength must be >= 0");
}

CauchyState build_initial_data(const NullCurveSpec& spec, const LVec3& p0, int n) {
    if (spec.A.size() != n) {
        throw SolverError("initial data: A grid size does not match n");
    }
    spec.validate();
    CauchyState s;
    s.v = 0.0;
    s.psi.assign(static_cast<size_t>(n), p0);
    s.psi_v = spec.curve_samples();
    return s;
}

CauchyState step(const CauchyState& s, const PrescribedCurvature& H, const SolverConfig& cfg) {
    if (s.degraded) throw SolverError("step: state is degraded");
    const double dv = cfg.dv;

    std::vector<LVec3> k1p, k1v, k2p, k2v, k3p, k3v, k4p, k4v, tp, tv;
    rhs(s.psi, s.psi_v, H, s.v, k1p, k1v);
    axpy(tp, s.psi, k1p, dv / 2.0);
    axpy(tv, s.psi_v, k1v, dv / 2.0);
    rhs(tp, tv, H, s.v + dv / 2.0, k2p, k2v);
    axpy(tp, s.psi, k2p, dv / 2.0);
    axpy(tv, s.psi_v, k2v, dv / 2.0);
    rhs(tp, tv, H, s.v + dv / 2.0, k3p, k3v);
    axpy(tp, s.psi, k3p, dv);
    axpy(tv, s.psi_v, k3v, dv);
    rhs(tp, tv, H, s.v + dv, k4p, k4v);

    CauchyState out;
    out.v = s.v + dv;
    out.psi.resize(s.psi.size());
    out.psi_v.resize(s.psi.size());
    for (size_t j = 0; j < s.psi.size(); ++j) {
        out.psi[j] = s.psi[j] + (dv / 6.0) * (k1p[j] + 2.0 * k2p[j] + 2.0 * k3p[j] + k4p[j]);
        out.psi_v[j] = s.psi_v[j] + (dv / 6.0) * (k1v[j] + 2.0 * k2v[j] + 2.0 * k3v[j] + k4v[j]);
    }
    out.psi = filter_row(out.psi, cfg.filter_strength);
    out.psi_v = filter_row(out.psi_v, cfg.filter_strength);
    return out;
}

double conformality_residual(const CauchyState& s) {
    return conformality_residual_with(row_derivative(s.psi, 1), s.psi_v);
}

int SurfacePatch::level_at(double v) const {
    if (dv <= 0.0 || v_levels.empty()) throw SolverError("patch: no levels");
    const int k = static_cast<int>(std::lround(v / dv));
    if (k < 0 || k >= levels() || std::abs(v_levels[static_cast<size_t>(k)] - v) > dv / 2.0) {
        throw SolverError("patch: no level at requested height");
    }
    return k;
}

SurfacePatch march(const NullCurveSpec& spec, const PrescribedCurvature& H,
                   const SolverConfig& cfg) {
    cfg.validate();
    CauchyState state = build_initial_data(spec, cfg.p0, cfg.n);

    SurfacePatch patch;
    patch.n = cfg.n;
    patch.dv = cfg.dv;
    patch.p0 = cfg.p0;
    patch.v_levels.push_back(0.0);
    patch.psi.push_back(state.psi);
    patch.psi_v.push_back(state.psi_v);
    patch.residual_history.emplace_back(0.0, conformality_residual(state));

    const int steps = static_cast<int>(std::floor(cfg.v_max / cfg.dv + 0.5));
    for (int k = 1; k <= steps; ++k) {
        state = step(state, H, cfg);
        state.v = k * cfg.dv;

        const std::vector<LVec3> psi_u = row_derivative(state.psi, 1);
        const double res = conformality_residual_with(psi_u, state.psi_v);

        bool ok = res <= cfg.residual_budget;
        std::string reason;
        if (!ok) {
            reason = "residual budget exceeded";
        } else {
            for (size_t j = 0; j < psi_u.size(); ++j) {
                const LVec3& p = state.psi[j];
                if (!(std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z))) {
                    ok = false;
                    reason = "non-finite state";
                    break;
                }
                if (!(minkowski_dot(psi_u[j], psi_u[j]) > 0.0)) {
                    ok = false;
                    reason = "spacelike condition failed";
                    break;
                }
            }
        }
        if (!ok) {
            patch.degraded = true;
            patch.degrade_reason = reason;
            break;
        }
        patch.v_levels.push_back(state.v);
        patch.psi.push_back(state.psi);
        patch.psi_v.push_back(state.psi_v);
        patch.residual_history.emplace_back(state.v, res);
        patch.v_ok = state.v;
    }

    if (patch.v_ok <= 0.0) {
        std::ostringstream msg;
        msg << "march: immediate degradation (" << patch.degrade_reason << ") with n = " << cfg.n
            << ", dv = " << cfg.dv << ", v_max = " << cfg.v_max
            << ", filter_strength = " << cfg.filter_strength
            << ", residual_budget = " << cfg.residual_budget;
        throw SolverError(msg.str());
    }
    return patch;
}

}  // namespace conemc

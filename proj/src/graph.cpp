#include "conemc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "conemc/fd.hpp"

namespace conemc {

namespace {

struct P2 {
    double x, y;
};

double orient(const P2& a, const P2& b, const P2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool on_segment(const P2& a, const P2& b, const P2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const P2& a, const P2& b, const P2& c, const P2& d) {
    const double o1 = orient(a, b, c);
    const double o2 = orient(a, b, d);
    const double o3 = orient(c, d, a);
    const double o4 = orient(c, d, b);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
        o4 != 0) {
        return true;
    }
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

bool point_in_polygon(const std::vector<P2>& poly, const P2& p) {
    bool inside = false;
    const size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((poly[i].y > p.y) != (poly[j].y > p.y)) {
            const double xint =
                poly[j].x + (poly[i].x - poly[j].x) * (p.y - poly[j].y) / (poly[i].y - poly[j].y);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

bool curve_is_simple(const std::vector<P2>& poly) {
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const P2& a = poly[i];
        const P2& b = poly[(i + 1) % n];
        for (size_t j = i + 1; j < n; ++j) {
            // skip segments sharing an endpoint (cyclic neighbors)
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            const P2& c = poly[j];
            const P2& d = poly[(j + 1) % n];
            if (segments_intersect(a, b, c, d)) return false;
        }
    }
    return true;
}

bool curves_disjoint(const std::vector<P2>& a, const std::vector<P2>& b) {
    const size_t n = a.size();
    const size_t m = b.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < m; ++j) {
            if (segments_intersect(a[i], a[(i + 1) % n], b[j], b[(j + 1) % m])) return false;
        }
    }
    return true;
}

}  // namespace

int GraphGrid::level_at(double v) const {
    for (int k = 0; k < levels(); ++k) {
        if (std::abs(v_levels[static_cast<size_t>(k)] - v) <= dv / 2.0) return k;
    }
    throw SolverError("graph: no level at requested height");
}

GraphGrid reconstruct(const SurfacePatch& patch) {
    if (patch.levels() < 6 || !(patch.v_ok > 0.0)) {
        throw SolverError("reconstruct: patch needs a validated strip (>= 6 levels)");
    }
    const int n = patch.n;
    const int grows = patch.levels() - 1;  // graph rows start at the first v > 0 level

    GraphGrid gg;
    gg.n = n;
    gg.dv = patch.dv;
    gg.p0 = patch.p0;
    gg.v_levels.resize(static_cast<size_t>(grows));
    gg.rows.resize(static_cast<size_t>(grows));

    // first pass: positions, first derivatives, Jacobian, gradient
    for (int k = 0; k < grows; ++k) {
        const int pk = k + 1;
        gg.v_levels[static_cast<size_t>(k)] = patch.v_levels[static_cast<size_t>(pk)];
        gg.rows[static_cast<size_t>(k)].resize(static_cast<size_t>(n));
        const std::vector<LVec3> du = row_derivative(patch.psi[static_cast<size_t>(pk)], 1);
        for (int j = 0; j < n; ++j) {
            const LVec3& pos = patch.psi[static_cast<size_t>(pk)][static_cast<size_t>(j)];
            const LVec3& dvr = patch.psi_v[static_cast<size_t>(pk)][static_cast<size_t>(j)];
            const LVec3& dur = du[static_cast<size_t>(j)];
            GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            node.x = pos.x;
            node.y = pos.y;
            node.z = pos.z;
            const double jac = dur.x * dvr.y - dvr.x * dur.y;
            if (!(jac > 0.0)) {
                std::ostringstream msg;
                msg << "reconstruct: nonpositive Jacobian " << jac << " at v = "
                    << gg.v_levels[static_cast<size_t>(k)] << ", node " << j;
                throw SolverError(msg.str());
            }
            node.jacobian = jac;
            node.p = (dur.z * dvr.y - dvr.z * dur.y) / jac;
            node.q = (dur.x * dvr.z - dvr.x * dur.z) / jac;
            node.sigma = 1.0 - node.p * node.p - node.q * node.q;
            if (!(node.sigma > 0.0)) {
                std::ostringstream msg;
                msg << "reconstruct: ellipticity p^2 + q^2 < 1 violated at v = "
                    << gg.v_levels[static_cast<size_t>(k)] << ", node " << j;
                throw SolverError(msg.str());
            }
        }
    }

    // second pass: chain rule for second derivatives; v-stencils on (p,q)
    std::vector<std::vector<double>> pu(static_cast<size_t>(grows)),
        qu(static_cast<size_t>(grows));
    for (int k = 0; k < grows; ++k) {
        std::vector<double> prow(static_cast<size_t>(n)), qrow(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            prow[static_cast<size_t>(j)] = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)].p;
            qrow[static_cast<size_t>(j)] = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)].q;
        }
        PeriodicField pf{prow}, qf{qrow};
        const PeriodicField dpu = differentiate(pf, 1);
        const PeriodicField dqu = differentiate(qf, 1);
        pu[static_cast<size_t>(k)] = dpu.real_samples();
        qu[static_cast<size_t>(k)] = dqu.real_samples();
    }
    std::vector<double> col(static_cast<size_t>(grows));
    std::vector<std::vector<double>> pv(static_cast<size_t>(grows),
                                        std::vector<double>(static_cast<size_t>(n)));
    std::vector<std::vector<double>> qv = pv;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < grows; ++k) {
            col[static_cast<size_t>(k)] = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)].p;
        }
        std::vector<double> d = fd_derivative_uniform(col, patch.dv, 1, 4);
        for (int k = 0; k < grows; ++k) pv[static_cast<size_t>(k)][static_cast<size_t>(j)] = d[static_cast<size_t>(k)];
        for (int k = 0; k < grows; ++k) {
            col[static_cast<size_t>(k)] = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)].q;
        }
        d = fd_derivative_uniform(col, patch.dv, 1, 4);
        for (int k = 0; k < grows; ++k) qv[static_cast<size_t>(k)][static_cast<size_t>(j)] = d[static_cast<size_t>(k)];
    }
    for (int k = 0; k < grows; ++k) {
        const int pk = k + 1;
        const std::vector<LVec3> du = row_derivative(patch.psi[static_cast<size_t>(pk)], 1);
        for (int j = 0; j < n; ++j) {
            GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            const LVec3& dur = du[static_cast<size_t>(j)];
            const LVec3& dvr = patch.psi_v[static_cast<size_t>(pk)][static_cast<size_t>(j)];
            const double jac = node.jacobian;
            const double puv = pu[static_cast<size_t>(k)][static_cast<size_t>(j)];
            const double pvv = pv[static_cast<size_t>(k)][static_cast<size_t>(j)];
            const double quv = qu[static_cast<size_t>(k)][static_cast<size_t>(j)];
            const double qvv = qv[static_cast<size_t>(k)][static_cast<size_t>(j)];
            node.r = (puv * dvr.y - pvv * dur.y) / jac;
            const double s_from_p = (dur.x * pvv - dvr.x * puv) / jac;
            const double s_from_q = (quv * dvr.y - qvv * dur.y) / jac;
            node.t = (dur.x * qvv - dvr.x * quv) / jac;
            node.s = 0.5 * (s_from_p + s_from_q);
        }
    }

    // injectivity over the annulus: rows are simple closed curves, adjacent
    // rows are disjoint, nesting is consistent, and the puncture sits inside
    // the innermost row
    std::vector<std::vector<P2>> loops(static_cast<size_t>(grows));
    for (int k = 0; k < grows; ++k) {
        loops[static_cast<size_t>(k)].resize(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            loops[static_cast<size_t>(k)][static_cast<size_t>(j)] = {node.x, node.y};
        }
    }
    for (int k = 0; k < grows; ++k) {
        if (!curve_is_simple(loops[static_cast<size_t>(k)])) {
            std::ostringstream msg;
            msg << "reconstruct: image row at v = " << gg.v_levels[static_cast<size_t>(k)]
                << " is not a simple closed curve (covering sheets > 1)";
            throw SolverError(msg.str());
        }
    }
    const P2 puncture{patch.p0.x, patch.p0.y};
    if (!point_in_polygon(loops[0], puncture)) {
        throw SolverError("reconstruct: puncture is not enclosed by the innermost image row");
    }
    for (int k = 0; k + 1 < grows; ++k) {
        const auto& inner = loops[static_cast<size_t>(k)];
        const auto& outer = loops[static_cast<size_t>(k + 1)];
        if (!curves_disjoint(inner, outer)) {
            std::ostringstream msg;
            msg << "reconstruct: image rows at v = " << gg.v_levels[static_cast<size_t>(k)]
                << " and v = " << gg.v_levels[static_cast<size_t>(k + 1)] << " overlap";
            throw SolverError(msg.str());
        }
        if (!point_in_polygon(outer, inner[0])) {
            std::ostringstream msg;
            msg << "reconstruct: image row nesting broken between v = "
                << gg.v_levels[static_cast<size_t>(k)] << " and v = "
                << gg.v_levels[static_cast<size_t>(k + 1)];
            throw SolverError(msg.str());
        }
    }
    return gg;
}

double maineq_residual(const GraphGrid& gg, const PrescribedCurvature& H, double sigma_mask) {
    double worst = 0.0;
    std::vector<std::string> violations;
    for (int k = 0; k < gg.levels(); ++k) {
        for (int j = 0; j < gg.n; ++j) {
            const GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            if (node.sigma < sigma_mask) continue;
            if (!(node.p * node.p + node.q * node.q < 1.0)) {
                std::ostringstream v;
                v << "(v=" << gg.v_levels[static_cast<size_t>(k)] << ",node=" << j << ")";
                violations.push_back(v.str());
                continue;
            }
            const double hval = H(LVec3{node.x, node.y, node.z});
            const double lhs = (1.0 - node.q * node.q) * node.r + 2.0 * node.p * node.q * node.s +
                               (1.0 - node.p * node.p) * node.t;
            const double rhs = 2.0 * hval * std::pow(node.sigma, 1.5);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "maineq: ellipticity violated at " << violations.size() << " samples:";
        for (size_t i = 0; i < std::min<size_t>(violations.size(), 8); ++i) {
            msg << " " << violations[i];
        }
        throw SolverError(msg.str());
    }
    return worst;
}

double beltrami_check(const SurfacePatch& patch, const GraphGrid& gg, double sigma_mask) {
    double worst = 0.0;
    for (int k = 0; k < gg.levels(); ++k) {
        const int pk = k + 1;
        const std::vector<LVec3> du = row_derivative(patch.psi[static_cast<size_t>(pk)], 1);
        for (int j = 0; j < gg.n; ++j) {
            const GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            if (node.sigma < sigma_mask) continue;
            const double a = 1.0 - node.q * node.q;
            const double b = node.p * node.q;
            const double c = 1.0 - node.p * node.p;
            const double root = std::sqrt(node.sigma);
            const LVec3& dur = du[static_cast<size_t>(j)];
            const LVec3& dvr = patch.psi_v[static_cast<size_t>(pk)][static_cast<size_t>(j)];
            const double ex = dvr.x - (b * dur.x - a * dur.y) / root;
            const double ey = dvr.y - (c * dur.x - b * dur.y) / root;
            worst = std::max(worst, std::hypot(ex, ey));
        }
    }
    return worst;
}

HessianReport hessian_sign(const GraphGrid& gg) {
    constexpr double kFloor = 1e-8;
    HessianReport rep;
    rep.min_abs = std::numeric_limits<double>::infinity();
    rep.sign_constant = true;
    for (int k = 0; k < gg.levels(); ++k) {
        for (int j = 0; j < gg.n; ++j) {
            const GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            const double det = node.r * node.t - node.s * node.s;
            rep.min_abs = std::min(rep.min_abs, std::abs(det));
            if (std::abs(det) < kFloor) {
                rep.vanishes = true;
                continue;
            }
            const int sgn = det > 0.0 ? 1 : -1;
            if (rep.sign == 0) {
                rep.sign = sgn;
            } else if (sgn != rep.sign) {
                rep.sign_constant = false;
            }
        }
    }
    if (rep.vanishes) rep.sign_constant = false;
    return rep;
}

std::vector<double> cone_ratio(const GraphGrid& gg) {
    std::vector<double> out(static_cast<size_t>(gg.levels()), 0.0);
    for (int k = 0; k < gg.levels(); ++k) {
        double worst = 0.0;
        for (int j = 0; j < gg.n; ++j) {
            const GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            const double dx = node.x - gg.p0.x;
            const double dy = node.y - gg.p0.y;
            const double dz = node.z - gg.p0.z;
            const double rr = dx * dx + dy * dy;
            worst = std::max(worst, std::abs(dz * dz / rr - 1.0));
        }
        out[static_cast<size_t>(k)] = worst;
    }
    return out;
}

int gradient_winding(const GraphGrid& gg, int level) {
    const auto& row = gg.rows[static_cast<size_t>(level)];
    double total = 0.0;
    for (size_t j = 0; j < row.size(); ++j) {
        const GraphNode& a = row[j];
        const GraphNode& b = row[(j + 1) % row.size()];
        const double a0 = std::atan2(a.q, a.p);
        const double b0 = std::atan2(b.q, b.p);
        double d = b0 - a0;
        while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
        while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
        total += d;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace conemc

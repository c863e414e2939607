#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conemc/graph.hpp"
#include "conemc/radial.hpp"
#include "conemc/solver.hpp"

using namespace conemc;

namespace {

SurfacePatch radial_patch(double v_max = 0.5) {
    const auto spec = NullCurveSpec::constant(64, -0.25);
    const auto h1 = PrescribedCurvature::constant(1.0);
    SolverConfig cfg;
    cfg.v_max = v_max;
    return march(spec, h1, cfg);
}

// hyperboloid graph z = sqrt(1+x^2+y^2) - 1 sampled directly: a classical
// H = 1 solution with no singularity, used as an independent substitution
// oracle for the graph equation
GraphGrid hyperboloid_grid() {
    GraphGrid gg;
    gg.n = 16;
    gg.dv = 0.1;
    gg.p0 = {0, 0, 0};
    const int rows = 5;
    for (int k = 0; k < rows; ++k) {
        const double rho = 0.5 + 0.1 * k;
        gg.v_levels.push_back(0.1 * (k + 1));
        std::vector<GraphNode> row(16);
        for (int j = 0; j < 16; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / 16;
            const double x = rho * std::cos(phi);
            const double y = rho * std::sin(phi);
            const double w = std::sqrt(1.0 + x * x + y * y);
            GraphNode& node = row[static_cast<size_t>(j)];
            node.x = x;
            node.y = y;
            node.z = w - 1.0;
            node.p = x / w;
            node.q = y / w;
            node.r = (1.0 + y * y) / (w * w * w);
            node.s = -x * y / (w * w * w);
            node.t = (1.0 + x * x) / (w * w * w);
            node.sigma = 1.0 - node.p * node.p - node.q * node.q;
            node.jacobian = 1.0;
        }
        gg.rows.push_back(std::move(row));
    }
    return gg;
}

}  // namespace

TEST_CASE("reconstruct the radial graph") {
    const SurfacePatch patch = radial_patch();
    const GraphGrid gg = reconstruct(patch);
    CHECK(gg.levels() == patch.levels() - 1);

    // rows are circles of radius |f(v)| at height h(v)
    for (int k = 0; k < gg.levels(); k += 100) {
        const double v = gg.v_levels[static_cast<size_t>(k)];
        double f = 0.0, h = 0.0;
        closed_form_neg_quarter(v, &f, &h);
        for (int j = 0; j < gg.n; j += 7) {
            const GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            CHECK(std::hypot(node.x, node.y) == doctest::Approx(std::abs(f)).epsilon(1e-8));
            CHECK(node.z == doctest::Approx(h).epsilon(1e-8));
        }
    }

    // gradient matches the closed form (p,q) = cos(v) (cos u, -sin u)
    for (int k = 0; k < gg.levels(); k += 59) {
        const double v = gg.v_levels[static_cast<size_t>(k)];
        for (int j = 0; j < gg.n; ++j) {
            const double u = 2.0 * std::numbers::pi * j / gg.n;
            const GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            CHECK(std::abs(node.p - std::cos(v) * std::cos(u)) <= 1e-8);
            CHECK(std::abs(node.q + std::cos(v) * std::sin(u)) <= 1e-8);
        }
    }
}

TEST_CASE("reconstruct rejects reversed orientation") {
    const SurfacePatch patch = radial_patch(0.1);
    SurfacePatch mirrored = patch;
    // reflect u -> -u: reverses the orientation of the (u,v) -> (x,y) map
    for (int k = 0; k < patch.levels(); ++k) {
        for (int j = 0; j < patch.n; ++j) {
            const int src = (patch.n - j) % patch.n;
            mirrored.psi[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                patch.psi[static_cast<size_t>(k)][static_cast<size_t>(src)];
            mirrored.psi_v[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                patch.psi_v[static_cast<size_t>(k)][static_cast<size_t>(src)];
        }
    }
    CHECK_THROWS_WITH_AS(reconstruct(mirrored), doctest::Contains("Jacobian"), SolverError);
}

TEST_CASE("reconstruct rejects a double cover") {
    const SurfacePatch patch = radial_patch(0.1);
    SurfacePatch doubled = patch;
    for (int k = 0; k < patch.levels(); ++k) {
        for (int j = 0; j < patch.n; ++j) {
            // traverse the same circle twice in u
            const int src = (2 * j) % patch.n;
            doubled.psi[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                patch.psi[static_cast<size_t>(k)][static_cast<size_t>(src)];
            doubled.psi_v[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                patch.psi_v[static_cast<size_t>(k)][static_cast<size_t>(src)];
        }
    }
    CHECK_THROWS_AS(reconstruct(doubled), SolverError);
}

TEST_CASE("graph equation residual on benchmark and oracle grids") {
    const auto h1 = PrescribedCurvature::constant(1.0);
    const SurfacePatch patch = radial_patch();
    const GraphGrid gg = reconstruct(patch);
    CHECK(maineq_residual(gg, h1) <= 1e-4);

    // direct-substitution hyperboloid oracle
    CHECK(maineq_residual(hyperboloid_grid(), h1) <= 1e-6);

    // a cone-like non-solution with valid ellipticity has O(1) residual
    GraphGrid cone = hyperboloid_grid();
    for (auto& row : cone.rows) {
        for (auto& node : row) {
            const double rho = std::hypot(node.x, node.y);
            node.z = 0.99 * rho;
            node.p = 0.99 * node.x / rho;
            node.q = 0.99 * node.y / rho;
            node.r = 0.99 * node.y * node.y / (rho * rho * rho);
            node.s = -0.99 * node.x * node.y / (rho * rho * rho);
            node.t = 0.99 * node.x * node.x / (rho * rho * rho);
            node.sigma = 1.0 - node.p * node.p - node.q * node.q;
        }
    }
    CHECK(maineq_residual(cone, h1) > 0.01);

    // ellipticity violation is an error that lists offending samples
    GraphGrid bad = hyperboloid_grid();
    bad.rows[0][0].p = 0.8;
    bad.rows[0][0].q = 0.7;
    bad.rows[0][0].sigma = 1.0 - 0.8 * 0.8 - 0.7 * 0.7;  // negative
    bad.rows[0][1].p = 0.9;
    bad.rows[0][1].q = 0.9;
    bad.rows[0][1].sigma = 0.5;  // claims validity, fails p^2+q^2 < 1
    CHECK_THROWS_WITH_AS(maineq_residual(bad, h1), doctest::Contains("ellipticity"), SolverError);
}

TEST_CASE("beltrami system residual") {
    const SurfacePatch patch = radial_patch();
    GraphGrid gg = reconstruct(patch);
    CHECK(beltrami_check(patch, gg) <= 1e-6);

    // perturbing q must be detected
    for (auto& row : gg.rows) {
        for (auto& node : row) node.q += 0.01;
    }
    CHECK(beltrami_check(patch, gg) > 1e-3);
}

TEST_CASE("beltrami coefficient identity ac - b^2 = sigma") {
    const SurfacePatch patch = radial_patch(0.3);
    const GraphGrid gg = reconstruct(patch);
    for (int k = 0; k < gg.levels(); k += 37) {
        for (int j = 0; j < gg.n; ++j) {
            const GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            const double a = 1.0 - node.q * node.q;
            const double b = node.p * node.q;
            const double c = 1.0 - node.p * node.p;
            CHECK(std::abs(a * c - b * b - node.sigma) <= 1e-14);
        }
    }
}

TEST_CASE("hessian determinant sign") {
    const SurfacePatch patch = radial_patch();
    const HessianReport rep = hessian_sign(reconstruct(patch));
    CHECK(rep.sign_constant);
    CHECK(!rep.vanishes);
    CHECK(rep.sign == -1);
    CHECK(rep.min_abs > 1.0);

    // planar graph: hessian determinant identically zero is flagged
    GraphGrid planar = hyperboloid_grid();
    for (auto& row : planar.rows) {
        for (auto& node : row) {
            node.z = 0.0;
            node.p = node.q = node.r = node.s = node.t = 0.0;
            node.sigma = 1.0;
        }
    }
    const HessianReport flat = hessian_sign(planar);
    CHECK(flat.vanishes);
    CHECK(!flat.sign_constant);

    // mixed signs are flagged
    GraphGrid mixed = hyperboloid_grid();
    mixed.rows[0][0].r = 1.0;
    mixed.rows[0][0].t = 1.0;
    mixed.rows[0][0].s = 0.0;
    mixed.rows[1][0].r = 1.0;
    mixed.rows[1][0].t = -1.0;
    mixed.rows[1][0].s = 0.0;
    const HessianReport m = hessian_sign(mixed);
    CHECK(!m.sign_constant);
}

TEST_CASE("cone asymptotics of the radial benchmark") {
    const SurfacePatch patch = radial_patch(0.5);
    const GraphGrid gg = reconstruct(patch);
    const std::vector<double> ratios = cone_ratio(gg);

    const int at001 = gg.level_at(0.01);
    CHECK(ratios[static_cast<size_t>(at001)] <= 1e-2);
    // (h/f)^2 - 1 ~ -v^2/3 near the puncture
    CHECK(ratios[static_cast<size_t>(at001)] == doctest::Approx(1e-4 / 3.0).epsilon(1e-3));

    double prev = -1.0;
    for (double v : {0.01, 0.05, 0.1, 0.2, 0.4}) {
        const double dev = ratios[static_cast<size_t>(gg.level_at(v))];
        CHECK(dev > prev);
        prev = dev;
    }

    // the hyperboloid is nowhere near the cone ratio profile (negative control)
    const std::vector<double> hyp = cone_ratio(hyperboloid_grid());
    for (double dev : hyp) CHECK(dev > 0.5);
}

TEST_CASE("gradient image winds once and tends to the unit circle") {
    const SurfacePatch patch = radial_patch(0.5);
    const GraphGrid gg = reconstruct(patch);
    CHECK(std::abs(gradient_winding(gg, 0)) == 1);
    CHECK(std::abs(gradient_winding(gg, gg.levels() - 1)) == 1);

    const GraphNode& inner = gg.rows[0][0];
    CHECK(std::hypot(inner.p, inner.q) > 0.999);
    CHECK(std::hypot(inner.p, inner.q) < 1.0);
}

// Python bindings for the core operations: Cauchy marching, radial
// benchmarks, Gauss-map analysis, null-curve extraction and graph
// reconstruction. Arrays cross the boundary as numpy ndarrays.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "conemc/analysis.hpp"
#include "conemc/graph.hpp"
#include "conemc/io.hpp"
#include "conemc/radial.hpp"
#include "conemc/solver.hpp"

namespace py = pybind11;
using namespace conemc;

namespace {

py::array_t<double> rows_to_array(const std::vector<std::vector<LVec3>>& rows) {
    const size_t levels = rows.size();
    const size_t n = levels ? rows[0].size() : 0;
    py::array_t<double> out({levels, n, static_cast<size_t>(3)});
    auto w = out.mutable_unchecked<3>();
    for (size_t k = 0; k < levels; ++k) {
        for (size_t j = 0; j < n; ++j) {
            w(k, j, 0) = rows[k][j].x;
            w(k, j, 1) = rows[k][j].y;
            w(k, j, 2) = rows[k][j].z;
        }
    }
    return out;
}

py::array_t<double> vec_to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    auto w = out.mutable_unchecked<1>();
    for (size_t i = 0; i < v.size(); ++i) w(static_cast<py::ssize_t>(i)) = v[i];
    return out;
}

SolverConfig make_config(int n, double dv, double v_max, double filter_strength,
                         double residual_budget, std::tuple<double, double, double> p0) {
    SolverConfig cfg;
    cfg.n = n;
    cfg.dv = dv;
    cfg.v_max = v_max;
    cfg.filter_strength = filter_strength;
    cfg.residual_budget = residual_budget;
    cfg.p0 = {std::get<0>(p0), std::get<1>(p0), std::get<2>(p0)};
    return cfg;
}

PeriodicField height_from_coeffs(int n, const std::vector<double>& a_cos,
                                 const std::vector<double>& a_sin) {
    return NullCurveSpec::cosine_series(n, a_cos, a_sin).A;
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

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spacelike prescribed-mean-curvature graphs with conelike singularities "
              "in Minkowski 3-space: spectral Cauchy marching and diagnostics.";

    py::register_exception<SolverError>(m, "SolverError");

    py::class_<SurfacePatch>(m, "SurfacePatch")
        .def_readonly("n", &SurfacePatch::n)
        .def_readonly("dv", &SurfacePatch::dv)
        .def_readonly("v_ok", &SurfacePatch::v_ok)
        .def_readonly("degraded", &SurfacePatch::degraded)
        .def_readonly("degrade_reason", &SurfacePatch::degrade_reason)
        .def_property_readonly("v_levels",
                               [](const SurfacePatch& p) { return vec_to_array(p.v_levels); })
        .def_property_readonly("psi", [](const SurfacePatch& p) { return rows_to_array(p.psi); })
        .def_property_readonly("psi_v",
                               [](const SurfacePatch& p) { return rows_to_array(p.psi_v); })
        .def("__repr__", [](const SurfacePatch& p) {
            return "<SurfacePatch n=" + std::to_string(p.n) + " levels=" +
                   std::to_string(p.levels()) + " v_ok=" + format_double(p.v_ok) + ">";
        });

    m.def(
        "solve",
        [](const std::vector<double>& a_cos, const std::vector<double>& a_sin,
           const std::string& h, int n, double dv, double v_max, double filter_strength,
           double residual_budget, std::tuple<double, double, double> p0) {
            const NullCurveSpec spec{height_from_coeffs(n, a_cos, a_sin)};
            return march(spec, PrescribedCurvature::expression(h),
                         make_config(n, dv, v_max, filter_strength, residual_budget, p0));
        },
        py::arg("a_cos"), py::arg("a_sin") = std::vector<double>{}, py::arg("h") = "1",
        py::arg("n") = 64, py::arg("dv") = 1e-3, py::arg("v_max") = 0.8,
        py::arg("filter_strength") = 36.0, py::arg("residual_budget") = 1e-6,
        py::arg("p0") = std::make_tuple(0.0, 0.0, 0.0),
        "March the Cauchy problem for the height function A(u) = a_cos[0] + sum a_cos[k] "
        "cos(ku) + sum a_sin[k] sin((k+1)u) and curvature expression h.");

    m.def(
        "closed_form_neg_quarter",
        [](double v) {
            double f = 0.0, h = 0.0;
            closed_form_neg_quarter(v, &f, &h);
            return std::make_pair(f, h);
        },
        py::arg("v"), "(f, h) of the A = -1/4, H = 1 profile: (-tan(v/2)/2, -(v-tan(v/2))/2).");

    m.def(
        "integrate_pos_quarter",
        [](double v_max, double dv) {
            const RadialProfile p = integrate_pos_quarter(v_max, dv);
            py::dict out;
            out["v"] = vec_to_array(p.v_grid);
            out["f"] = vec_to_array(p.f);
            out["h"] = vec_to_array(p.h);
            return out;
        },
        py::arg("v_max") = 0.8, py::arg("dv") = 1e-3,
        "Integrate the A = +1/4 first-order system f' = sqrt(1/16 + 3/2 f^2 + f^4), "
        "h' = 1/4 + f^2.");

    m.def("conformality_residual", &patch_conformality, py::arg("patch"),
          "sup |<psi_w, psi_w>| over the whole patch.");

    m.def(
        "extract_height",
        [](const SurfacePatch& patch) {
            const LimitNullCurve curve = extract_null_curve(patch);
            py::dict out;
            std::vector<double> u(static_cast<size_t>(curve.A.size()));
            std::vector<double> a(static_cast<size_t>(curve.A.size()));
            for (int j = 0; j < curve.A.size(); ++j) {
                u[static_cast<size_t>(j)] = curve.A.node(j);
                a[static_cast<size_t>(j)] = curve.A.real_at(j);
            }
            out["u"] = vec_to_array(u);
            out["A"] = vec_to_array(a);
            out["cone"] = curve.cone_sign;
            return out;
        },
        py::arg("patch"),
        "Canonical height function A(u) of the limit null curve at v = 0 (cone: +1 upper, "
        "-1 lower).");

    m.def(
        "round_trip",
        [](const std::vector<double>& a_cos, const std::vector<double>& a_sin,
           const std::string& h, int n, double dv, double v_max) {
            return round_trip(height_from_coeffs(n, a_cos, a_sin),
                              PrescribedCurvature::expression(h),
                              make_config(n, dv, v_max, 36.0, 1e-6, {0.0, 0.0, 0.0}));
        },
        py::arg("a_cos"), py::arg("a_sin") = std::vector<double>{}, py::arg("h") = "1",
        py::arg("n") = 64, py::arg("dv") = 1e-3, py::arg("v_max") = 0.3,
        "march -> extract -> canonical phase; sup |A_extracted - A|.");

    m.def(
        "reconstruct",
        [](const SurfacePatch& patch) {
            const GraphGrid gg = reconstruct(patch);
            const size_t levels = static_cast<size_t>(gg.levels());
            const size_t n = static_cast<size_t>(gg.n);
            py::dict out;
            out["v_levels"] = vec_to_array(gg.v_levels);
            const char* names[] = {"x", "y", "z", "zx", "zy", "zxx", "zxy", "zyy", "sigma"};
            for (int field = 0; field < 9; ++field) {
                py::array_t<double> arr({levels, n});
                auto w = arr.mutable_unchecked<2>();
                for (size_t k = 0; k < levels; ++k) {
                    for (size_t j = 0; j < n; ++j) {
                        const GraphNode& node = gg.rows[k][j];
                        const double vals[] = {node.x, node.y, node.z,     node.p, node.q,
                                               node.r, node.s, node.t, node.sigma};
                        w(k, j) = vals[field];
                    }
                }
                out[names[field]] = arr;
            }
            return out;
        },
        py::arg("patch"),
        "Euclidean graph samples (x, y, z, z_x, z_y, z_xx, z_xy, z_yy, sigma) on the "
        "punctured disk.");

    m.def(
        "maineq_residual",
        [](const SurfacePatch& patch, const std::string& h, double sigma_mask) {
            return maineq_residual(reconstruct(patch), PrescribedCurvature::expression(h),
                                   sigma_mask);
        },
        py::arg("patch"), py::arg("h") = "1", py::arg("sigma_mask") = 1e-8,
        "sup residual of (1-q^2)r + 2pqs + (1-p^2)t = 2 H (1-p^2-q^2)^{3/2}.");

    m.def(
        "gaussian_curvature",
        [](const SurfacePatch& patch, const std::string& h) {
            const auto H = PrescribedCurvature::expression(h);
            const GaussField g = gauss_map(patch);
            const CurvatureField kf = gaussian_curvature(g, H, patch);
            const size_t levels = kf.K.size();
            const size_t n = levels ? kf.K[0].size() : 0;
            py::array_t<double> arr({levels, n});
            auto w = arr.mutable_unchecked<2>();
            for (size_t k = 0; k < levels; ++k) {
                for (size_t j = 0; j < n; ++j) {
                    w(k, j) = kf.blowup[k][j] ? std::numeric_limits<double>::quiet_NaN()
                                              : kf.K[k][j];
                }
            }
            py::dict out;
            out["v_levels"] = vec_to_array(kf.v_levels);
            out["K"] = arr;
            return out;
        },
        py::arg("patch"), py::arg("h") = "1",
        "K = H^2(|g_w|^2/|g_wbar|^2 - 1) per node; NaN marks blow-up nodes (all of v = 0).");

    m.def(
        "weierstrass_residual",
        [](const SurfacePatch& patch, const std::string& h) {
            const auto H = PrescribedCurvature::expression(h);
            return weierstrass_check(patch, gauss_map(patch), H);
        },
        py::arg("patch"), py::arg("h") = "1",
        "sup deviation of (x_w, y_w, z_w) from the representation formula.");

    m.def(
        "gauss_pde_residual",
        [](const SurfacePatch& patch, const std::string& h) {
            const auto H = PrescribedCurvature::expression(h);
            return gauss_pde_residual(gauss_map(patch), H, patch);
        },
        py::arg("patch"), py::arg("h") = "1",
        "sup residual of the Gauss-map PDE (harmonic-map equation for constant H).");

    m.def(
        "gz_identity",
        [](const SurfacePatch& patch) { return gz_identity_check(patch, gauss_map(patch)); },
        py::arg("patch"), "sup | 4|g_w z_w|^2(u,0) - <b'(u), b'(u)> |.");

    m.def("equivariance_error", &equivariance_error, py::arg("patch"), py::arg("m"),
          "sup |I_theta psi(u,v) - psi(u+theta,v)| for theta = 2 pi m / n.");

    m.def(
        "surface_csv", [](const SurfacePatch& patch) { return format_surface_csv(patch); },
        py::arg("patch"), "Deterministic CSV (u,v,x,y,z) text of the patch.");

    m.def(
        "surface_obj", [](const SurfacePatch& patch) { return format_obj(patch); },
        py::arg("patch"), "Quad-mesh OBJ text of the patch (periodic seam closed).");

#ifdef CONEMC_VERSION
    m.attr("__version__") = CONEMC_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}

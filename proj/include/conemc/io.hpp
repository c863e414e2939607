#pragma once

// Deterministic text export of surfaces, radial profiles and graph grids
// (17 significant digits), plus the inverse parse of a surface CSV. A parsed
// surface re-derives its psi_v rows by 4th-order finite differences.

#include <string>

#include "conemc/analysis.hpp"
#include "conemc/graph.hpp"
#include "conemc/radial.hpp"
#include "conemc/solver.hpp"

namespace conemc {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double v);  // %.17g

// columns exactly u,v,x,y,z; one row per node, v-major then u
std::string format_surface_csv(const SurfacePatch& patch);
// columns v,f,h
std::string format_profile_csv(const RadialProfile& profile);
// columns u,v,x,y,z,zx,zy,zxx,zxy,zyy,sigma
std::string format_graph_csv(const GraphGrid& gg);
// columns u,A
std::string format_height_csv(const LimitNullCurve& curve);
// vertices row-major in v then u, quad faces, periodic seam closed
std::string format_obj(const SurfacePatch& patch);

// Inverse of format_surface_csv; validates the uniform grid structure and
// derives psi_v rows (patch.psi_v_derived = true). Needs >= 5 v-levels.
SurfacePatch parse_surface_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace conemc

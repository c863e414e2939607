#include "conemc/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

#include "conemc/fd.hpp"

namespace conemc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_surface_csv(const SurfacePatch& patch) {
    std::string out = "u,v,x,y,z\n";
    for (int k = 0; k < patch.levels(); ++k) {
        const double v = patch.v_levels[static_cast<size_t>(k)];
        for (int j = 0; j < patch.n; ++j) {
            const double u = 2.0 * std::numbers::pi * j / patch.n;
            const LVec3& p = patch.psi[static_cast<size_t>(k)][static_cast<size_t>(j)];
            out += format_double(u);
            out += ',';
            out += format_double(v);
            out += ',';
            out += format_double(p.x);
            out += ',';
            out += format_double(p.y);
            out += ',';
            out += format_double(p.z);
            out += '\n';
        }
    }
    return out;
}

std::string format_profile_csv(const RadialProfile& profile) {
    std::string out = "v,f,h\n";
    for (size_t k = 0; k < profile.v_grid.size(); ++k) {
        out += format_double(profile.v_grid[k]);
        out += ',';
        out += format_double(profile.f[k]);
        out += ',';
        out += format_double(profile.h[k]);
        out += '\n';
    }
    return out;
}

std::string format_graph_csv(const GraphGrid& gg) {
    std::string out = "u,v,x,y,z,zx,zy,zxx,zxy,zyy,sigma\n";
    for (int k = 0; k < gg.levels(); ++k) {
        const double v = gg.v_levels[static_cast<size_t>(k)];
        for (int j = 0; j < gg.n; ++j) {
            const double u = 2.0 * std::numbers::pi * j / gg.n;
            const GraphNode& node = gg.rows[static_cast<size_t>(k)][static_cast<size_t>(j)];
            const double cols[] = {u,      v,      node.x, node.y, node.z, node.p,
                                   node.q, node.r, node.s, node.t, node.sigma};
            for (size_t c = 0; c < std::size(cols); ++c) {
                if (c) out += ',';
                out += format_double(cols[c]);
            }
            out += '\n';
        }
    }
    return out;
}

std::string format_height_csv(const LimitNullCurve& curve) {
    std::string out = "u,A\n";
    const int n = curve.A.size();
    for (int j = 0; j < n; ++j) {
        out += format_double(curve.A.node(j));
        out += ',';
        out += format_double(curve.A.real_at(j));
        out += '\n';
    }
    return out;
}

std::string format_obj(const SurfacePatch& patch) {
    std::string out = "# periodic surface strip, vertices row-major in v then u\n";
    for (int k = 0; k < patch.levels(); ++k) {
        for (int j = 0; j < patch.n; ++j) {
            const LVec3& p = patch.psi[static_cast<size_t>(k)][static_cast<size_t>(j)];
            out += "v ";
            out += format_double(p.x);
            out += ' ';
            out += format_double(p.y);
            out += ' ';
            out += format_double(p.z);
            out += '\n';
        }
    }
    const int n = patch.n;
    for (int k = 0; k + 1 < patch.levels(); ++k) {
        for (int j = 0; j < n; ++j) {
            const int a = k * n + j + 1;
            const int b = k * n + (j + 1) % n + 1;
            const int c = (k + 1) * n + (j + 1) % n + 1;
            const int d = (k + 1) * n + j + 1;
            out += "f " + std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c) +
                   " " + std::to_string(d) + "\n";
        }
    }
    return out;
}

namespace {

std::vector<double> split_csv_row(const std::string& line, size_t lineno) {
    std::vector<double> out;
    size_t start = 0;
    while (start <= line.size()) {
        size_t end = line.find(',', start);
        if (end == std::string::npos) end = line.size();
        const std::string tok = line.substr(start, end - start);
        try {
            size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw IoError("surface csv: bad number '" + tok + "' on line " +
                          std::to_string(lineno));
        }
        if (end == line.size()) break;
        start = end + 1;
    }
    return out;
}

}  // namespace

SurfacePatch parse_surface_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "u,v,x,y,z") {
        throw IoError("surface csv: missing 'u,v,x,y,z' header");
    }
    std::vector<std::array<double, 5>> rows;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<double> vals = split_csv_row(line, lineno);
        if (vals.size() != 5) {
            throw IoError("surface csv: expected 5 columns on line " + std::to_string(lineno));
        }
        rows.push_back({vals[0], vals[1], vals[2], vals[3], vals[4]});
    }
    if (rows.empty()) throw IoError("surface csv: no data rows");

    // nodes per level = run length of the first v value
    const double v0 = rows[0][1];
    size_t n = 0;
    while (n < rows.size() && rows[n][1] == v0) ++n;
    if (n < 8 || !is_power_of_two(static_cast<int>(n)) || rows.size() % n != 0) {
        throw IoError("surface csv: grid is not a power-of-two u-ring per v-level");
    }
    const size_t levels = rows.size() / n;
    if (levels < 5) {
        throw IoError("surface csv: need at least 5 v-levels to derive v-derivatives");
    }

    SurfacePatch patch;
    patch.n = static_cast<int>(n);
    patch.psi.resize(levels, std::vector<LVec3>(n));
    patch.v_levels.resize(levels);
    for (size_t k = 0; k < levels; ++k) {
        patch.v_levels[k] = rows[k * n][1];
        for (size_t j = 0; j < n; ++j) {
            const auto& r = rows[k * n + j];
            const double expect_u = 2.0 * std::numbers::pi * static_cast<double>(j) /
                                    static_cast<double>(n);
            if (std::abs(r[0] - expect_u) > 1e-9 || r[1] != patch.v_levels[k]) {
                throw IoError("surface csv: node ordering is not v-major uniform");
            }
            patch.psi[k][j] = {r[2], r[3], r[4]};
        }
    }
    if (patch.v_levels[0] != 0.0) throw IoError("surface csv: first v-level must be 0");
    const double dv = patch.v_levels[1] - patch.v_levels[0];
    if (!(dv > 0.0)) throw IoError("surface csv: v-levels must increase");
    for (size_t k = 1; k < levels; ++k) {
        if (std::abs(patch.v_levels[k] - patch.v_levels[k - 1] - dv) > 1e-9 * std::max(1.0, dv)) {
            throw IoError("surface csv: v-levels are not uniformly spaced");
        }
    }
    patch.dv = dv;
    patch.p0 = patch.psi[0][0];
    patch.v_ok = patch.v_levels.back();
    patch.psi_v_derived = true;

    // psi_v by 4th-order stencils down each column
    patch.psi_v.resize(levels, std::vector<LVec3>(n));
    std::vector<double> col(levels);
    for (size_t j = 0; j < n; ++j) {
        for (int comp = 0; comp < 3; ++comp) {
            for (size_t k = 0; k < levels; ++k) {
                const LVec3& p = patch.psi[k][j];
                col[k] = comp == 0 ? p.x : (comp == 1 ? p.y : p.z);
            }
            const std::vector<double> d = fd_derivative_uniform(col, dv, 1, 4);
            for (size_t k = 0; k < levels; ++k) {
                LVec3& pv = patch.psi_v[k][j];
                (comp == 0 ? pv.x : (comp == 1 ? pv.y : pv.z)) = d[k];
            }
        }
    }
    return patch;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + p.parent_path().string());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out.good()) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace conemc

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "conemc/config.hpp"
#include "conemc/io.hpp"
#include "conemc/radial.hpp"

using namespace conemc;

namespace {

SurfacePatch small_patch(int n = 8, int levels = 3) {
    const RadialProfile p = closed_form_profile(levels > 1 ? (levels - 1) * 1e-3 : 1e-3, 1e-3);
    return radial_surface(p, n);
}

size_t count_lines_starting(const std::string& text, const std::string& prefix) {
    size_t count = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("obj export counts and seam closure") {
    const SurfacePatch patch = small_patch(8, 3);
    const std::string obj = format_obj(patch);
    CHECK(count_lines_starting(obj, "v ") == 24);
    CHECK(count_lines_starting(obj, "f ") == 16);
    // seam quads reference the first column again
    CHECK(obj.find("f 8 1 9 16") != std::string::npos);
}

TEST_CASE("csv row count and byte determinism") {
    const SurfacePatch patch = small_patch(16, 5);
    const std::string csv = format_surface_csv(patch);
    CHECK(count_lines_starting(csv, "") == 1 + 16 * 5);  // header + nodes
    CHECK(csv == format_surface_csv(patch));
    CHECK(format_obj(patch) == format_obj(patch));
}

TEST_CASE("surface csv round trip is bit exact on psi") {
    const RadialProfile p = closed_form_profile(0.02, 1e-3);
    const SurfacePatch patch = radial_surface(p, 16);
    const SurfacePatch back = parse_surface_csv(format_surface_csv(patch));
    CHECK(back.n == patch.n);
    CHECK(back.levels() == patch.levels());
    CHECK(back.psi_v_derived);
    for (int k = 0; k < patch.levels(); ++k) {
        for (int j = 0; j < patch.n; ++j) {
            const LVec3& a = patch.psi[static_cast<size_t>(k)][static_cast<size_t>(j)];
            const LVec3& b = back.psi[static_cast<size_t>(k)][static_cast<size_t>(j)];
            CHECK(a.x == b.x);  // %.17g text preserves doubles exactly
            CHECK(a.y == b.y);
            CHECK(a.z == b.z);
        }
    }
    // derived psi_v close to the analytic rows (4th-order stencils)
    for (int k = 0; k < patch.levels(); ++k) {
        for (int j = 0; j < patch.n; ++j) {
            const LVec3 d = patch.psi_v[static_cast<size_t>(k)][static_cast<size_t>(j)] -
                            back.psi_v[static_cast<size_t>(k)][static_cast<size_t>(j)];
            CHECK(euclidean_norm(d) <= 1e-10);
        }
    }
}

TEST_CASE("surface csv rejects malformed input") {
    CHECK_THROWS_AS(parse_surface_csv("x,y,z\n"), IoError);
    CHECK_THROWS_AS(parse_surface_csv("u,v,x,y,z\n"), IoError);
    CHECK_THROWS_AS(parse_surface_csv("u,v,x,y,z\n0,0,1,2\n"), IoError);
    CHECK_THROWS_AS(parse_surface_csv("u,v,x,y,z\n0,0,1,2,oops\n"), IoError);
    const SurfacePatch patch = small_patch(8, 3);  // too few levels for stencils
    CHECK_THROWS_WITH_AS(parse_surface_csv(format_surface_csv(patch)),
                         doctest::Contains("5 v-levels"), IoError);
}

TEST_CASE("profile and height csv shapes") {
    const RadialProfile p = closed_form_profile(0.01, 1e-3);
    const std::string csv = format_profile_csv(p);
    CHECK(csv.rfind("v,f,h\n", 0) == 0);
    CHECK(count_lines_starting(csv, "") == 1 + p.v_grid.size());
}

TEST_CASE("parse_config basics") {
    const RunConfig cfg = parse_config("mode=radial\nA=-0.25\nH=1\n");
    CHECK(cfg.mode == RunMode::radial);
    CHECK(cfg.has_A);
    CHECK(cfg.a_cos.size() == 1);
    CHECK(cfg.a_cos[0] == -0.25);
    CHECK(cfg.n == 64);
    CHECK(cfg.tol.at("tol_maineq") == 1e-4);

    const RunConfig w = parse_config(
        "mode=solve\nA_cos=0.25,0.1\nA_sin=0.05\nn=128\ndv=0.002\nv_max=0.3\nout=run\nobj=true\n");
    CHECK(w.n == 128);
    CHECK(w.a_cos.size() == 2);
    CHECK(w.a_sin.size() == 1);
    CHECK(w.write_obj);

    // comments, blank lines, duplicate keys (last wins)
    const RunConfig d = parse_config("# comment\nmode=solve\nA=1\n\nA=-0.25\n");
    CHECK(d.a_cos[0] == -0.25);
}

TEST_CASE("parse_config errors carry line numbers") {
    try {
        parse_config("mode=solve\nA=0.25\nn=63\n");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("power of two") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(""), ConfigError);                      // missing mode
    CHECK_THROWS_AS(parse_config("mode=solve\n"), ConfigError);          // missing A
    CHECK_THROWS_AS(parse_config("mode=fly\n"), ConfigError);            // bad mode
    CHECK_THROWS_AS(parse_config("mode=solve\nA=0.25\nbogus=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode=solve\nA=abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode=solve\nA=0.25\ndv=-1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode=check\n"), ConfigError);          // missing surface
    CHECK_THROWS_AS(parse_config("mode=radial\nA=0.3\n"), ConfigError);  // not +-1/4
    CHECK_THROWS_AS(parse_config("mode=solve\nA=0.25\nH=1+*2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode=solve\nA=0.25\np0=1,2\n"), ConfigError);
}

TEST_CASE("config echo is sorted and deterministic") {
    const RunConfig cfg = parse_config("mode=radial\nA=-0.25\n");
    const auto echo = config_echo(cfg);
    CHECK(echo == config_echo(cfg));
    for (size_t i = 1; i < echo.size(); ++i) CHECK(echo[i - 1].first <= echo[i].first);
}

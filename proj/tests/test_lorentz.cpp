#include <doctest.h>

#include <cmath>
#include <random>

#include "conemc/lorentz.hpp"

using namespace conemc;

namespace {

double det3(const LVec3& a, const LVec3& b, const LVec3& c) {
    return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
           a.z * (b.x * c.y - b.y * c.x);
}

LVec3 random_vec(std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    return {dist(rng), dist(rng), dist(rng)};
}

}  // namespace

TEST_CASE("minkowski dot basics") {
    CHECK(minkowski_dot({0, 0, 1}, {0, 0, 1}) == -1.0);
    CHECK(minkowski_dot({1, 0, 0}, {0, 0, 1}) == 0.0);
    CHECK(minkowski_dot({3, 4, 5}, {3, 4, 5}) == 0.0);
}

TEST_CASE("minkowski dot is symmetric and bilinear") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const LVec3 a = random_vec(rng);
        const LVec3 b = random_vec(rng);
        const LVec3 c = random_vec(rng);
        CHECK(minkowski_dot(a, b) == doctest::Approx(minkowski_dot(b, a)).epsilon(1e-14));
        CHECK(minkowski_dot(a + b, c) ==
              doctest::Approx(minkowski_dot(a, c) + minkowski_dot(b, c)).epsilon(1e-12));
        CHECK(minkowski_dot(2.5 * a, c) == doctest::Approx(2.5 * minkowski_dot(a, c)).epsilon(1e-12));
    }
}

TEST_CASE("lorentz cross fixes the determinant convention") {
    const LVec3 e1{1, 0, 0}, e2{0, 1, 0};
    const LVec3 w = lorentz_cross(e1, e2);
    CHECK(w.x == 0.0);
    CHECK(w.y == 0.0);
    CHECK(w.z == 1.0);
    const LVec3 back = lorentz_cross(e2, e1);
    CHECK(back.z == -1.0);
}

TEST_CASE("cross product determinant identity on random triples") {
    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const LVec3 a = random_vec(rng);
        const LVec3 b = random_vec(rng);
        const LVec3 c = random_vec(rng);
        const LVec3 w = lorentz_cross(a, b);
        CHECK(std::abs(minkowski_dot(w, c) + det3(a, b, c)) <= 1e-12);
        CHECK(std::abs(minkowski_dot(w, a)) <= 1e-12);
        CHECK(std::abs(minkowski_dot(w, b)) <= 1e-12);
    }
}

TEST_CASE("stereographic projection") {
    CHECK(std::abs(stereographic({0, 0, 1})) == 0.0);
    const double r2 = std::sqrt(2.0);
    CHECK(stereographic({1, 0, r2}).real() == doctest::Approx(r2 - 1.0).epsilon(1e-15));
    CHECK(stereographic({1, 0, r2}).imag() == doctest::Approx(0.0));
    const auto w = stereographic({0, -1, r2});
    CHECK(w.real() == doctest::Approx(0.0));
    CHECK(w.imag() == doctest::Approx(r2 - 1.0).epsilon(1e-15));
    CHECK_THROWS_AS(stereographic({0, 0, -1}), std::domain_error);
}

TEST_CASE("stereographic maps the hyperboloid into the open disk") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double x = dist(rng), y = dist(rng);
        const LVec3 g{x, y, std::sqrt(1.0 + x * x + y * y)};
        CHECK(std::abs(minkowski_dot(g, g) + 1.0) <= 1e-12);
        CHECK(std::abs(stereographic(g)) < 1.0);
    }
}

TEST_CASE("causal classification") {
    CHECK(classify({1, 0, 0}, 1e-12) == CausalClass::spacelike);
    CHECK(classify({1, 0, 1}, 1e-12) == CausalClass::null);
    CHECK(classify({0, 0, 1}, 1e-12) == CausalClass::timelike);
    CHECK(classify({1, 0, 1.001}, 1e-2) == CausalClass::null);  // tolerance window
    CHECK_THROWS_AS(classify({1, 0, 0}, -1.0), std::invalid_argument);
}

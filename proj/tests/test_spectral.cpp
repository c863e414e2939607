#include <doctest.h>

#include <cmath>
#include <random>

#include "conemc/spectral.hpp"

using namespace conemc;

namespace {

// random real field with zero Nyquist content (band-limited)
PeriodicField random_band_limited(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> modes(static_cast<size_t>(n), 0.0);
    modes[0] = dist(rng);
    for (int k = 1; k < n / 2; ++k) {
        const cplx c{dist(rng), dist(rng)};
        modes[static_cast<size_t>(k)] = c;
        modes[static_cast<size_t>(n - k)] = std::conj(c);
    }
    return PeriodicField::from_modes(std::move(modes), true);
}

double sup_diff(const PeriodicField& a, const PeriodicField& b) {
    double worst = 0.0;
    for (int j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a.at(j) - b.at(j)));
    return worst;
}

}  // namespace

TEST_CASE("spectral differentiation of trigonometric polynomials") {
    const int n = 64;
    const auto cosu = PeriodicField::sample(n, [](double u) { return std::cos(u); });
    const auto msinu = PeriodicField::sample(n, [](double u) { return -std::sin(u); });
    CHECK(sup_diff(differentiate(cosu, 1), msinu) <= 1e-13);

    const auto one = PeriodicField::constant(n, 1.0);
    CHECK(max_abs(differentiate(one, 2)) <= 1e-14);

    const auto sin3 = PeriodicField::sample(n, [](double u) { return std::sin(3 * u); });
    const auto dsin3 = PeriodicField::sample(n, [](double u) { return 3 * std::cos(3 * u); });
    CHECK(sup_diff(differentiate(sin3, 1), dsin3) <= 1e-12);
}

TEST_CASE("shift by phase rotation") {
    const int n = 64;
    const auto cosu = PeriodicField::sample(n, [](double u) { return std::cos(u); });
    const auto msinu = PeriodicField::sample(n, [](double u) { return -std::sin(u); });
    CHECK(sup_diff(shift(cosu, std::numbers::pi / 2), msinu) <= 1e-13);

    std::mt19937 rng(3);
    const auto f = random_band_limited(rng, n);
    CHECK(sup_diff(shift(f, 0.0), f) <= 1e-14);

    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double a = dist(rng), b = dist(rng);
        CHECK(sup_diff(shift(shift(f, a), b), shift(f, a + b)) <= 1e-12);
    }
}

TEST_CASE("derivative commutes with shift and annihilates constants") {
    const int n = 64;
    std::mt19937 rng(5);
    const auto f = random_band_limited(rng, n);
    const double theta = 0.7123;
    CHECK(sup_diff(differentiate(shift(f, theta), 1), shift(differentiate(f, 1), theta)) <= 1e-11);
    CHECK(max_abs(differentiate(PeriodicField::constant(n, 4.2), 1)) <= 1e-14);
}

TEST_CASE("exponential filter") {
    const int n = 64;
    std::mt19937 rng(9);
    const auto f = random_band_limited(rng, n);
    CHECK(sup_diff(filter(f, 0.0), f) == 0.0);

    const auto c = PeriodicField::constant(n, 2.5);
    CHECK(sup_diff(filter(c, 50.0), c) <= 1e-14);

    const int k = n / 2 - 1;
    const auto hi = PeriodicField::sample(n, [&](double u) { return std::sin(k * u); });
    const auto damped = filter(hi, 36.0);
    const double expected = std::exp(-36.0 * std::pow(static_cast<double>(k) / (n / 2), 16));
    CHECK(mode_energy(damped, k) ==
          doctest::Approx(expected * expected * mode_energy(hi, k)).epsilon(1e-10));
}

TEST_CASE("max_abs and mode energy") {
    const int n = 64;
    const auto sinu = PeriodicField::sample(n, [](double u) { return std::sin(u); });
    CHECK(max_abs(sinu) == doctest::Approx(1.0).epsilon(1e-15));
    const auto cos2 = PeriodicField::sample(n, [](double u) { return std::cos(2 * u); });
    CHECK(mode_energy(cos2, 2) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(mode_energy(cos2, 3) <= 1e-26);
}

TEST_CASE("parseval identity") {
    const int n = 64;
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_band_limited(rng, n);
        double grid_energy = 0.0;
        for (int j = 0; j < n; ++j) grid_energy += std::norm(f.at(j));
        grid_energy /= n;
        double mode_sum = 0.0;
        for (int k = 0; k <= n / 2; ++k) mode_sum += mode_energy(f, k);
        CHECK(grid_energy == doctest::Approx(mode_sum).epsilon(1e-12));
    }
}

TEST_CASE("samples -> modes -> samples round trip") {
    const int n = 64;
    std::mt19937 rng(23);
    const auto f = random_band_limited(rng, n);
    const auto back = PeriodicField::from_modes(f.modes(), true);
    CHECK(sup_diff(back, f) <= 1e-12);
    for (int j = 0; j < n; ++j) CHECK(std::abs(back.at(j).imag()) <= 1e-12);
}

TEST_CASE("resampling") {
    const int n = 64;
    const auto cosu = PeriodicField::sample(n, [](double u) { return std::cos(u); });
    bool aliased = true;
    const auto up = resample(cosu, 2 * n, &aliased);
    CHECK(!aliased);
    const auto exact = PeriodicField::sample(2 * n, [](double u) { return std::cos(u); });
    CHECK(sup_diff(up, exact) <= 1e-13);

    // downsampling a high-degree field must flag aliasing
    const auto hi = PeriodicField::sample(n, [](double u) { return std::cos(20 * u); });
    resample(hi, 16, &aliased);
    CHECK(aliased);

    // smooth low-degree content survives downsampling exactly
    const auto low = PeriodicField::sample(n, [](double u) { return 1.0 + std::cos(2 * u); });
    const auto down = resample(low, 16, &aliased);
    CHECK(!aliased);
    const auto low16 = PeriodicField::sample(16, [](double u) { return 1.0 + std::cos(2 * u); });
    CHECK(sup_diff(down, low16) <= 1e-13);
}

TEST_CASE("trigonometric interpolation eval") {
    const int n = 64;
    const auto f = PeriodicField::sample(n, [](double u) { return std::cos(3 * u) - 0.5 * std::sin(u); });
    for (double u : {0.1, 1.7, 4.0, 6.2}) {
        CHECK(f.eval(u).real() ==
              doctest::Approx(std::cos(3 * u) - 0.5 * std::sin(u)).epsilon(1e-12));
    }
}

TEST_CASE("grid size validation") {
    CHECK_THROWS_AS(PeriodicField::constant(63, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicField::constant(4, 1.0), std::invalid_argument);
}

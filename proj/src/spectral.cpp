#include "conemc/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conemc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_grid_size(int n) {
    if (n < 8 || !is_power_of_two(n)) {
        throw std::invalid_argument("grid size must be a power of two >= 8");
    }
}

void fft_radix2(std::vector<cplx>& a, bool inverse) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        for (size_t i = 0; i < n; i += len) {
            for (size_t j = 0; j < len / 2; ++j) {
                const cplx w = std::polar(1.0, ang * static_cast<double>(j));
                const cplx u = a[i + j];
                const cplx t = a[i + j + len / 2] * w;
                a[i + j] = u + t;
                a[i + j + len / 2] = u - t;
            }
        }
    }
}

}  // namespace

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_forward(std::vector<cplx>& a) { fft_radix2(a, false); }
void fft_inverse(std::vector<cplx>& a) { fft_radix2(a, true); }

int fft_wavenumber(int k, int n) { return k <= n / 2 ? k : k - n; }

void apply_derivative_modes(std::vector<cplx>& modes, int order) {
    if (order != 1 && order != 2) {
        throw std::invalid_argument("differentiate: order must be 1 or 2");
    }
    const int n = static_cast<int>(modes.size());
    for (int k = 0; k < n; ++k) {
        const int m = fft_wavenumber(k, n);
        if (order == 1) {
            // odd derivative: the unpaired Nyquist mode is dropped
            if (k == n / 2) {
                modes[static_cast<size_t>(k)] = 0.0;
            } else {
                modes[static_cast<size_t>(k)] *= cplx(0.0, static_cast<double>(m));
            }
        } else {
            modes[static_cast<size_t>(k)] *= -static_cast<double>(m) * static_cast<double>(m);
        }
    }
}

void apply_filter_modes(std::vector<cplx>& modes, double strength) {
    if (strength < 0.0) {
        throw std::invalid_argument("filter: strength must be >= 0");
    }
    if (strength == 0.0) return;
    const int n = static_cast<int>(modes.size());
    const double half = static_cast<double>(n) / 2.0;
    for (int k = 0; k < n; ++k) {
        const double m = std::abs(static_cast<double>(fft_wavenumber(k, n)));
        modes[static_cast<size_t>(k)] *= std::exp(-strength * std::pow(m / half, 16));
    }
}

void apply_shift_modes(std::vector<cplx>& modes, double theta) {
    const int n = static_cast<int>(modes.size());
    for (int k = 0; k < n; ++k) {
        const int m = fft_wavenumber(k, n);
        if (k == n / 2) {
            // symmetric +-Nyquist split keeps real fields real
            modes[static_cast<size_t>(k)] *= std::cos(static_cast<double>(m) * theta);
        } else {
            modes[static_cast<size_t>(k)] *= std::polar(1.0, static_cast<double>(m) * theta);
        }
    }
}

PeriodicField::PeriodicField(std::vector<double> samples) : real_tag_(true) {
    check_grid_size(static_cast<int>(samples.size()));
    samples_.reserve(samples.size());
    for (double v : samples) samples_.emplace_back(v, 0.0);
}

PeriodicField::PeriodicField(std::vector<cplx> samples, bool real_tag)
    : samples_(std::move(samples)), real_tag_(real_tag) {
    check_grid_size(static_cast<int>(samples_.size()));
    if (real_tag_) {
        for (auto& s : samples_) s = cplx(s.real(), 0.0);
    }
}

PeriodicField PeriodicField::constant(int n, double value) {
    check_grid_size(n);
    return PeriodicField(std::vector<double>(static_cast<size_t>(n), value));
}

PeriodicField PeriodicField::sample(int n, const std::function<double(double)>& f) {
    check_grid_size(n);
    std::vector<double> s(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] = f(kTwoPi * j / n);
    return PeriodicField(std::move(s));
}

PeriodicField PeriodicField::sample_complex(int n, const std::function<cplx(double)>& f) {
    check_grid_size(n);
    std::vector<cplx> s(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] = f(kTwoPi * j / n);
    return PeriodicField(std::move(s), false);
}

PeriodicField PeriodicField::from_modes(std::vector<cplx> modes, bool real_tag) {
    check_grid_size(static_cast<int>(modes.size()));
    fft_inverse(modes);
    return PeriodicField(std::move(modes), real_tag);
}

double PeriodicField::node(int j) const { return kTwoPi * j / size(); }

std::vector<double> PeriodicField::real_samples() const {
    std::vector<double> out(samples_.size());
    for (size_t j = 0; j < samples_.size(); ++j) out[j] = samples_[j].real();
    return out;
}

std::vector<cplx> PeriodicField::modes() const {
    std::vector<cplx> m = samples_;
    fft_forward(m);
    const double inv = 1.0 / static_cast<double>(m.size());
    for (auto& c : m) c *= inv;
    return m;
}

cplx PeriodicField::eval(double u) const {
    const std::vector<cplx> m = modes();
    const int n = size();
    cplx acc = m[0];
    for (int k = 1; k < n; ++k) {
        const int w = fft_wavenumber(k, n);
        if (k == n / 2) {
            acc += m[static_cast<size_t>(k)] * std::cos(static_cast<double>(n / 2) * u);
        } else {
            acc += m[static_cast<size_t>(k)] * std::polar(1.0, static_cast<double>(w) * u);
        }
    }
    return acc;
}

namespace {

PeriodicField map_modes(const PeriodicField& f, const std::function<void(std::vector<cplx>&)>& op) {
    std::vector<cplx> m = f.samples();
    fft_forward(m);
    op(m);
    fft_inverse(m);
    const double inv = 1.0 / static_cast<double>(m.size());
    for (auto& c : m) c *= inv;
    return PeriodicField(std::move(m), f.is_real());
}

}  // namespace

PeriodicField differentiate(const PeriodicField& f, int order) {
    return map_modes(f, [order](std::vector<cplx>& m) { apply_derivative_modes(m, order); });
}

PeriodicField shift(const PeriodicField& f, double theta) {
    return map_modes(f, [theta](std::vector<cplx>& m) { apply_shift_modes(m, theta); });
}

PeriodicField filter(const PeriodicField& f, double strength) {
    if (strength < 0.0) throw std::invalid_argument("filter: strength must be >= 0");
    if (strength == 0.0) return f;
    return map_modes(f, [strength](std::vector<cplx>& m) { apply_filter_modes(m, strength); });
}

double max_abs(const PeriodicField& f) {
    double m = 0.0;
    for (const auto& s : f.samples()) m = std::max(m, std::abs(s));
    return m;
}

double mode_energy(const PeriodicField& f, int k) {
    const int n = f.size();
    if (k < 0 || k > n / 2) {
        throw std::invalid_argument("mode_energy: k must be in [0, n/2]");
    }
    const std::vector<cplx> m = f.modes();
    if (k == 0) return std::norm(m[0]);
    if (k == n / 2) return std::norm(m[static_cast<size_t>(n / 2)]);
    return std::norm(m[static_cast<size_t>(k)]) + std::norm(m[static_cast<size_t>(n - k)]);
}

PeriodicField resample(const PeriodicField& f, int m, bool* aliased) {
    check_grid_size(m);
    const int n = f.size();
    const std::vector<cplx> src = f.modes();
    if (aliased) *aliased = false;

    if (m == n) return f;

    std::vector<cplx> dst(static_cast<size_t>(m), cplx(0.0, 0.0));
    if (m > n) {
        for (int k = 0; k < n; ++k) {
            const int w = fft_wavenumber(k, n);
            if (k == n / 2) {
                // split the old Nyquist cosine across +-n/2
                dst[static_cast<size_t>(n / 2)] += 0.5 * src[static_cast<size_t>(k)];
                dst[static_cast<size_t>(m - n / 2)] += 0.5 * src[static_cast<size_t>(k)];
            } else {
                dst[static_cast<size_t>(w >= 0 ? w : m + w)] = src[static_cast<size_t>(k)];
            }
        }
    } else {
        const double floor_scale = 1e-13 * std::max(1.0, max_abs(f));
        for (int k = 0; k < n; ++k) {
            const int w = fft_wavenumber(k, n);
            if (std::abs(w) < m / 2) {
                dst[static_cast<size_t>(w >= 0 ? w : m + w)] = src[static_cast<size_t>(k)];
            } else if (std::abs(w) == m / 2) {
                // the new Nyquist bin collects both old +-m/2 modes
                dst[static_cast<size_t>(m / 2)] += src[static_cast<size_t>(k)];
            } else if (std::abs(src[static_cast<size_t>(k)]) > floor_scale) {
                if (aliased) *aliased = true;
            }
        }
    }
    return PeriodicField::from_modes(std::move(dst), f.is_real());
}

}  // namespace conemc

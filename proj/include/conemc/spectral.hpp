#pragma once

// 2pi-periodic scalar fields sampled on a uniform grid u_j = 2*pi*j/n with
// spectral differentiation, phase shifting, exponential high-mode filtering
// and trigonometric resampling. Grid sizes are powers of two, n >= 8.
//
// Mode convention: modes()[k] = (1/n) sum_j f_j exp(-i k u_j) in standard FFT
// index order (k = 0..n/2 then -n/2+1..-1). First derivatives zero the
// Nyquist mode; shifts treat it symmetrically (cos(k*theta)) so real fields
// stay real.

#include <complex>
#include <functional>
#include <vector>

namespace conemc {

using cplx = std::complex<double>;

bool is_power_of_two(int n);

// In-place unnormalized transforms: forward uses exp(-i...), inverse exp(+i...).
void fft_forward(std::vector<cplx>& a);
void fft_inverse(std::vector<cplx>& a);

// Signed wavenumber of FFT index k for grid size n (index n/2 -> -n/2).
int fft_wavenumber(int k, int n);

// Mode-space multipliers shared by the field ops and the solver kernels.
void apply_derivative_modes(std::vector<cplx>& modes, int order);
void apply_filter_modes(std::vector<cplx>& modes, double strength);
void apply_shift_modes(std::vector<cplx>& modes, double theta);

class PeriodicField {
  public:
    PeriodicField() = default;
    explicit PeriodicField(std::vector<double> samples);
    explicit PeriodicField(std::vector<cplx> samples, bool real_tag = false);

    static PeriodicField constant(int n, double value);
    static PeriodicField sample(int n, const std::function<double(double)>& f);
    static PeriodicField sample_complex(int n, const std::function<cplx(double)>& f);
    static PeriodicField from_modes(std::vector<cplx> modes, bool real_tag);

    int size() const { return static_cast<int>(samples_.size()); }
    bool is_real() const { return real_tag_; }
    double node(int j) const;  // u_j = 2*pi*j/n

    const std::vector<cplx>& samples() const { return samples_; }
    cplx at(int j) const { return samples_[static_cast<size_t>(j)]; }
    double real_at(int j) const { return samples_[static_cast<size_t>(j)].real(); }
    std::vector<double> real_samples() const;

    std::vector<cplx> modes() const;

    // Trigonometric interpolation at an arbitrary point (O(n) per call).
    cplx eval(double u) const;

  private:
    std::vector<cplx> samples_;
    bool real_tag_ = false;
};

PeriodicField differentiate(const PeriodicField& f, int order);
PeriodicField shift(const PeriodicField& f, double theta);
PeriodicField filter(const PeriodicField& f, double strength);
double max_abs(const PeriodicField& f);
// |c_k|^2 + |c_-k|^2 for 0 < k < n/2; |c_0|^2 at k = 0; |c_{n/2}|^2 at Nyquist.
double mode_energy(const PeriodicField& f, int k);
// Trigonometric interpolation onto m nodes; sets *aliased when m is too small
// to represent the field's significant modes.
PeriodicField resample(const PeriodicField& f, int m, bool* aliased = nullptr);

}  // namespace conemc

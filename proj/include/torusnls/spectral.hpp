#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace torusnls {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

// Complex-valued function on the uniform torus grid x_j = -pi + 2*pi*j/n
// (n a power of two, n >= 8), carried together with its Fourier
// coefficient view under the normalized convention
//   fhat(k) = (1/2pi) int f(x) e^{-ikx} dx.
// Coefficients are stored in FFT index order: index m holds mode
// k = m for m <= n/2 and k = m - n otherwise.
class GridFunction {
public:
    GridFunction() = default;

    static GridFunction from_values(ComplexVector values);
    static GridFunction from_coeffs(ComplexVector coeffs);
    static GridFunction zero(int n);
    // f(x) = c * e^{ikx}
    static GridFunction harmonic(int n, int k, Complex c = 1.0);
    static GridFunction sample(int n, const std::function<Complex(double)>& f);

    int size() const { return static_cast<int>(values_.size()); }
    double x(int j) const { return -M_PI + 2.0 * M_PI * j / size(); }

    const ComplexVector& values() const { return values_; }
    const ComplexVector& coeffs() const { return coeffs_; }

    // Mode index for wavenumber k in (-n/2, n/2].
    int mode_index(int k) const {
        int n = size();
        return ((k % n) + n) % n;
    }
    int wavenumber(int m) const {
        int n = size();
        return m <= n / 2 ? m : m - n;
    }
    Complex coeff(int k) const { return coeffs_[mode_index(k)]; }

    GridFunction conjugate() const;

    friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator*(Complex c, const GridFunction& f);

private:
    ComplexVector values_;
    ComplexVector coeffs_;
};

enum class Projection { P0, Pneq0, Pplus, Pminus };

// Applies a Fourier multiplier k -> symbol(k); the Nyquist mode k = n/2
// is zeroed afterwards.
GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<Complex(int)>& symbol);

// Spectral d/dx (order-th derivative).
GridFunction derivative(const GridFunction& f, int order = 1);
// dx^{-1}: symbol 1/(ik) on k != 0, zero mode dropped.
GridFunction inverse_derivative(const GridFunction& f);
// <dx>^s with <k> = sqrt(1+k^2).
GridFunction bessel_potential(const GridFunction& f, double s);

// Normalized mean (1/2pi) int f dx = fhat(0).
Complex mean(const GridFunction& f);

Complex project_P0(const GridFunction& f);
GridFunction project(const GridFunction& f, Projection which);

// H^s norm (sum_k <k>^{2s} |fhat(k)|^2)^{1/2}.
double sobolev_norm(const GridFunction& f, double s);
// L^2 inner product (f, g) = int f conj(g) dx = sum_k fhat conj(ghat).
Complex l2_inner(const GridFunction& f, const GridFunction& g);

// Frequency truncation to |k| <= N.
GridFunction truncate(const GridFunction& f, int N);

// Alias-free pointwise product of the given factors: all factors are
// zero-padded to a grid of size >= (degree+1)/2 * n, multiplied there,
// and truncated back. degree must equal the number of factors; the
// empty product is the constant 1 on a grid of size n_if_empty.
GridFunction dealias_product(const std::vector<GridFunction>& factors, int degree,
                             int n_if_empty = 0);

enum class RoughSide { Plus, Minus, Both };

// base + amplitude * sum over dyadic k <= n/2 of k^{-s-delta} times the
// selected exponentials e^{+-ikx}; H^s-bounded tail whose discrete
// H^{s+delta} norm grows with n.
GridFunction make_rough_data(double s, double delta, RoughSide side,
                             const GridFunction& base, double amplitude);

// Snapshot persistence: little-endian header (uint64 n, float64 time)
// followed by n interleaved float64 (re, im) coefficient pairs in FFT
// index order; CSV export as (k, re, im) rows.
void write_binary(const std::string& path, const GridFunction& f, double time);
GridFunction read_binary(const std::string& path, double* time_out = nullptr);
void write_csv(const std::string& path, const GridFunction& f);

namespace detail {
// In-place radix-2 FFT, sign = -1 forward / +1 inverse (unscaled).
void fft_pow2(ComplexVector& a, int sign);
bool is_pow2(int n);
}  // namespace detail

}  // namespace torusnls

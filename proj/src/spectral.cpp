#include "torusnls/spectral.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace torusnls {

namespace detail {

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

void fft_pow2(ComplexVector& a, int sign) {
    const int n = static_cast<int>(a.size());
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: size must be a power of two");
    // bit-reversal permutation
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / len;
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (int j = 0; j < len / 2; ++j) {
                Complex u = a[i + j];
                Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace detail

namespace {

void check_grid(int n) {
    if (n < 8 || !detail::is_pow2(n))
        throw std::invalid_argument("GridFunction: grid size must be a power of two >= 8");
}

// Alternating sign (-1)^k accounts for the grid offset x_0 = -pi.
double mode_sign(int m, int n) {
    int k = m <= n / 2 ? m : m - n;
    return (k & 1) ? -1.0 : 1.0;
}

}  // namespace

GridFunction GridFunction::from_values(ComplexVector values) {
    const int n = static_cast<int>(values.size());
    check_grid(n);
    GridFunction f;
    f.coeffs_ = values;
    detail::fft_pow2(f.coeffs_, -1);
    for (int m = 0; m < n; ++m) f.coeffs_[m] *= mode_sign(m, n) / n;
    f.values_ = std::move(values);
    return f;
}

GridFunction GridFunction::from_coeffs(ComplexVector coeffs) {
    const int n = static_cast<int>(coeffs.size());
    check_grid(n);
    GridFunction f;
    f.values_ = coeffs;
    for (int m = 0; m < n; ++m) f.values_[m] *= mode_sign(m, n);
    detail::fft_pow2(f.values_, +1);
    f.coeffs_ = std::move(coeffs);
    return f;
}

GridFunction GridFunction::zero(int n) {
    check_grid(n);
    return from_coeffs(ComplexVector::Zero(n));
}

GridFunction GridFunction::harmonic(int n, int k, Complex c) {
    check_grid(n);
    ComplexVector coeffs = ComplexVector::Zero(n);
    coeffs[((k % n) + n) % n] = c;
    return from_coeffs(std::move(coeffs));
}

GridFunction GridFunction::sample(int n, const std::function<Complex(double)>& f) {
    check_grid(n);
    ComplexVector v(n);
    for (int j = 0; j < n; ++j) v[j] = f(-M_PI + 2.0 * M_PI * j / n);
    return from_values(std::move(v));
}

GridFunction GridFunction::conjugate() const {
    return from_values(values_.conjugate());
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    return GridFunction::from_coeffs(a.coeffs_ + b.coeffs_);
}
GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    return GridFunction::from_coeffs(a.coeffs_ - b.coeffs_);
}
GridFunction operator*(Complex c, const GridFunction& f) {
    return GridFunction::from_coeffs(c * f.coeffs_);
}

GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<Complex(int)>& symbol) {
    const int n = f.size();
    ComplexVector c = f.coeffs();
    for (int m = 0; m < n; ++m) c[m] *= symbol(f.wavenumber(m));
    c[n / 2] = 0.0;
    return GridFunction::from_coeffs(std::move(c));
}

GridFunction derivative(const GridFunction& f, int order) {
    return apply_multiplier(f, [order](int k) {
        Complex ik(0.0, static_cast<double>(k));
        Complex r = 1.0;
        for (int j = 0; j < order; ++j) r *= ik;
        return r;
    });
}

GridFunction inverse_derivative(const GridFunction& f) {
    return apply_multiplier(f, [](int k) {
        return k == 0 ? Complex(0.0) : 1.0 / Complex(0.0, static_cast<double>(k));
    });
}

GridFunction bessel_potential(const GridFunction& f, double s) {
    return apply_multiplier(f, [s](int k) {
        return Complex(std::pow(1.0 + static_cast<double>(k) * k, 0.5 * s));
    });
}

Complex mean(const GridFunction& f) { return f.coeffs()[0]; }
Complex project_P0(const GridFunction& f) { return f.coeffs()[0]; }

GridFunction project(const GridFunction& f, Projection which) {
    const int n = f.size();
    ComplexVector c = f.coeffs();
    switch (which) {
        case Projection::P0:
            for (int m = 1; m < n; ++m) c[m] = 0.0;
            break;
        case Projection::Pneq0:
            c[0] = 0.0;
            break;
        case Projection::Pplus:
            c[0] = 0.0;
            for (int m = 0; m < n; ++m)
                if (f.wavenumber(m) < 0) c[m] = 0.0;
            break;
        case Projection::Pminus:
            c[0] = 0.0;
            for (int m = 0; m < n; ++m)
                if (f.wavenumber(m) > 0) c[m] = 0.0;
            break;
    }
    return GridFunction::from_coeffs(std::move(c));
}

double sobolev_norm(const GridFunction& f, double s) {
    if (!std::isfinite(s)) throw std::invalid_argument("sobolev_norm: s must be finite");
    double acc = 0.0;
    const int n = f.size();
    for (int m = 0; m < n; ++m) {
        double k = f.wavenumber(m);
        acc += std::pow(1.0 + k * k, s) * std::norm(f.coeffs()[m]);
    }
    return std::sqrt(acc);
}

Complex l2_inner(const GridFunction& f, const GridFunction& g) {
    return (f.coeffs().array() * g.coeffs().array().conjugate()).sum();
}

GridFunction truncate(const GridFunction& f, int N) {
    if (N > f.size() / 2) throw std::invalid_argument("truncate: N exceeds n/2");
    const int n = f.size();
    ComplexVector c = f.coeffs();
    for (int m = 0; m < n; ++m)
        if (std::abs(f.wavenumber(m)) > N) c[m] = 0.0;
    return GridFunction::from_coeffs(std::move(c));
}

GridFunction dealias_product(const std::vector<GridFunction>& factors, int degree,
                             int n_if_empty) {
    if (degree != static_cast<int>(factors.size()))
        throw std::invalid_argument("dealias_product: degree must equal factor count");
    if (factors.empty()) {
        GridFunction one = GridFunction::zero(n_if_empty);
        ComplexVector c = one.coeffs();
        c[0] = 1.0;
        return GridFunction::from_coeffs(std::move(c));
    }

    const int n = factors.front().size();
    int m = n;
    while (2 * m < (degree + 1) * n) m <<= 1;  // m >= (degree+1)/2 * n

    // zero-pad each factor to the working grid
    ComplexVector prod = ComplexVector::Ones(m);
    for (const auto& f : factors) {
        if (f.size() != n)
            throw std::invalid_argument("dealias_product: mismatched grid sizes");
        ComplexVector cpad = ComplexVector::Zero(m);
        for (int idx = 0; idx < n; ++idx) {
            int k = f.wavenumber(idx);
            if (k == n / 2) continue;  // Nyquist dropped when upsampling
            cpad[((k % m) + m) % m] = f.coeffs()[idx];
        }
        prod.array() *= GridFunction::from_coeffs(std::move(cpad)).values().array();
    }

    GridFunction big = GridFunction::from_values(std::move(prod));
    ComplexVector out = ComplexVector::Zero(n);
    for (int idx = 0; idx < n; ++idx) {
        int k = idx <= n / 2 ? idx : idx - n;
        out[idx] = big.coeff(k);
    }
    out[n / 2] = 0.0;
    return GridFunction::from_coeffs(std::move(out));
}

GridFunction make_rough_data(double s, double delta, RoughSide side,
                             const GridFunction& base, double amplitude) {
    const int n = base.size();
    ComplexVector c = base.coeffs();
    for (int k = 2; k <= n / 2; k *= 2) {
        const double a = amplitude * std::pow(static_cast<double>(k), -s - delta);
        if (side != RoughSide::Minus) c[k] += a;
        if (side != RoughSide::Plus) c[((-k % n) + n) % n] += a;
    }
    return GridFunction::from_coeffs(std::move(c));
}

void write_binary(const std::string& path, const GridFunction& f, double time) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_binary: cannot open " + path);
    const std::uint64_t n = static_cast<std::uint64_t>(f.size());
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&time), sizeof time);
    for (int m = 0; m < f.size(); ++m) {
        double re = f.coeffs()[m].real(), im = f.coeffs()[m].imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof re);
        out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
    if (!out) throw std::runtime_error("write_binary: write failed for " + path);
}

GridFunction read_binary(const std::string& path, double* time_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_binary: cannot open " + path);
    std::uint64_t n = 0;
    double time = 0.0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&time), sizeof time);
    ComplexVector c(static_cast<int>(n));
    for (std::uint64_t m = 0; m < n; ++m) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char*>(&re), sizeof re);
        in.read(reinterpret_cast<char*>(&im), sizeof im);
        c[static_cast<int>(m)] = Complex(re, im);
    }
    if (!in) throw std::runtime_error("read_binary: truncated file " + path);
    if (time_out) *time_out = time;
    return GridFunction::from_coeffs(std::move(c));
}

void write_csv(const std::string& path, const GridFunction& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << "k,re,im\n";
    out.precision(17);
    const int n = f.size();
    for (int k = -n / 2 + 1; k <= n / 2; ++k)
        out << k << "," << f.coeff(k).real() << "," << f.coeff(k).imag() << "\n";
}

}  // namespace torusnls

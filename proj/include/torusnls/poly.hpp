#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>

#include "torusnls/rational.hpp"

namespace torusnls {

// Sparse polynomial in N formal variables with exact Gaussian-rational
// coefficients. Terms map a unique exponent tuple to a nonzero
// coefficient; all ring operations are exact.
template <int N>
class SparsePoly {
public:
    using Exponents = std::array<int, N>;
    using TermMap = std::map<Exponents, GaussianRational>;

    SparsePoly() = default;
    explicit SparsePoly(GaussianRational c) { add_term(Exponents{}, c); }

    static SparsePoly monomial(const Exponents& e, GaussianRational c = GaussianRational(1)) {
        SparsePoly p;
        p.add_term(e, c);
        return p;
    }
    static SparsePoly variable(int idx) {
        Exponents e{};
        e[idx] = 1;
        return monomial(e);
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GaussianRational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussianRational() : it->second;
    }
    GaussianRational constant_term() const { return coefficient(Exponents{}); }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int k : e) s += k;
            d = std::max(d, s);
        }
        return d;
    }
    int degree_in(int var) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    void add_term(const Exponents& e, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    SparsePoly operator-() const { return SparsePoly() - *this; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (int i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend SparsePoly operator*(const GaussianRational& c, const SparsePoly& p) {
        SparsePoly r;
        for (const auto& [e, pc] : p.terms_) r.add_term(e, c * pc);
        return r;
    }

    SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
    SparsePoly& operator-=(const SparsePoly& o) { return *this = *this - o; }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.terms_ == b.terms_;
    }

    // Formal partial derivative in one variable.
    SparsePoly derivative(int var) const {
        SparsePoly r;
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            r.add_term(d, GaussianRational(Rational(e[var])) * c);
        }
        return r;
    }

    // Horner-free pointwise evaluation; powers by repeated multiplication.
    std::complex<double> evaluate(const std::array<std::complex<double>, N>& point) const {
        std::complex<double> acc = 0.0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (int i = 0; i < N; ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    std::string str(const std::array<std::string, N>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += c.str();
            for (int i = 0; i < N; ++i) {
                if (e[i] == 0) continue;
                out += "*" + names[i];
                if (e[i] > 1) out += "^" + std::to_string(e[i]);
            }
        }
        return out;
    }

private:
    TermMap terms_;
};

// Polynomial nonlinearity F in the four formal variables
// (alpha, beta, conj alpha, conj beta) = (u, u_x, conj u, conj u_x).
using ComplexPolynomial4 = SparsePoly<4>;

// Same representation read as a first-order differential density
// G(psi, psi_x, conj psi, conj psi_x).
using DifferentialDensity = SparsePoly<4>;

// Second-order jet polynomial: variables
// (psi, psi_x, conj psi, conj psi_x, psi_xx, conj psi_xx).
using JetPoly = SparsePoly<6>;

// Variable indices for the four-variable polynomials.
namespace var {
inline constexpr int alpha = 0;       // u  / psi
inline constexpr int beta = 1;        // u_x / psi_x
inline constexpr int alpha_bar = 2;   // conj u / conj psi
inline constexpr int beta_bar = 3;    // conj u_x / conj psi_x
}  // namespace var

// Formal Wirtinger derivative; for a polynomial in the four formal
// variables this is the plain partial derivative in that variable.
inline ComplexPolynomial4 wirtinger_derivative(const ComplexPolynomial4& p, int v) {
    return p.derivative(v);
}

// Formal complex conjugation: conjugate every coefficient and swap
// alpha <-> conj alpha, beta <-> conj beta. An involution.
inline ComplexPolynomial4 conjugate_poly(const ComplexPolynomial4& p) {
    ComplexPolynomial4 r;
    for (const auto& [e, c] : p.terms())
        r.add_term({e[var::alpha_bar], e[var::beta_bar], e[var::alpha], e[var::beta]}, c.conj());
    return r;
}

// Im p = (p - conj p) / (2i) as a differential density; real-valued at
// every conjugate-consistent point.
inline DifferentialDensity im_part(const ComplexPolynomial4& p) {
    GaussianRational inv_2i(Rational(0), Rational(-1, 2));  // 1/(2i) = -i/2
    return inv_2i * (p - conjugate_poly(p));
}

inline std::complex<double> evaluate(const ComplexPolynomial4& p,
                                     const std::array<std::complex<double>, 4>& point) {
    return p.evaluate(point);
}

inline std::string to_string(const ComplexPolynomial4& p) {
    return p.str({"u", "ux", "uc", "uxc"});
}

}  // namespace torusnls

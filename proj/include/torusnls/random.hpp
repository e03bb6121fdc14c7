#pragma once

#include <cstdint>
#include <random>

#include "torusnls/spectral.hpp"

namespace torusnls {

// Thin RNG wrapper; distributions are hand-rolled on top of mt19937_64
// so that a seed pins the sample stream independently of the standard
// library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int a, int b) {  // inclusive
        return a + static_cast<int>(uniform() * (b - a + 1));
    }
    Complex unit_phase() {
        double t = uniform(0.0, 2.0 * M_PI);
        return {std::cos(t), std::sin(t)};
    }

private:
    std::mt19937_64 gen_;
};

// Random trigonometric polynomial with |fhat(k)| = <k>^{-p} (1 + U[0,1])
// and uniform random phases on |k| <= max_degree.
inline GridFunction random_trig_poly(Rng& rng, int n, int max_degree, double p) {
    ComplexVector c = ComplexVector::Zero(n);
    for (int k = -max_degree; k <= max_degree; ++k) {
        double mag = std::pow(1.0 + static_cast<double>(k) * k, -0.5 * p) * (1.0 + rng.uniform());
        c[((k % n) + n) % n] = mag * rng.unit_phase();
    }
    return GridFunction::from_coeffs(std::move(c));
}

}  // namespace torusnls

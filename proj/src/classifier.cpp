#include "torusnls/classifier.hpp"

#include <cmath>
#include <vector>

#include <json.hpp>

#include "torusnls/errors.hpp"
#include "torusnls/random.hpp"

namespace torusnls {

namespace {

constexpr double kWitnessThreshold = 1e-6;

JetPoly jet_variable(int idx) { return JetPoly::variable(idx); }

}  // namespace

JetPoly lift(const DifferentialDensity& p) {
    JetPoly r;
    for (const auto& [e, c] : p.terms()) r.add_term({e[0], e[1], e[2], e[3], 0, 0}, c);
    return r;
}

JetPoly total_derivative(const DifferentialDensity& p) {
    // psi' = psi_x, psi_x' = psi_xx, and conjugates
    JetPoly r;
    r += lift(p.derivative(var::alpha)) * jet_variable(var::beta);
    r += lift(p.derivative(var::beta)) * jet_variable(jet::psi_xx);
    r += lift(p.derivative(var::alpha_bar)) * jet_variable(var::beta_bar);
    r += lift(p.derivative(var::beta_bar)) * jet_variable(jet::psi_bar_xx);
    return r;
}

DifferentialDensity total_derivative_zeroth(const DifferentialDensity& p) {
    if (p.degree_in(var::beta) != 0 || p.degree_in(var::beta_bar) != 0)
        throw std::invalid_argument("total_derivative_zeroth: input depends on psi_x");
    DifferentialDensity r;
    r += p.derivative(var::alpha) * DifferentialDensity::variable(var::beta);
    r += p.derivative(var::alpha_bar) * DifferentialDensity::variable(var::beta_bar);
    return r;
}

std::pair<JetPoly, JetPoly> euler_operator(const DifferentialDensity& g) {
    JetPoly e_psi = lift(g.derivative(var::alpha)) - total_derivative(g.derivative(var::beta));
    JetPoly e_psi_bar =
        lift(g.derivative(var::alpha_bar)) - total_derivative(g.derivative(var::beta_bar));
    return {e_psi, e_psi_bar};
}

double mizohata_functional(const ComplexPolynomial4& F, const GridFunction& psi) {
    if (psi.size() < 4) throw std::invalid_argument("mizohata_functional: need >= 4 grid points");
    if (!psi.values().allFinite())
        throw std::invalid_argument("mizohata_functional: non-finite input");
    const ComplexPolynomial4 f_beta = wirtinger_derivative(F, var::beta);
    const GridFunction psi_x = derivative(psi);
    double acc = 0.0;
    const int n = psi.size();
    for (int j = 0; j < n; ++j) {
        Complex z = psi.values()[j], zx = psi_x.values()[j];
        acc += f_beta.evaluate({z, zx, std::conj(z), std::conj(zx)}).imag();
    }
    return acc / n;
}

DifferentialDensity construct_potential(const DifferentialDensity& g) {
    if (!g.constant_term().is_zero())
        throw PreconditionViolated("construct_potential: nonzero constant term");
    DifferentialDensity phi;
    for (int v : {var::beta, var::beta_bar}) {
        const DifferentialDensity h = g.derivative(v);
        const int bump = (v == var::beta) ? var::alpha : var::alpha_bar;
        for (const auto& [e, c] : h.terms()) {
            int scaled_degree = e[0] + e[1] + e[2] + e[3];
            auto exps = e;
            exps[bump] += 1;
            phi.add_term(exps, c / Rational(scaled_degree + 1));
        }
    }
    if (phi.degree_in(var::beta) != 0 || phi.degree_in(var::beta_bar) != 0)
        throw ExactnessViolation("construct_potential: homotopy produced psi_x dependence");
    if (!(total_derivative_zeroth(phi) == g))
        throw ExactnessViolation("construct_potential: D_x(Phi) != G");
    return phi;
}

namespace {

// Gaussian-integer search order: 0, 1, -1, i, -i, 1+i, ... by increasing
// |p|+|q|, reals first.
std::vector<GaussianRational> constant_lattice(int radius) {
    std::vector<std::array<int, 2>> pts;
    for (int p = -radius; p <= radius; ++p)
        for (int q = -radius; q <= radius; ++q) pts.push_back({p, q});
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        auto key = [](const std::array<int, 2>& v) {
            return std::tuple(std::abs(v[0]) + std::abs(v[1]), std::abs(v[1]), -v[0], -v[1]);
        };
        return key(a) < key(b);
    });
    std::vector<GaussianRational> out;
    for (const auto& [p, q] : pts) out.emplace_back(Rational(p), Rational(q));
    // half-integer refinement pass
    for (const auto& [p, q] : pts)
        if (p != 0 || q != 0) out.emplace_back(Rational(p, 2), Rational(q, 2));
    return out;
}

GridFunction constant_grid(int n, Complex c) {
    ComplexVector coeffs = ComplexVector::Zero(n);
    coeffs[0] = c;
    return GridFunction::from_coeffs(std::move(coeffs));
}

std::string complex_str(Complex z) {
    std::string s = std::to_string(z.real());
    s += (z.imag() < 0 ? " - " : " + ") + std::to_string(std::abs(z.imag())) + "i";
    return s;
}

}  // namespace

Witness find_witness(const ComplexPolynomial4& F, std::uint64_t seed, int grid_size,
                     double* m_out) {
    // stage 1: constants
    for (const auto& c : constant_lattice(4)) {
        GridFunction psi = constant_grid(grid_size, c.to_complex());
        double m = mizohata_functional(F, psi);
        if (std::abs(m) > kWitnessThreshold) {
            if (m_out) *m_out = m;
            return {"psi(x) = " + c.str(), psi};
        }
    }
    // stage 2: c0 + c1 e^{ix} + c2 e^{-ix} over a small lattice
    std::vector<Complex> small = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0.5, 0}, {0, 0.5}};
    for (Complex c0 : small)
        for (Complex c1 : small)
            for (Complex c2 : small) {
                ComplexVector coeffs = ComplexVector::Zero(grid_size);
                coeffs[0] = c0;
                coeffs[1] = c1;
                coeffs[grid_size - 1] = c2;
                GridFunction psi = GridFunction::from_coeffs(std::move(coeffs));
                double m = mizohata_functional(F, psi);
                if (std::abs(m) > kWitnessThreshold) {
                    if (m_out) *m_out = m;
                    return {"psi(x) = " + complex_str(c0) + " + (" + complex_str(c1) +
                                ")e^{ix} + (" + complex_str(c2) + ")e^{-ix}",
                            psi};
                }
            }
    // stage 3: seeded random trigonometric polynomials of degree <= 8
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int trial = 0; trial < 500; ++trial) {
        GridFunction psi = random_trig_poly(rng, grid_size, 8, 1.5);
        double m = mizohata_functional(F, psi);
        if (std::abs(m) > kWitnessThreshold) {
            if (m_out) *m_out = m;
            return {"random trigonometric polynomial (degree 8, seed " + std::to_string(seed) +
                        ", trial " + std::to_string(trial) + ")",
                    psi};
        }
    }
    throw WitnessNotFound("find_witness: exact Euler test failed but no witness found");
}

ClassificationVerdict decide(const ComplexPolynomial4& F, std::uint64_t seed, int grid_size) {
    const ComplexPolynomial4 f_beta = wirtinger_derivative(F, var::beta);
    const DifferentialDensity g = im_part(f_beta);
    const auto [e_psi, e_psi_bar] = euler_operator(g);

    ClassificationVerdict v;
    v.seed = seed;
    if (e_psi.is_zero() && e_psi_bar.is_zero() && g.constant_term().is_zero()) {
        v.status = ClassificationVerdict::Status::WellPosed;
        v.potential = construct_potential(g);
        v.mizohata_value_at_witness = 0.0;
    } else {
        v.status = ClassificationVerdict::Status::IllPosed;
        double m = 0.0;
        v.witness = find_witness(F, seed, grid_size, &m);
        v.mizohata_value_at_witness = m;
    }
    return v;
}

nlohmann::json poly_to_json(const ComplexPolynomial4& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"exponents", {e[0], e[1], e[2], e[3]}},
                         {"re", c.real().str()},
                         {"im", c.imag().str()}});
    return terms;
}

nlohmann::json verdict_to_json(const ClassificationVerdict& v) {
    nlohmann::json j;
    j["status"] = v.well_posed() ? "WellPosed" : "IllPosed";
    j["seed"] = v.seed;
    j["mizohata_value_at_witness"] = v.mizohata_value_at_witness;
    if (v.potential) j["potential"] = poly_to_json(*v.potential);
    if (v.witness) j["witness"] = {{"description", v.witness->description}};
    return j;
}

}  // namespace torusnls

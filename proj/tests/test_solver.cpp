#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "torusnls/errors.hpp"
#include "torusnls/random.hpp"
#include "torusnls/solver.hpp"

using namespace torusnls;

namespace {

ComplexPolynomial4 mono(int a, int b, int ab, int bb, GaussianRational c = GaussianRational(1)) {
    return ComplexPolynomial4::monomial({a, b, ab, bb}, c);
}

double sup_diff(const GridFunction& a, const GridFunction& b, double s) {
    return sobolev_norm(a - b, s);
}

}  // namespace

TEST_CASE("pointwise nonlinearity on pure modes") {
    auto u = GridFunction::harmonic(64, 1);

    // F = ux
    auto f1 = nonlinearity_apply(mono(0, 1, 0, 0), u);
    CHECK(sup_diff(f1, GridFunction::harmonic(64, 1, Complex(0, 1)), 0.0) < 1e-12);

    // F = 2 uc uxc: 2 conj(u) conj(ux) = -2i e^{-2ix}
    auto f2 = nonlinearity_apply(mono(0, 0, 1, 1, GaussianRational(2)), u);
    CHECK(sup_diff(f2, GridFunction::harmonic(64, -2, Complex(0, -2)), 0.0) < 1e-12);

    // F = u ux at 1 + e^{ix}: i e^{ix} + i e^{2ix}
    auto v = GridFunction::harmonic(64, 0) + GridFunction::harmonic(64, 1);
    auto f3 = nonlinearity_apply(mono(1, 1, 0, 0), v);
    auto expect = GridFunction::harmonic(64, 1, Complex(0, 1)) +
                  GridFunction::harmonic(64, 2, Complex(0, 1));
    CHECK(sup_diff(f3, expect, 0.0) < 1e-12);
}

TEST_CASE("nonlinearity expansion agrees with a symbolic convolution oracle") {
    // F = u ux at u = a e^{ix} + b e^{-2ix}:
    // u ux = (a e^{ix} + b e^{-2ix}) (ia e^{ix} - 2ib e^{-2ix})
    //      = ia^2 e^{2ix} - iab e^{-ix} - 2ib^2 e^{-4ix}
    Complex a(0.3, 0.1), b(-0.2, 0.4);
    auto u = GridFunction::harmonic(64, 1, a) + GridFunction::harmonic(64, -2, b);
    auto f = nonlinearity_apply(mono(1, 1, 0, 0), u);
    CHECK(std::abs(f.coeff(2) - Complex(0, 1) * a * a) < 1e-13);
    CHECK(std::abs(f.coeff(-1) - (Complex(0, 1) * a * b - Complex(0, 2) * a * b)) < 1e-13);
    CHECK(std::abs(f.coeff(-4) + Complex(0, 2) * b * b) < 1e-13);
    CHECK(std::abs(f.coeff(0)) < 1e-13);
}

TEST_CASE("linear flow is exact in the coefficient factor") {
    SolverConfig cfg;
    cfg.n = 64;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.snapshot_stride = 1000;

    // eps = 0: phase rotation e^{i k^2 t}
    cfg.eps = 0.0;
    auto t1 = evolve(ComplexPolynomial4{}, GridFunction::harmonic(64, 1), cfg);
    CHECK_FALSE(t1.overflowed);
    Complex got = t1.snapshots.back().coeff(1);
    CHECK(std::abs(got - std::exp(Complex(0, 1))) < 1e-10);

    // eps = 0.1: decay factor e^{(i - eps) k^2 t} on k = 2
    cfg.eps = 0.1;
    auto t2 = evolve(ComplexPolynomial4{}, GridFunction::harmonic(64, 2), cfg);
    Complex got2 = t2.snapshots.back().coeff(2);
    CHECK(std::abs(got2 - std::exp(Complex(-0.1, 1.0) * 4.0)) < 1e-10);

    // generic data, all modes at once
    Rng rng(41);
    auto phi = random_trig_poly(rng, 64, 12, 1.5);
    cfg.eps = 0.02;
    cfg.t_end = 0.5;
    auto t3 = evolve(ComplexPolynomial4{}, phi, cfg);
    const auto& uT = t3.snapshots.back();
    double T = t3.times.back();
    for (int m = 0; m < 64; ++m) {
        int k = uT.wavenumber(m);
        if (k == 32) continue;
        Complex exact = phi.coeffs()[m] * std::exp(Complex(-cfg.eps, 1.0) * double(k) * double(k) * T);
        CHECK(std::abs(uT.coeffs()[m] - exact) < 1e-10);
    }
}

TEST_CASE("H^s norms: conserved without viscosity, closed form with it") {
    Rng rng(42);
    auto phi = random_trig_poly(rng, 64, 10, 2.0);
    SolverConfig cfg;
    cfg.n = 64;
    cfg.dt = 5e-4;
    cfg.t_end = 0.2;
    cfg.snapshot_stride = 40;

    cfg.eps = 0.0;
    auto t0 = evolve(ComplexPolynomial4{}, phi, cfg);
    double n0 = sobolev_norm(phi, 1.5);
    for (const auto& snap : t0.snapshots)
        CHECK(std::abs(sobolev_norm(snap, 1.5) - n0) < 1e-10);

    cfg.eps = 0.05;
    auto te = evolve(ComplexPolynomial4{}, phi, cfg);
    for (size_t i = 0; i < te.times.size(); ++i) {
        double t = te.times[i];
        double expect = 0.0;
        for (int m = 0; m < 64; ++m) {
            int k = phi.wavenumber(m);
            double w = 1.0 + double(k) * k;
            expect += std::pow(w, 1.5) * std::exp(-2.0 * cfg.eps * k * k * t) *
                      std::norm(phi.coeffs()[m]);
        }
        CHECK(std::abs(sobolev_norm(te.snapshots[i], 1.5) - std::sqrt(expect)) < 1e-10);
    }
}

TEST_CASE("Richardson self-convergence of the time stepper is fourth order") {
    ComplexPolynomial4 F = mono(0, 0, 1, 1, GaussianRational(2));
    auto phi = GridFunction::harmonic(64, 1, Complex(0.1, 0.0));
    SolverConfig cfg;
    cfg.n = 64;
    cfg.eps = 1e-3;
    cfg.t_end = 0.1;
    cfg.snapshot_stride = 1 << 20;  // final snapshot only

    std::vector<GridFunction> finals;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
        cfg.dt = dt;
        finals.push_back(evolve(F, phi, cfg).snapshots.back());
    }
    double d1 = sup_diff(finals[0], finals[1], 1.6);
    double d2 = sup_diff(finals[1], finals[2], 1.6);
    double order = std::log2(d1 / d2);
    CHECK(order >= 3.5);
}

TEST_CASE("derived fields are spectral derivatives of the snapshot") {
    SolverConfig cfg;
    cfg.n = 64;
    cfg.dt = 1e-3;
    cfg.t_end = 0.01;
    auto traj = evolve(ComplexPolynomial4{}, GridFunction::harmonic(64, 1), cfg);
    auto der = derived_fields(traj, 0);
    CHECK(sup_diff(der.v, GridFunction::harmonic(64, 1, Complex(0, 1)), 0.0) < 1e-12);
    CHECK(sup_diff(der.w, GridFunction::harmonic(64, 1, Complex(-1, 0)), 0.0) < 1e-12);
    CHECK(sobolev_norm(der.v, 0.0) ==
          doctest::Approx(sobolev_norm(derivative(der.u), 0.0)).epsilon(1e-12));
}

TEST_CASE("discrete residual is small and second order in dt") {
    ComplexPolynomial4 F = mono(1, 1, 0, 0);  // u ux
    Rng rng(43);
    auto phi = Complex(0.2, 0.0) * random_trig_poly(rng, 64, 6, 2.5);

    auto run = [&](double dt) {
        SolverConfig cfg;
        cfg.n = 64;
        cfg.eps = 0.01;
        cfg.dt = dt;
        cfg.t_end = 0.04;
        cfg.snapshot_stride = 1;
        return evolve(F, phi, cfg);
    };
    auto ta = run(1e-3);
    auto tb = run(5e-4);
    // residual at matching physical time t = 0.02
    double ra = residual(F, ta, 20, 0.0);
    double rb = residual(F, tb, 40, 0.0);
    double ratio = ra / rb;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("constant states with vanishing F are discrete solutions") {
    Complex c(0.7, 0.2);
    ComplexPolynomial4 F = mono(1, 1, 0, 0);  // u ux vanishes at constants
    SolverConfig cfg;
    cfg.n = 64;
    cfg.eps = 0.0;
    cfg.dt = 1e-3;
    cfg.t_end = 0.02;
    cfg.snapshot_stride = 1;
    auto traj = evolve(F, GridFunction::harmonic(64, 0, c), cfg);
    CHECK(residual(F, traj, 10, 0.0) < 1e-10);
    CHECK(std::abs(traj.snapshots.back().coeff(0) - c) < 1e-12);
}

TEST_CASE("time-reversal conjugation symmetry") {
    // if u solves the eps = 0 equation with F, then conj(u(T - t)) solves
    // it with the coefficient-conjugated F, sign flipped; the round trip
    // must return the data
    ComplexPolynomial4 F = mono(1, 1, 0, 0) + mono(2, 0, 1, 0, GaussianRational::i());
    ComplexPolynomial4 Fr;
    for (const auto& [e, c] : F.terms()) Fr.add_term(e, -c.conj());

    Rng rng(44);
    auto phi = Complex(0.3, 0.0) * random_trig_poly(rng, 64, 5, 2.5);
    SolverConfig cfg;
    cfg.n = 64;
    cfg.eps = 0.0;
    cfg.dt = 2.5e-4;
    cfg.t_end = 0.05;
    cfg.snapshot_stride = 1 << 20;

    auto fwd = evolve(F, phi, cfg);
    REQUIRE_FALSE(fwd.overflowed);
    auto back = evolve(Fr, fwd.snapshots.back().conjugate(), cfg);
    REQUIRE_FALSE(back.overflowed);
    CHECK(sup_diff(back.snapshots.back().conjugate(), phi, 1.0) < 1e-8);
}

TEST_CASE("grid refinement leaves a smooth run unchanged") {
    ComplexPolynomial4 F = mono(0, 0, 2, 1, GaussianRational(3));
    auto make_phi = [](int n) {
        return GridFunction::harmonic(n, 1, Complex(0.1, 0.0)) +
               GridFunction::harmonic(n, -2, Complex(0.05, 0.02));
    };
    SolverConfig cfg;
    cfg.eps = 0.01;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    cfg.snapshot_stride = 1 << 20;

    cfg.n = 64;
    auto coarse = evolve(F, make_phi(64), cfg);
    cfg.n = 128;
    auto fine = evolve(F, make_phi(128), cfg);

    const auto& uc = coarse.snapshots.back();
    const auto& uf = fine.snapshots.back();
    double err2 = 0.0;
    for (int m = 0; m < 64; ++m) {
        int k = uc.wavenumber(m);
        if (k == 32) continue;
        double w = 1.0 + double(k) * k;
        err2 += w * w * std::norm(uc.coeffs()[m] - uf.coeff(k));
    }
    CHECK(std::sqrt(err2) < 1e-8);
}

TEST_CASE("step size guard rejects unstable configurations") {
    ComplexPolynomial4 F = mono(0, 1, 0, 0);  // F_beta = 1
    SolverConfig cfg;
    cfg.n = 256;
    cfg.eps = 0.0;
    cfg.dt = 0.01;  // guard threshold is 0.5 / (256 * 2)
    cfg.t_end = 0.1;
    CHECK_THROWS_AS(evolve(F, GridFunction::harmonic(256, 1), cfg), StepSizeRejected);
}

TEST_CASE("blow-up truncates and flags instead of crashing") {
    ComplexPolynomial4 F = mono(2, 0, 0, 0);  // du/dt = u^2 on the mean mode
    SolverConfig cfg;
    cfg.n = 64;
    cfg.eps = 0.0;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.snapshot_stride = 1;
    auto traj = evolve(F, GridFunction::harmonic(64, 0, Complex(100.0, 0.0)), cfg);
    CHECK(traj.overflowed);
    CHECK(traj.truncation_time < 1.0);
    CHECK(traj.times.back() <= traj.truncation_time + 1e-12);
    for (const auto& s : traj.snapshots)
        for (int m = 0; m < 64; ++m) CHECK(std::isfinite(std::abs(s.coeffs()[m])));
}

TEST_CASE("diagnostics record norms and the mean of F_beta") {
    ComplexPolynomial4 F = mono(1, 1, 0, 0);  // F_beta = u
    Complex c(0.4, 0.3);
    SolverConfig cfg;
    cfg.n = 64;
    cfg.eps = 0.0;
    cfg.dt = 1e-3;
    cfg.t_end = 0.01;
    cfg.snapshot_stride = 1;
    cfg.diagnostic_norms = {0.0, 2.0};
    auto traj = evolve(F, GridFunction::harmonic(64, 0, c), cfg);
    REQUIRE(traj.diagnostics.size() == traj.snapshots.size());
    for (size_t i = 0; i < traj.diagnostics.size(); ++i) {
        REQUIRE(traj.diagnostics[i].hs_norms.size() == 2);
        CHECK(traj.diagnostics[i].hs_norms[0] ==
              doctest::Approx(sobolev_norm(traj.snapshots[i], 0.0)));
        CHECK(std::abs(traj.diagnostics[i].p0_fbeta - c) < 1e-10);
    }
}

TEST_CASE("trajectory persistence round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "torusnls_traj_io";
    fs::remove_all(dir);

    ComplexPolynomial4 F = mono(1, 1, 0, 0);
    Rng rng(45);
    auto phi = Complex(0.2, 0.0) * random_trig_poly(rng, 64, 6, 2.0);
    SolverConfig cfg;
    cfg.n = 64;
    cfg.eps = 0.01;
    cfg.dt = 1e-3;
    cfg.t_end = 0.01;
    cfg.snapshot_stride = 2;
    cfg.diagnostic_norms = {1.0};
    auto traj = evolve(F, phi, cfg);

    save_trajectory(dir.string(), traj);
    auto back = load_trajectory(dir.string());
    CHECK(back.config.n == cfg.n);
    CHECK(back.config.eps == cfg.eps);
    CHECK(back.config.dt == cfg.dt);
    CHECK(back.times == traj.times);
    CHECK(back.overflowed == traj.overflowed);
    REQUIRE(back.snapshots.size() == traj.snapshots.size());
    for (size_t i = 0; i < traj.snapshots.size(); ++i)
        CHECK(sup_diff(back.snapshots[i], traj.snapshots[i], 0.0) == 0.0);
    REQUIRE(back.diagnostics.size() == traj.diagnostics.size());
    for (size_t i = 0; i < traj.diagnostics.size(); ++i) {
        CHECK(back.diagnostics[i].hs_norms == traj.diagnostics[i].hs_norms);
        CHECK(std::abs(back.diagnostics[i].p0_fbeta - traj.diagnostics[i].p0_fbeta) == 0.0);
    }
    fs::remove_all(dir);
}

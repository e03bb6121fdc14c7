#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>

#include "torusnls/errors.hpp"
#include "torusnls/random.hpp"
#include "torusnls/spectral.hpp"

using namespace torusnls;

TEST_CASE("harmonic modes land on the right coefficient") {
    auto f = GridFunction::harmonic(64, 3, Complex(2.0, -1.0));
    for (int k = -31; k <= 32; ++k) {
        Complex expect = (k == 3) ? Complex(2.0, -1.0) : Complex(0.0);
        CHECK(std::abs(f.coeff(k) - expect) < 1e-13);
    }
    // value check at a grid point
    double x = f.x(7);
    CHECK(std::abs(f.values()[7] - Complex(2.0, -1.0) * std::exp(Complex(0, 3 * x))) < 1e-13);
}

TEST_CASE("negative wavenumbers and sampled functions") {
    auto f = GridFunction::sample(128, [](double x) { return std::exp(Complex(0, -5 * x)); });
    CHECK(std::abs(f.coeff(-5) - 1.0) < 1e-12);
    CHECK(std::abs(f.coeff(5)) < 1e-12);
    CHECK(std::abs(f.coeff(0)) < 1e-12);
}

TEST_CASE("values <-> coeffs round trip at machine precision") {
    Rng rng(21);
    auto f = random_trig_poly(rng, 256, 60, 1.0);
    auto g = GridFunction::from_values(f.values());
    auto h = GridFunction::from_coeffs(f.coeffs());
    for (int m = 0; m < 256; ++m) {
        CHECK(std::abs(f.coeffs()[m] - g.coeffs()[m]) < 1e-12);
        CHECK(std::abs(f.values()[m] - h.values()[m]) < 1e-12);
    }
}

TEST_CASE("Parseval: L2 norm equals grid mean of |f|^2") {
    Rng rng(22);
    auto f = random_trig_poly(rng, 128, 30, 0.7);
    double coeff_side = sobolev_norm(f, 0.0);
    double grid_side = 0.0;
    for (int j = 0; j < 128; ++j) grid_side += std::norm(f.values()[j]);
    grid_side = std::sqrt(grid_side / 128.0);
    CHECK(coeff_side == doctest::Approx(grid_side).epsilon(1e-12));
}

TEST_CASE("Sobolev norms of pure modes") {
    CHECK(sobolev_norm(GridFunction::harmonic(64, 0), 2.0) == doctest::Approx(1.0));
    CHECK(sobolev_norm(GridFunction::harmonic(64, 1), 1.0) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(sobolev_norm(GridFunction::harmonic(64, 3), 2.0) == doctest::Approx(10.0));
    // additivity across disjoint modes
    auto f = GridFunction::harmonic(64, 1) + GridFunction::harmonic(64, 3);
    CHECK(sobolev_norm(f, 2.0) == doctest::Approx(std::sqrt(4.0 + 100.0)));
}

TEST_CASE("spectral derivative and antiderivative") {
    auto f = GridFunction::harmonic(64, 4, Complex(1.0, 1.0));
    auto df = derivative(f);
    CHECK(std::abs(df.coeff(4) - Complex(0, 4) * Complex(1.0, 1.0)) < 1e-13);

    auto g = GridFunction::sample(128, [](double x) { return std::sin(2 * x); });
    auto dg = derivative(g);
    for (int j = 0; j < 128; ++j)
        CHECK(std::abs(dg.values()[j] - 2.0 * std::cos(2 * g.x(j))) < 1e-11);

    // dx^{-1} dx = Pneq0
    Rng rng(23);
    auto h = random_trig_poly(rng, 128, 20, 1.0);
    auto rt = inverse_derivative(derivative(h));
    auto pn = project(h, Projection::Pneq0);
    for (int m = 0; m < 128; ++m) CHECK(std::abs(rt.coeffs()[m] - pn.coeffs()[m]) < 1e-11);

    CHECK(sobolev_norm(derivative(f, 2) - Complex(-16.0) * f, 0.0) < 1e-12);
}

TEST_CASE("bessel potential shifts Sobolev index") {
    Rng rng(24);
    auto f = random_trig_poly(rng, 128, 30, 1.5);
    CHECK(sobolev_norm(bessel_potential(f, 1.25), 0.5) ==
          doctest::Approx(sobolev_norm(f, 1.75)).epsilon(1e-10));
}

TEST_CASE("projections partition the spectrum") {
    Rng rng(25);
    auto f = random_trig_poly(rng, 64, 15, 0.8);
    auto p0 = project(f, Projection::P0);
    auto pn = project(f, Projection::Pneq0);
    auto pp = project(f, Projection::Pplus);
    auto pm = project(f, Projection::Pminus);
    CHECK(std::abs(project_P0(f) - f.coeff(0)) < 1e-14);
    CHECK(std::abs(mean(f) - f.coeff(0)) < 1e-14);
    for (int m = 0; m < 64; ++m) {
        Complex sum = p0.coeffs()[m] + pp.coeffs()[m] + pm.coeffs()[m];
        CHECK(std::abs(sum - f.coeffs()[m]) < 1e-13);
        Complex sum2 = p0.coeffs()[m] + pn.coeffs()[m];
        CHECK(std::abs(sum2 - f.coeffs()[m]) < 1e-13);
    }
    CHECK(std::abs(pp.coeff(-3)) == 0.0);
    CHECK(std::abs(pm.coeff(3)) == 0.0);
    CHECK(std::abs(pn.coeff(0)) == 0.0);
}

TEST_CASE("mean of sin^2 is 1/2 under the normalized measure") {
    auto f = GridFunction::sample(64, [](double x) {
        double s = std::sin(x);
        return Complex(s * s, 0.0);
    });
    CHECK(mean(f).real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(mean(f).imag()) < 1e-14);
}

TEST_CASE("truncation keeps |k| <= N and rejects N beyond the grid") {
    Rng rng(26);
    auto f = random_trig_poly(rng, 128, 50, 0.4);
    auto t = truncate(f, 10);
    for (int m = 0; m < 128; ++m) {
        int k = f.wavenumber(m);
        if (std::abs(k) <= 10)
            CHECK(std::abs(t.coeffs()[m] - f.coeffs()[m]) < 1e-14);
        else
            CHECK(std::abs(t.coeffs()[m]) == 0.0);
    }
    CHECK_THROWS_AS(truncate(f, 65), std::invalid_argument);

    // tail decay oracle: truncation error of <k>^{-p} data decays like N^{-(p-1/2-s)}
    auto g = GridFunction::sample(1024, [](double x) {
        Complex acc = 0.0;
        for (int k = 1; k <= 512; ++k)
            acc += std::pow(k, -2.0) * std::exp(Complex(0, k * x));
        return acc;
    });
    std::vector<double> Ns, errs;
    for (int N : {8, 16, 32, 64, 128}) {
        Ns.push_back(N);
        errs.push_back(sobolev_norm(g - truncate(g, N), 0.0));
    }
    // expected rate: sqrt(sum_{k>N} k^{-4}) ~ N^{-3/2}
    std::vector<double> lx, ly;
    for (size_t i = 0; i < Ns.size(); ++i) {
        lx.push_back(std::log(Ns[i]));
        ly.push_back(std::log(errs[i]));
    }
    double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
    CHECK(slope == doctest::Approx(-1.5).epsilon(0.05));
}

TEST_CASE("dealiased product matches exact convolution") {
    // f, g with known coefficients; product coefficients by hand
    auto f = GridFunction::harmonic(32, 3) + GridFunction::harmonic(32, -5, Complex(2.0));
    auto g = GridFunction::harmonic(32, 10, Complex(0.0, 1.0)) + GridFunction::harmonic(32, 0);
    auto p = dealias_product({f, g}, 2);
    CHECK(std::abs(p.coeff(13) - Complex(0.0, 1.0)) < 1e-13);
    CHECK(std::abs(p.coeff(5) - Complex(0.0, 2.0)) < 1e-13);
    CHECK(std::abs(p.coeff(3) - Complex(1.0)) < 1e-13);
    CHECK(std::abs(p.coeff(-5) - Complex(2.0)) < 1e-13);
    CHECK(std::abs(p.coeff(8)) < 1e-13);
}

TEST_CASE("dealiasing beats the naive pointwise product near the grid edge") {
    // modes 12 and 13 on n = 32: true product mode 25 exceeds the grid,
    // naive pointwise multiplication aliases it onto k = 25 - 32 = -7
    auto f = GridFunction::harmonic(32, 12);
    auto g = GridFunction::harmonic(32, 13);
    ComplexVector naive(32);
    for (int j = 0; j < 32; ++j) naive[j] = f.values()[j] * g.values()[j];
    auto naive_fn = GridFunction::from_values(naive);
    CHECK(std::abs(naive_fn.coeff(-7) - 1.0) < 1e-13);

    auto clean = dealias_product({f, g}, 2);
    for (int m = 0; m < 32; ++m) CHECK(std::abs(clean.coeffs()[m]) < 1e-13);
}

TEST_CASE("cubic products are alias free") {
    Rng rng(27);
    auto f = random_trig_poly(rng, 64, 31, 0.6);
    auto cube = dealias_product({f, f, f}, 3);
    // oracle: compute on a grid large enough that no aliasing can occur
    auto big = GridFunction::from_coeffs([&] {
        ComplexVector c = ComplexVector::Zero(256);
        for (int m = 0; m < 64; ++m) {
            int k = f.wavenumber(m);
            c[((k % 256) + 256) % 256] = f.coeffs()[m];
        }
        return c;
    }());
    ComplexVector vals(256);
    for (int j = 0; j < 256; ++j)
        vals[j] = big.values()[j] * big.values()[j] * big.values()[j];
    auto exact = GridFunction::from_values(vals);
    for (int m = 0; m < 64; ++m) {
        int k = cube.wavenumber(m);
        if (k == 32) continue;  // Nyquist mode is zeroed by design
        CHECK(std::abs(cube.coeffs()[m] - exact.coeff(k)) < 1e-11);
    }
}

TEST_CASE("empty product is the constant one") {
    auto one = dealias_product({}, 0, 16);
    CHECK(one.size() == 16);
    CHECK(std::abs(one.coeff(0) - 1.0) < 1e-14);
    CHECK(sobolev_norm(one, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("rough data populates dyadic modes with the advertised decay") {
    auto base = GridFunction::zero(256);
    auto f = make_rough_data(2.6, 0.25, RoughSide::Minus, base, 1.0);
    for (int k = 2; k < 128; ++k) {
        bool dyadic = (k & (k - 1)) == 0;
        if (dyadic) {
            CHECK(std::abs(f.coeff(-k)) ==
                  doctest::Approx(std::pow(k, -2.85)).epsilon(1e-12));
            CHECK(std::abs(f.coeff(k)) < 1e-14);
        } else {
            CHECK(std::abs(f.coeff(-k)) < 1e-14);
        }
    }
    auto g = make_rough_data(2.6, 0.25, RoughSide::Both, base, 0.5);
    CHECK(std::abs(g.coeff(8)) > 0.0);
    CHECK(std::abs(g.coeff(-8)) > 0.0);

    // H^s norms stay bounded in n while H^{s+2delta} norms grow
    double hs_256 = sobolev_norm(f, 2.6);
    auto f1024 = make_rough_data(2.6, 0.25, RoughSide::Minus, GridFunction::zero(1024), 1.0);
    double hs_1024 = sobolev_norm(f1024, 2.6);
    CHECK(hs_1024 < 1.2 * hs_256 + 1.0);
    CHECK(sobolev_norm(f1024, 3.2) > 1.5 * sobolev_norm(f, 3.2));
}

TEST_CASE("binary snapshot round trip and CSV export") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "torusnls_spectral_io";
    fs::create_directories(dir);
    Rng rng(28);
    auto f = random_trig_poly(rng, 64, 20, 1.0);
    write_binary((dir / "snap.bin").string(), f, 0.375);
    double t = -1.0;
    auto g = read_binary((dir / "snap.bin").string(), &t);
    CHECK(t == 0.375);
    CHECK(g.size() == 64);
    for (int m = 0; m < 64; ++m) CHECK(std::abs(f.coeffs()[m] - g.coeffs()[m]) == 0.0);

    write_csv((dir / "snap.csv").string(), f);
    std::FILE* fp = std::fopen((dir / "snap.csv").string().c_str(), "r");
    REQUIRE(fp != nullptr);
    char line[256];
    int rows = 0;
    while (std::fgets(line, sizeof line, fp)) ++rows;
    std::fclose(fp);
    CHECK(rows >= 64);
    fs::remove_all(dir);
}

TEST_CASE("grid size preconditions") {
    CHECK_THROWS_AS(GridFunction::zero(48), std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(GridFunction::zero(4), std::invalid_argument);   // too small
}

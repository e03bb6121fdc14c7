#include "torusnls/solver.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "torusnls/errors.hpp"

namespace torusnls {

namespace {

// Upsamples f onto a grid of size m >= n by zero-padding coefficients.
ComplexVector upsample_values(const GridFunction& f, int m) {
    const int n = f.size();
    ComplexVector cpad = ComplexVector::Zero(m);
    for (int idx = 0; idx < n; ++idx) {
        int k = f.wavenumber(idx);
        if (k == n / 2) continue;
        cpad[((k % m) + m) % m] = f.coeffs()[idx];
    }
    return GridFunction::from_coeffs(std::move(cpad)).values();
}

double max_abs_fbeta(const ComplexPolynomial4& F, const GridFunction& u) {
    const ComplexPolynomial4 f_beta = wirtinger_derivative(F, var::beta);
    const GridFunction ux = derivative(u);
    double m = 0.0;
    for (int j = 0; j < u.size(); ++j) {
        Complex z = u.values()[j], zx = ux.values()[j];
        m = std::max(m, std::abs(f_beta.evaluate({z, zx, std::conj(z), std::conj(zx)})));
    }
    return m;
}

}  // namespace

GridFunction apply_poly(const ComplexPolynomial4& p, const GridFunction& u) {
    const int n = u.size();
    const int deg = std::max(p.total_degree(), 1);
    int m = n;
    while (2 * m < (deg + 1) * n) m <<= 1;

    const ComplexVector uv = upsample_values(u, m);
    const ComplexVector uxv = upsample_values(derivative(u), m);
    ComplexVector out(m);
    for (int j = 0; j < m; ++j)
        out[j] = p.evaluate({uv[j], uxv[j], std::conj(uv[j]), std::conj(uxv[j])});

    GridFunction big = GridFunction::from_values(std::move(out));
    ComplexVector c = ComplexVector::Zero(n);
    for (int idx = 0; idx < n; ++idx) {
        int k = idx <= n / 2 ? idx : idx - n;
        c[idx] = big.coeff(k);
    }
    c[n / 2] = 0.0;
    return GridFunction::from_coeffs(std::move(c));
}

GridFunction nonlinearity_apply(const ComplexPolynomial4& F, const GridFunction& u) {
    if (!u.values().allFinite()) throw OverflowSignal{};
    GridFunction out = apply_poly(F, u);
    if (!out.values().allFinite()) throw OverflowSignal{};
    return out;
}

Trajectory evolve(const ComplexPolynomial4& F, const GridFunction& phi,
                  const SolverConfig& cfg) {
    if (phi.size() != cfg.n) throw std::invalid_argument("evolve: phi.n != cfg.n");
    if (cfg.dt <= 0.0 || cfg.t_end < 0.0) throw std::invalid_argument("evolve: bad dt/t_end");
    const double guard = 0.5 / (cfg.n * (1.0 + max_abs_fbeta(F, phi)));
    if (cfg.dt > guard)
        throw StepSizeRejected("evolve: dt exceeds stability guard " + std::to_string(guard));

    const int n = cfg.n;
    const int nsteps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
    const ComplexPolynomial4 f_beta = wirtinger_derivative(F, var::beta);

    // exact linear factors e^{(i-eps) k^2 h} for h = dt/2 and dt
    ComplexVector e_half(n), e_full(n);
    for (int idx = 0; idx < n; ++idx) {
        int k = idx <= n / 2 ? idx : idx - n;
        Complex lam = Complex(-cfg.eps, 1.0) * static_cast<double>(k) * static_cast<double>(k);
        e_half[idx] = std::exp(lam * (cfg.dt / 2.0));
        e_full[idx] = std::exp(lam * cfg.dt);
    }

    Trajectory traj;
    traj.config = cfg;

    auto record = [&](double t, const GridFunction& u) {
        traj.times.push_back(t);
        traj.snapshots.push_back(u);
        SnapshotDiagnostics d;
        for (double s : cfg.diagnostic_norms) d.hs_norms.push_back(sobolev_norm(u, s));
        d.p0_fbeta = project_P0(apply_poly(f_beta, u));
        traj.diagnostics.push_back(d);
    };

    auto rhs = [&](const ComplexVector& c) {
        return nonlinearity_apply(F, GridFunction::from_coeffs(c)).coeffs();
    };

    ComplexVector uc = phi.coeffs();
    record(0.0, phi);
    const int stride = std::max(cfg.snapshot_stride, 1);
    try {
        for (int step = 0; step < nsteps; ++step) {
            const ComplexVector k1 = rhs(uc);
            const ComplexVector k2 =
                rhs((e_half.array() * (uc + (cfg.dt / 2.0) * k1).array()).matrix());
            const ComplexVector k3 =
                ((e_half.array() * uc.array()).matrix() + (cfg.dt / 2.0) * k2).eval();
            const ComplexVector k3r = rhs(k3);
            const ComplexVector k4 = rhs(((e_full.array() * uc.array()).matrix() +
                                          cfg.dt * (e_half.array() * k3r.array()).matrix())
                                             .eval());
            uc = (e_full.array() * uc.array()).matrix() +
                 (cfg.dt / 6.0) *
                     ((e_full.array() * k1.array()).matrix() +
                      2.0 * (e_half.array() * (k2 + k3r).array()).matrix() + k4);
            if (!uc.allFinite()) throw OverflowSignal{};
            double t = (step + 1) * cfg.dt;
            if ((step + 1) % stride == 0 || step + 1 == nsteps)
                record(t, GridFunction::from_coeffs(uc));
        }
    } catch (const OverflowSignal&) {
        traj.overflowed = true;
        traj.truncation_time = traj.times.back();
    }
    return traj;
}

DerivedFields derived_fields(const Trajectory& traj, int t_index) {
    const GridFunction& u = traj.snapshots.at(t_index);
    return {u, derivative(u), derivative(u, 2)};
}

double residual(const ComplexPolynomial4& F, const Trajectory& traj, int t_index,
                double norm_s) {
    if (t_index <= 0 || t_index + 1 >= static_cast<int>(traj.snapshots.size()))
        throw std::invalid_argument("residual: interior index required");
    const double dt = traj.times[t_index + 1] - traj.times[t_index];
    const GridFunction& u = traj.snapshots[t_index];
    GridFunction dudt =
        (1.0 / (2.0 * dt)) * (traj.snapshots[t_index + 1] - traj.snapshots[t_index - 1]);
    GridFunction r = dudt + Complex(-traj.config.eps, 1.0) * derivative(u, 2) -
                     apply_poly(F, u);
    return sobolev_norm(r, norm_s);
}

void save_trajectory(const std::string& dir, const Trajectory& traj) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    nlohmann::json manifest;
    manifest["schema_version"] = 1;
    manifest["config"] = {{"n", traj.config.n},
                          {"eps", traj.config.eps},
                          {"dt", traj.config.dt},
                          {"t_end", traj.config.t_end},
                          {"snapshot_stride", traj.config.snapshot_stride},
                          {"seed", traj.config.seed},
                          {"diagnostic_norms", traj.config.diagnostic_norms}};
    manifest["times"] = traj.times;
    manifest["overflowed"] = traj.overflowed;
    manifest["truncation_time"] = traj.truncation_time;
    nlohmann::json diags = nlohmann::json::array();
    for (const auto& d : traj.diagnostics)
        diags.push_back({{"hs_norms", d.hs_norms},
                         {"p0_fbeta_re", d.p0_fbeta.real()},
                         {"p0_fbeta_im", d.p0_fbeta.imag()}});
    manifest["diagnostics"] = diags;

    std::vector<std::string> files;
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%06zu.bin", i);
        write_binary((fs::path(dir) / name).string(), traj.snapshots[i], traj.times[i]);
        files.push_back(name);
    }
    manifest["snapshots"] = files;
    std::ofstream out(fs::path(dir) / "manifest.json");
    out << manifest.dump(2) << "\n";
}

Trajectory load_trajectory(const std::string& dir) {
    namespace fs = std::filesystem;
    std::ifstream in(fs::path(dir) / "manifest.json");
    if (!in) throw std::runtime_error("load_trajectory: missing manifest in " + dir);
    nlohmann::json manifest = nlohmann::json::parse(in);

    Trajectory traj;
    const auto& c = manifest.at("config");
    traj.config.n = c.at("n");
    traj.config.eps = c.at("eps");
    traj.config.dt = c.at("dt");
    traj.config.t_end = c.at("t_end");
    traj.config.snapshot_stride = c.at("snapshot_stride");
    traj.config.seed = c.at("seed");
    traj.config.diagnostic_norms = c.at("diagnostic_norms").get<std::vector<double>>();
    traj.times = manifest.at("times").get<std::vector<double>>();
    traj.overflowed = manifest.at("overflowed");
    traj.truncation_time = manifest.at("truncation_time");
    for (const auto& d : manifest.at("diagnostics")) {
        SnapshotDiagnostics sd;
        sd.hs_norms = d.at("hs_norms").get<std::vector<double>>();
        sd.p0_fbeta = Complex(d.at("p0_fbeta_re"), d.at("p0_fbeta_im"));
        traj.diagnostics.push_back(sd);
    }
    for (const auto& name : manifest.at("snapshots"))
        traj.snapshots.push_back(read_binary((fs::path(dir) / name.get<std::string>()).string()));
    return traj;
}

}  // namespace torusnls

// Batch front-end: parse a nonlinearity and a flat key=value config,
// dispatch classify/solve/experiment subcommands, persist JSON reports
// with CSV series and plot-data files under --out.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torusnls/classifier.hpp"
#include "torusnls/energy.hpp"
#include "torusnls/errors.hpp"
#include "torusnls/experiments.hpp"
#include "torusnls/gauge.hpp"
#include "torusnls/parse.hpp"
#include "torusnls/solver.hpp"
#include "torusnls/spectral.hpp"

namespace fs = std::filesystem;
using namespace torusnls;
using nlohmann::json;

namespace {

// exit-code contract: 0 pass, 1 error, 2 fail, 3 inconclusive
constexpr int kPass = 0;
constexpr int kError = 1;
constexpr int kFail = 2;
constexpr int kInconclusive = 3;

struct CommonOpts {
    std::string nonlinearity;
    std::string out = "out";
    std::uint64_t seed = 0;
    int grid = 256;
    bool quiet = false;
};

struct DataOpts {
    std::string preset = "two_mode";  // two_mode | constant | power_law | rough | coeffs
    double amplitude = 1.0;
    double decay = 3.15;        // power_law: |coeff(k)| = <k>^{-decay}
    double rough_s = 2.6;       // rough: dyadic tail parameters
    double rough_delta = 0.25;
    std::string rough_side = "both";
    std::vector<std::string> coeffs;  // coeffs: entries "k=re,im"
};

std::string dummy_config;

void add_common(CLI::App* cmd, CommonOpts& c, bool needs_poly = true) {
    cmd->option_defaults()->always_capture_default();
    auto* f = cmd->add_option("-F,--nonlinearity", c.nonlinearity,
                              "polynomial in u, ux, uc, uxc, e.g. \"i*(2*u*uc*ux + u^2*uxc)\"");
    if (needs_poly) f->required();
    cmd->add_option("--out", c.out, "output directory");
    cmd->add_option("--seed", c.seed, "seed for all randomized pieces");
    cmd->add_option("--grid", c.grid, "grid size (power of two)");
    cmd->add_flag("--quiet", c.quiet, "suppress stdout summary");
    cmd->add_option("--config", dummy_config,
                    "flat key=value config file; unknown keys rejected; "
                    "command-line flags take precedence");
}

// flat key=value config: '#' comments, quotes and list brackets tolerated
std::vector<std::pair<std::string, std::string>> read_kv_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read config file: " + path);
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(f, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
            val = val.substr(1, val.size() - 2);
        if (val.size() >= 2 && val.front() == '[' && val.back() == ']') {
            val = val.substr(1, val.size() - 2);
            std::string packed;
            for (char ch : val)
                if (ch != ' ') packed += ch;
            val = packed;
        }
        kv.emplace_back(key, val);
    }
    return kv;
}

// echo of the effective configuration, one key=value per line, in the
// same flat format read_kv_config accepts (round trip is lossless)
std::string echo_config(const CLI::App& cmd) {
    std::ostringstream os;
    for (const CLI::Option* o : cmd.get_options()) {
        if (o->get_lnames().empty()) continue;
        const std::string& name = o->get_lnames().front();
        if (name == "help" || name == "config") continue;
        std::string val;
        if (o->get_type_size() == 0) {  // flag
            val = o->count() ? "true" : "false";
        } else if (o->count() > 0) {
            char delim = o->get_delimiter() ? o->get_delimiter() : ',';
            for (const std::string& r : o->results()) {
                if (!val.empty()) val += delim;
                val += r;
            }
        } else {
            val = o->get_default_str();
            if (val.size() >= 2 && val.front() == '[' && val.back() == ']') {
                std::string packed;
                for (size_t i = 1; i + 1 < val.size(); ++i)
                    if (val[i] != ' ') packed += val[i];
                val = packed;
            }
        }
        if (val.empty()) continue;
        os << name << "=" << val << "\n";
    }
    return os.str();
}

// expand --config into command-line tokens before the real parse, so
// unknown keys are rejected by the parser and explicit flags win
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::string config_path;
    size_t subcmd_pos = std::string::npos;
    std::vector<std::string> given;  // long option names used explicitly
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) == 0) {
            std::string name = a.substr(2, a.find('=') - 2);
            given.push_back(name);
            if (name == "config") {
                auto eq = a.find('=');
                if (eq != std::string::npos)
                    config_path = a.substr(eq + 1);
                else if (i + 1 < args.size())
                    config_path = args[i + 1];
            }
        } else if (a.rfind("-", 0) == 0) {
            if (a.size() > 1 && a[1] == 'F') given.push_back("nonlinearity");
        } else if (subcmd_pos == std::string::npos) {
            subcmd_pos = i;
        }
    }
    if (config_path.empty()) return args;
    std::vector<std::string> out(args.begin(),
                                 args.begin() + static_cast<long>(subcmd_pos) + 1);
    for (const auto& [key, val] : read_kv_config(config_path)) {
        if (key == "config") continue;
        if (std::find(given.begin(), given.end(), key) != given.end()) continue;
        out.push_back("--" + key + "=" + val);
    }
    out.insert(out.end(), args.begin() + static_cast<long>(subcmd_pos) + 1, args.end());
    return out;
}

void add_data(CLI::App* cmd, DataOpts& d) {
    cmd->add_option("--data", d.preset, "initial data: two_mode|constant|power_law|rough|coeffs")
        ->check(CLI::IsMember({"two_mode", "constant", "power_law", "rough", "coeffs"}));
    cmd->add_option("--amplitude", d.amplitude, "overall data amplitude");
    cmd->add_option("--decay", d.decay, "power_law spectral decay exponent");
    cmd->add_option("--rough-s", d.rough_s, "rough data regularity");
    cmd->add_option("--rough-delta", d.rough_delta, "rough data excess decay");
    cmd->add_option("--rough-side", d.rough_side, "rough tail side: plus|minus|both")
        ->check(CLI::IsMember({"plus", "minus", "both"}));
    cmd->add_option("--coeffs", d.coeffs, "explicit modes as k=re,im entries")->delimiter(';');
}

GridFunction build_data(const DataOpts& d, int n) {
    if (d.preset == "two_mode")
        return Complex(d.amplitude, 0.0) * (GridFunction::harmonic(n, 1, Complex(0.2, 0.0)) +
                                            GridFunction::harmonic(n, 2, Complex(0.1, 0.0)));
    if (d.preset == "constant") return GridFunction::harmonic(n, 0, Complex(d.amplitude, 0.0));
    if (d.preset == "power_law") {
        ComplexVector c = ComplexVector::Zero(n);
        for (int k = -(n / 2 - 1); k <= n / 2 - 1; ++k)
            c[((k % n) + n) % n] =
                d.amplitude * std::pow(1.0 + double(k) * k, -0.5 * d.decay);
        return GridFunction::from_coeffs(std::move(c));
    }
    if (d.preset == "rough") {
        RoughSide side = d.rough_side == "plus"    ? RoughSide::Plus
                         : d.rough_side == "minus" ? RoughSide::Minus
                                                   : RoughSide::Both;
        return make_rough_data(d.rough_s, d.rough_delta, side, GridFunction::harmonic(n, 0),
                               d.amplitude);
    }
    // explicit coefficient list
    ComplexVector c = ComplexVector::Zero(n);
    for (const std::string& entry : d.coeffs) {
        auto eq = entry.find('=');
        auto comma = entry.find(',', eq);
        if (eq == std::string::npos || comma == std::string::npos)
            throw std::invalid_argument("bad --coeffs entry, expected k=re,im: " + entry);
        int k = std::stoi(entry.substr(0, eq));
        double re = std::stod(entry.substr(eq + 1, comma - eq - 1));
        double im = std::stod(entry.substr(comma + 1));
        if (std::abs(k) >= n / 2) throw std::invalid_argument("--coeffs mode above Nyquist");
        c[((k % n) + n) % n] = d.amplitude * Complex(re, im);
    }
    return GridFunction::from_coeffs(std::move(c));
}

std::string timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + p.string());
    f << text;
}

// one CSV per numeric series, written in a stable key order
std::vector<std::string> write_series_csv(const fs::path& dir, const json& series) {
    std::vector<std::string> files;
    for (auto it = series.begin(); it != series.end(); ++it) {
        if (!it.value().is_array()) continue;
        std::string name = "series_" + it.key() + ".csv";
        std::ostringstream os;
        os << "index," << it.key() << "\n";
        int i = 0;
        for (const auto& v : it.value()) os << i++ << "," << v.dump() << "\n";
        write_text(dir / name, os.str());
        files.push_back(name);
    }
    return files;
}

// (x, y, fit) plot rows: fit = exp(intercept + slope log x), with the
// intercept recomputed from the stored series so the file is
// self-contained
void write_plot(const fs::path& p, const std::vector<double>& x, const std::vector<double>& y,
                double slope) {
    double intercept = 0.0;
    int count = 0;
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] > 0 && y[i] > 0) {
            intercept += std::log(y[i]) - slope * std::log(x[i]);
            ++count;
        }
    if (count) intercept /= count;
    std::ostringstream os;
    os << "x,y,fit\n";
    for (size_t i = 0; i < x.size(); ++i) {
        double fit = x[i] > 0 ? std::exp(intercept + slope * std::log(x[i])) : 0.0;
        os << x[i] << "," << y[i] << "," << fit << "\n";
    }
    write_text(p, os.str());
}

std::vector<double> series_vec(const json& series, const char* key) {
    if (!series.contains(key)) return {};
    return series[key].get<std::vector<double>>();
}

// persist a report, its CSV series, and a plot file; returns the exit code
int finalize(const CommonOpts& c, const ExperimentReport& rep, const CLI::App& cmd) {
    fs::create_directories(c.out);
    json j = report_to_json(rep);
    write_text(fs::path(c.out) / "report.json", j.dump(2) + "\n");

    std::vector<std::string> files = {"report.json", "config_echo.ini"};
    for (auto& f : write_series_csv(c.out, j["series"])) files.push_back(f);

    const json& s = j["series"];
    if (rep.id == "eps_convergence" && j["fits"].contains("order"))
        write_plot(fs::path(c.out) / "plot_rate.csv", series_vec(s, "eps_gaps"),
                   series_vec(s, "sup_differences"), j["fits"]["order"].get<double>());
    else if (rep.id == "bona_smith" && j["fits"].contains("data_slope"))
        write_plot(fs::path(c.out) / "plot_rate.csv", series_vec(s, "N"),
                   series_vec(s, "data_tails"), j["fits"]["data_slope"].get<double>());
    else if (rep.id == "smoothing_probe" && j["fits"].contains("proportionality")) {
        std::ostringstream os;
        os << "x,y,fit\n";
        auto xs = series_vec(s, "predictors");
        auto ys = series_vec(s, "gains");
        double slope = j["fits"]["proportionality"].get<double>();
        for (size_t i = 0; i < xs.size(); ++i)
            os << xs[i] << "," << ys[i] << "," << slope * xs[i] << "\n";
        write_text(fs::path(c.out) / "plot_rate.csv", os.str());
    } else if (rep.id == "inequality_probe") {
        std::ostringstream os;
        os << "x,y,fit\n";
        auto xs = series_vec(s, "n");
        auto ys = series_vec(s, "max_ratio");
        for (size_t i = 0; i < xs.size(); ++i)
            os << xs[i] << "," << ys[i] << "," << ys[0] << "\n";
        write_text(fs::path(c.out) / "plot_rate.csv", os.str());
    }
    if (fs::exists(fs::path(c.out) / "plot_rate.csv")) files.push_back("plot_rate.csv");

    write_text(fs::path(c.out) / "config_echo.ini", echo_config(cmd));

    json manifest = {{"experiment", rep.id},
                     {"verdict", to_string(rep.verdict)},
                     {"generated_at", timestamp()},
                     {"files", files}};
    write_text(fs::path(c.out) / "manifest.json", manifest.dump(2) + "\n");

    if (!c.quiet)
        std::cout << rep.id << ": " << to_string(rep.verdict)
                  << (rep.note.empty() ? "" : " (" + rep.note + ")") << "\n";
    switch (rep.verdict) {
        case Verdict::Pass: return kPass;
        case Verdict::Fail: return kFail;
        default: return kInconclusive;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classification and numerical studies of periodic derivative "
                 "Schrodinger nonlinearities"};
    app.require_subcommand(1);

    // classify
    CommonOpts c_cls;
    auto* classify = app.add_subcommand("classify", "exact well-/ill-posedness verdict");
    add_common(classify, c_cls);

    // solve
    CommonOpts c_sol;
    DataOpts d_sol;
    double sol_eps = 1e-3, sol_dt = 1e-3, sol_tend = 0.1;
    int sol_stride = 1;
    auto* solve = app.add_subcommand("solve", "evolve and persist a trajectory");
    add_common(solve, c_sol);
    add_data(solve, d_sol);
    solve->add_option("--eps", sol_eps, "viscosity");
    solve->add_option("--dt", sol_dt, "time step");
    solve->add_option("--t-end", sol_tend, "final time");
    solve->add_option("--stride", sol_stride, "snapshot stride");

    // gauge-check
    CommonOpts c_gc;
    double gc_s = 3.4, gc_eps = 1e-3, gc_dt = 2e-6, gc_tend = 2e-5;
    std::vector<int> gc_freqs = {8, 32, 128};
    bool gc_raw = false;
    auto* gauge_check =
        app.add_subcommand("gauge-check", "first-order cancellation of the gauged equation");
    add_common(gauge_check, c_gc);
    gauge_check->add_option("--freqs", gc_freqs, "probe frequencies")->delimiter(',');
    gauge_check->add_option("--s", gc_s, "measuring regularity");
    gauge_check->add_option("--eps", gc_eps, "viscosity");
    gauge_check->add_option("--dt", gc_dt, "time step");
    gauge_check->add_option("--t-end", gc_tend, "final time");
    gauge_check->add_flag("--no-gauge", gc_raw, "contrast run without the gauge");

    // energy
    CommonOpts c_en;
    DataOpts d_en;
    double en_s = 2.6, en_r = 2.6, en_eps = 1e-3, en_dt = 5e-4, en_tend = 0.05;
    auto* energy = app.add_subcommand("energy", "gauged energy trace and growth constant");
    add_common(energy, c_en);
    add_data(energy, d_en);
    energy->add_option("--s", en_s, "lower regularity index (> 5/2)");
    energy->add_option("--r", en_r, "upper regularity index (>= s)");
    energy->add_option("--eps", en_eps, "viscosity");
    energy->add_option("--dt", en_dt, "time step");
    energy->add_option("--t-end", en_tend, "final time");

    // eps-converge
    CommonOpts c_ec;
    DataOpts d_ec;
    std::vector<double> ec_eps = {1e-2, 3.16227766016838e-3, 1e-3, 3.16227766016838e-4};
    double ec_s = 2.6, ec_dt = 1e-3, ec_tend = 0.1;
    auto* eps_conv =
        app.add_subcommand("eps-converge", "vanishing-viscosity comparison rate");
    add_common(eps_conv, c_ec);
    add_data(eps_conv, d_ec);
    eps_conv->add_option("--eps", ec_eps, "decreasing viscosity list")->delimiter(',');
    eps_conv->add_option("--s", ec_s, "regularity index");
    eps_conv->add_option("--dt", ec_dt, "time step");
    eps_conv->add_option("--t-end", ec_tend, "final time");

    // bona-smith
    CommonOpts c_bs;
    DataOpts d_bs;
    d_bs.preset = "power_law";
    std::vector<int> bs_nlist = {8, 16, 32, 64};
    double bs_s = 2.6, bs_s0 = 2.55, bs_r = 1.6, bs_dt = 5e-4, bs_tend = 0.05;
    auto* bona = app.add_subcommand("bona-smith", "truncation and Cauchy convergence rates");
    add_common(bona, c_bs);
    add_data(bona, d_bs);
    bona->add_option("--n-list", bs_nlist, "truncation levels")->delimiter(',');
    bona->add_option("--s", bs_s, "solution regularity");
    bona->add_option("--s0", bs_s0, "auxiliary regularity in (5/2, s)");
    bona->add_option("--r", bs_r, "data-rate regularity");
    bona->add_option("--dt", bs_dt, "time step");
    bona->add_option("--t-end", bs_tend, "final time");

    // smooth-probe
    CommonOpts c_sp;
    DataOpts d_sp;
    d_sp.preset = "rough";
    c_sp.grid = 1024;
    SmoothingProbeConfig spc;
    auto* smooth = app.add_subcommand("smooth-probe", "one-sided integrating-factor gain");
    add_common(smooth, c_sp);
    add_data(smooth, d_sp);
    smooth->add_option("--eps", spc.eps, "viscosity");
    smooth->add_option("--s", spc.s, "data regularity");
    smooth->add_option("--delta", spc.delta, "excess decay");
    smooth->add_option("--dt", spc.dt, "time step");
    smooth->add_option("--t-end", spc.t_end, "final time");
    smooth->add_option("--k-min", spc.k_min, "lowest fitted dyadic mode");
    smooth->add_option("--window", spc.window, "viscosity window bound on eps k^2 t");

    // ineq-probe
    CommonOpts c_iq;
    std::string iq_which = "product_2_2";
    int iq_samples = 500;
    std::vector<int> iq_nlist = {64, 128, 256};
    InequalityParams iqp;
    auto* ineq = app.add_subcommand("ineq-probe", "random-sample norm inequality probe");
    add_common(ineq, c_iq, /*needs_poly=*/false);
    ineq->add_option("--which", iq_which, "inequality to probe")
        ->check(CLI::IsMember({"bilinear_2_1", "product_2_2", "projection_2_3",
                               "commutator_2_5"}));
    ineq->add_option("--samples", iq_samples, "samples per grid size");
    ineq->add_option("--n-list", iq_nlist, "grid sizes")->delimiter(',');
    ineq->add_option("--s0", iqp.s0, "bilinear exponent s0");
    ineq->add_option("--s1", iqp.s1, "bilinear exponent s1");
    ineq->add_option("--s2", iqp.s2, "bilinear exponent s2");
    ineq->add_option("--s", iqp.s, "product/projection exponent s");
    ineq->add_option("--r", iqp.r, "product/projection exponent r");
    ineq->add_option("--comm-s", iqp.comm_s, "commutator exponent s");
    ineq->add_option("--comm-eps", iqp.comm_eps, "commutator margin eps");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kPass : kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }

    try {
        if (*classify) {
            ComplexPolynomial4 F = parse_nonlinearity(c_cls.nonlinearity);
            auto v = decide(F, c_cls.seed, c_cls.grid);
            json j = verdict_to_json(v);
            fs::create_directories(c_cls.out);
            write_text(fs::path(c_cls.out) / "classification.json", j.dump(2) + "\n");
            write_text(fs::path(c_cls.out) / "config_echo.ini",
                       echo_config(*classify));
            json manifest = {{"experiment", "classify"},
                             {"verdict", j["status"]},
                             {"generated_at", timestamp()},
                             {"files", {"classification.json", "config_echo.ini"}}};
            write_text(fs::path(c_cls.out) / "manifest.json", manifest.dump(2) + "\n");
            if (!c_cls.quiet) {
                std::cout << "verdict: " << j["status"].get<std::string>() << "\n";
                if (v.witness)
                    std::cout << "witness: " << v.witness->description
                              << "  M = " << v.mizohata_value_at_witness << "\n";
            }
            return kPass;
        }
        if (*solve) {
            ComplexPolynomial4 F = parse_nonlinearity(c_sol.nonlinearity);
            SolverConfig cfg;
            cfg.n = c_sol.grid;
            cfg.eps = sol_eps;
            cfg.dt = sol_dt;
            cfg.t_end = sol_tend;
            cfg.snapshot_stride = sol_stride;
            cfg.seed = c_sol.seed;
            Trajectory traj = evolve(F, build_data(d_sol, c_sol.grid), cfg);
            fs::create_directories(c_sol.out);
            save_trajectory((fs::path(c_sol.out) / "trajectory").string(), traj);
            write_text(fs::path(c_sol.out) / "config_echo.ini",
                       echo_config(*solve));
            json manifest = {{"experiment", "solve"},
                             {"verdict", traj.overflowed ? "overflowed" : "completed"},
                             {"generated_at", timestamp()},
                             {"files", {"trajectory", "config_echo.ini"}}};
            write_text(fs::path(c_sol.out) / "manifest.json", manifest.dump(2) + "\n");
            if (!c_sol.quiet)
                std::cout << "solve: " << traj.snapshots.size() << " snapshots"
                          << (traj.overflowed ? " (overflowed, truncated)" : "") << "\n";
            return traj.overflowed ? kFail : kPass;
        }
        if (*gauge_check) {
            ComplexPolynomial4 F = parse_nonlinearity(c_gc.nonlinearity);
            std::vector<GridFunction> data;
            std::vector<double> freqs;
            for (int K : gc_freqs) {
                data.push_back(GridFunction::harmonic(c_gc.grid, 1, Complex(0.2, 0.0)) +
                               GridFunction::harmonic(c_gc.grid, K,
                                                      std::pow(double(K), -2.6)));
                freqs.push_back(double(K));
            }
            SolverConfig cfg;
            cfg.n = c_gc.grid;
            cfg.eps = gc_eps;
            cfg.dt = gc_dt;
            cfg.t_end = gc_tend;
            cfg.snapshot_stride = 1;
            cfg.seed = c_gc.seed;
            auto study = gauge_cancellation_study(F, data, freqs, cfg, gc_s, !gc_raw);
            ExperimentReport rep;
            rep.id = "gauge_check";
            rep.seed = c_gc.seed;
            rep.inputs = {{"F", poly_to_json(F)}, {"n", c_gc.grid}, {"s", gc_s},
                          {"eps", gc_eps},        {"dt", gc_dt},    {"t_end", gc_tend},
                          {"freqs", gc_freqs},    {"use_gauge", !gc_raw}};
            rep.series = {{"frequencies", freqs},
                          {"residual_norms", study.d_norms},
                          {"dxw_norms", study.dxw_norms}};
            rep.fits = {{"exponent_residual", study.exponent_d},
                        {"exponent_dxw", study.exponent_dxw}};
            rep.verdict = study.pass ? Verdict::Pass : Verdict::Fail;
            return finalize(c_gc, rep, *gauge_check);
        }
        if (*energy) {
            ComplexPolynomial4 F = parse_nonlinearity(c_en.nonlinearity);
            SolverConfig cfg;
            cfg.n = c_en.grid;
            cfg.eps = en_eps;
            cfg.dt = en_dt;
            cfg.t_end = en_tend;
            cfg.snapshot_stride = 1;
            cfg.seed = c_en.seed;
            Trajectory traj = evolve(F, build_data(d_en, c_en.grid), cfg);
            auto tr = energy_trace(F, traj, en_s, en_r);
            auto ineq_rep = verify_energy_inequality(tr);
            ExperimentReport rep;
            rep.id = "energy";
            rep.seed = c_en.seed;
            rep.inputs = {{"F", poly_to_json(F)}, {"n", c_en.grid}, {"s", en_s},
                          {"r", en_r},            {"eps", en_eps},  {"dt", en_dt},
                          {"t_end", en_tend}};
            rep.series = {{"times", tr.times},       {"E_s", tr.E_s},
                          {"E_r", tr.E_r},           {"E_r_naive", tr.E_r_naive},
                          {"comp_u", tr.comp_u},     {"comp_v", tr.comp_v},
                          {"comp_W", tr.comp_W},     {"growth_ratios", ineq_rep.ratios}};
            rep.fits = {{"c1_hat", ineq_rep.c1_hat}, {"E_s_initial", tr.K}};
            rep.verdict = std::isfinite(ineq_rep.c1_hat) && !traj.overflowed
                              ? Verdict::Pass
                              : Verdict::Inconclusive;
            return finalize(c_en, rep, *energy);
        }
        if (*eps_conv) {
            ComplexPolynomial4 F = parse_nonlinearity(c_ec.nonlinearity);
            auto rep = eps_convergence_study(F, build_data(d_ec, c_ec.grid), ec_eps, ec_s,
                                             ec_tend, ec_dt, c_ec.seed);
            return finalize(c_ec, rep, *eps_conv);
        }
        if (*bona) {
            ComplexPolynomial4 F = parse_nonlinearity(c_bs.nonlinearity);
            auto rep = bona_smith_study(F, build_data(d_bs, c_bs.grid), bs_nlist, bs_s, bs_s0,
                                        bs_r, bs_tend, bs_dt, c_bs.seed);
            return finalize(c_bs, rep, *bona);
        }
        if (*smooth) {
            ComplexPolynomial4 F = parse_nonlinearity(c_sp.nonlinearity);
            auto rep = smoothing_probe(F, build_data(d_sp, c_sp.grid), spc, c_sp.seed);
            return finalize(c_sp, rep, *smooth);
        }
        if (*ineq) {
            InequalityKind which = iq_which == "bilinear_2_1"     ? InequalityKind::Bilinear21
                                   : iq_which == "product_2_2"    ? InequalityKind::Product22
                                   : iq_which == "projection_2_3" ? InequalityKind::Projection23
                                                                  : InequalityKind::Commutator25;
            auto rep = inequality_probe(which, iqp, iq_samples, iq_nlist, c_iq.seed);
            return finalize(c_iq, rep, *ineq);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (token " << e.token_index << ", offset "
                  << e.offset << ")\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

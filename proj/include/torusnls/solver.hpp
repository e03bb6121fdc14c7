#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torusnls/poly.hpp"
#include "torusnls/spectral.hpp"

namespace torusnls {

// Time integration of the parabolic-regularized equation
//   dt u + (i - eps) dx^2 u = F(u, dx u, conj u, conj dx u)
// by integrating-factor RK4: the linear factor e^{(i-eps)k^2 t} is
// applied exactly in coefficient space, eps = 0 runs are diagnostic.
struct SolverConfig {
    int n = 256;
    double eps = 0.0;
    double dt = 1e-3;
    double t_end = 0.1;
    int snapshot_stride = 1;
    std::uint64_t seed = 0;
    std::vector<double> diagnostic_norms = {};  // H^s exponents recorded per snapshot
};

struct SnapshotDiagnostics {
    std::vector<double> hs_norms;
    Complex p0_fbeta;
};

struct Trajectory {
    SolverConfig config;
    std::vector<double> times;
    std::vector<GridFunction> snapshots;
    std::vector<SnapshotDiagnostics> diagnostics;
    bool overflowed = false;      // blow-up: truncated and flagged, never fatal
    double truncation_time = 0.0;
};

// Dealiased pointwise evaluation of a polynomial at
// (u, dx u, conj u, conj dx u); products computed on a grid padded to
// the polynomial's total degree.
GridFunction apply_poly(const ComplexPolynomial4& p, const GridFunction& u);

// Right-hand side F(u, dx u, conj u, conj dx u); throws OverflowSignal
// on non-finite output (caught by evolve, which truncates and flags).
GridFunction nonlinearity_apply(const ComplexPolynomial4& F, const GridFunction& u);

struct OverflowSignal {};

Trajectory evolve(const ComplexPolynomial4& F, const GridFunction& phi,
                  const SolverConfig& cfg);

struct DerivedFields {
    GridFunction u, v, w;  // u, dx u, dx^2 u
};
DerivedFields derived_fields(const Trajectory& traj, int t_index);

// Discrete distributional residual
//   || (u(t+dt) - u(t-dt))/(2 dt) + (i-eps) dx^2 u(t) - F(...)(t) ||_{H^norm_s}
// at an interior snapshot (requires snapshot_stride == 1).
double residual(const ComplexPolynomial4& F, const Trajectory& traj, int t_index,
                double norm_s = 0.0);

// Directory persistence: manifest.json plus one binary snapshot per step.
void save_trajectory(const std::string& dir, const Trajectory& traj);
Trajectory load_trajectory(const std::string& dir);

}  // namespace torusnls

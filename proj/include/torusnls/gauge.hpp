#pragma once

#include <vector>

#include "torusnls/poly.hpp"
#include "torusnls/solver.hpp"
#include "torusnls/spectral.hpp"

namespace torusnls {

// Gauge transformation removing the non-mean first-order term of the
// twice-differentiated equation:
//   Lambda = -(i/2) dx^{-1} F_beta(u, v, conj u, conj v),
//   W = e^{-Lambda} w,  w = dx^2 u.
struct GaugeState {
    GridFunction lambda;
    GridFunction W;
    Complex p0_fbeta;  // mean of F_beta, carried separately (zero mode of dx^{-1} dropped)
    double source_time = 0.0;
};

GaugeState gauge_forward(const ComplexPolynomial4& F, const GridFunction& u,
                         double source_time = 0.0);

struct GaugeIdentityReport {
    double residual_dx_lambda;    // || dx Lambda + (i/2) Pneq0 F_beta ||_{L^2}
    double residual_dxx_lambda;   // || dx^2 Lambda + (i/2) dx F_beta ||_{L^2}
    bool pass;
};

GaugeIdentityReport check_gauge_identities(const GaugeState& state,
                                           const ComplexPolynomial4& F,
                                           const GridFunction& u);

// Discrete residual of the gauged equation at an interior snapshot:
//   D = dt W + (i-eps) dx^2 W - (P0 F_beta) dx W + i eps (Pneq0 F_beta) dx W
//       - F_betabar e^{-Lambda + conj Lambda} conj(dx W),
// with dt W by central difference. Everything first-order in W must
// cancel, leaving a zero-order remainder.
struct TransformedResidual {
    double d_norm;    // || D ||_{H^{s-3}}
    double dxw_norm;  // || dx W ||_{H^{s-3}}
};

TransformedResidual transformed_residual(const ComplexPolynomial4& F, const Trajectory& traj,
                                         int t_index, double s, bool use_gauge = true);

// Regression of log ||D|| against log ||dx W|| over runs from data of
// increasing frequency content; cancellation shows up as ||D|| growing
// strictly slower than ||dx W||.
struct CancellationStudy {
    double exponent_d;
    double exponent_dxw;
    bool pass;  // exponent_d <= 0.7 * exponent_dxw
    std::vector<double> d_norms;
    std::vector<double> dxw_norms;
};

CancellationStudy gauge_cancellation_study(const ComplexPolynomial4& F,
                                           const std::vector<GridFunction>& data,
                                           const std::vector<double>& frequencies,
                                           const SolverConfig& cfg, double s,
                                           bool use_gauge = true);

}  // namespace torusnls

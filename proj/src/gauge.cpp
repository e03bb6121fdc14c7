#include "torusnls/gauge.hpp"

#include <cmath>

#include "torusnls/fit.hpp"

namespace torusnls {

namespace {

GridFunction pointwise_exp(const GridFunction& f) {
    ComplexVector v = f.values();
    for (int j = 0; j < f.size(); ++j) v[j] = std::exp(v[j]);
    return GridFunction::from_values(std::move(v));
}

}  // namespace

GaugeState gauge_forward(const ComplexPolynomial4& F, const GridFunction& u,
                         double source_time) {
    if (!u.values().allFinite()) throw std::invalid_argument("gauge_forward: non-finite input");
    const ComplexPolynomial4 f_beta = wirtinger_derivative(F, var::beta);
    const GridFunction fb = apply_poly(f_beta, u);

    GaugeState st;
    st.source_time = source_time;
    st.p0_fbeta = project_P0(fb);
    st.lambda = Complex(0.0, -0.5) * inverse_derivative(fb);
    const GridFunction w = derivative(u, 2);
    if (sobolev_norm(st.lambda, 0.0) == 0.0)
        st.W = w;  // trivial gauge: keep the field bit-exact
    else
        st.W = dealias_product({pointwise_exp(Complex(-1.0, 0.0) * st.lambda), w}, 2);
    return st;
}

GaugeIdentityReport check_gauge_identities(const GaugeState& state,
                                           const ComplexPolynomial4& F,
                                           const GridFunction& u) {
    const ComplexPolynomial4 f_beta = wirtinger_derivative(F, var::beta);
    const GridFunction fb = apply_poly(f_beta, u);

    GridFunction r1 =
        derivative(state.lambda) + Complex(0.0, 0.5) * project(fb, Projection::Pneq0);
    GridFunction r2 = derivative(state.lambda, 2) + Complex(0.0, 0.5) * derivative(fb);

    GaugeIdentityReport rep;
    rep.residual_dx_lambda = sobolev_norm(r1, 0.0);
    rep.residual_dxx_lambda = sobolev_norm(r2, 0.0);
    const double tol = 1e-10 * (1.0 + sobolev_norm(fb, 0.0));
    rep.pass = rep.residual_dx_lambda < tol && rep.residual_dxx_lambda < tol;
    return rep;
}

TransformedResidual transformed_residual(const ComplexPolynomial4& F, const Trajectory& traj,
                                         int t_index, double s, bool use_gauge) {
    if (t_index <= 0 || t_index + 1 >= static_cast<int>(traj.snapshots.size()))
        throw std::invalid_argument("transformed_residual: interior index required");
    const double eps = traj.config.eps;
    const double dt = traj.times[t_index + 1] - traj.times[t_index];

    auto gauged_w = [&](int idx) {
        if (use_gauge) return gauge_forward(F, traj.snapshots[idx], traj.times[idx]).W;
        return derivative(traj.snapshots[idx], 2);
    };

    const GridFunction& u = traj.snapshots[t_index];
    const GridFunction W = gauged_w(t_index);
    const GridFunction dW = derivative(W);
    const GridFunction dtW =
        (1.0 / (2.0 * dt)) * (gauged_w(t_index + 1) - gauged_w(t_index - 1));

    const ComplexPolynomial4 f_beta = wirtinger_derivative(F, var::beta);
    const ComplexPolynomial4 f_beta_bar = wirtinger_derivative(F, var::beta_bar);
    const GridFunction fb = apply_poly(f_beta, u);
    const GridFunction fbb = apply_poly(f_beta_bar, u);
    const Complex p0 = project_P0(fb);

    GridFunction lambda = use_gauge ? (Complex(0.0, -0.5) * inverse_derivative(fb))
                                    : GridFunction::zero(u.size());
    GridFunction conj_factor =
        pointwise_exp(Complex(-1.0, 0.0) * lambda + lambda.conjugate());

    GridFunction D = dtW + Complex(-eps, 1.0) * derivative(W, 2) - p0 * dW +
                     Complex(0.0, eps) * dealias_product({project(fb, Projection::Pneq0), dW}, 2) -
                     dealias_product({fbb, conj_factor, dW.conjugate()}, 3);

    return {sobolev_norm(D, s - 3.0), sobolev_norm(dW, s - 3.0)};
}

CancellationStudy gauge_cancellation_study(const ComplexPolynomial4& F,
                                           const std::vector<GridFunction>& data,
                                           const std::vector<double>& frequencies,
                                           const SolverConfig& cfg, double s,
                                           bool use_gauge) {
    CancellationStudy study;
    for (const auto& phi : data) {
        Trajectory traj = evolve(F, phi, cfg);
        int mid = static_cast<int>(traj.snapshots.size()) / 2;
        TransformedResidual tr = transformed_residual(F, traj, mid, s, use_gauge);
        study.d_norms.push_back(tr.d_norm);
        study.dxw_norms.push_back(tr.dxw_norm);
    }
    std::vector<double> logk, logd, logw;
    for (size_t i = 0; i < frequencies.size(); ++i) {
        logk.push_back(std::log(frequencies[i]));
        logd.push_back(std::log(study.d_norms[i]));
        logw.push_back(std::log(study.dxw_norms[i]));
    }
    study.exponent_d = fit_linear(logk, logd).slope;
    study.exponent_dxw = fit_linear(logk, logw).slope;
    study.pass = study.exponent_d <= 0.7 * study.exponent_dxw;
    return study;
}

}  // namespace torusnls

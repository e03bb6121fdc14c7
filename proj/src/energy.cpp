#include "torusnls/energy.hpp"

#include <cmath>

#include "torusnls/errors.hpp"
#include "torusnls/gauge.hpp"

namespace torusnls {

EnergyTrace energy_trace(const ComplexPolynomial4& F, const Trajectory& traj, double s,
                         double r) {
    if (!(s > 2.5) || !(s <= r))
        throw PreconditionViolated("energy_trace: need 5/2 < s <= r");

    EnergyTrace tr;
    tr.s = s;
    tr.r = r;
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        const GridFunction& u = traj.snapshots[i];
        const GridFunction v = derivative(u);
        const GridFunction w = derivative(u, 2);
        const GridFunction W = gauge_forward(F, u, traj.times[i]).W;

        auto energy = [&](double sigma, const GridFunction& second) {
            double a = sobolev_norm(u, sigma - 2.0);
            double b = sobolev_norm(v, sigma - 2.0);
            double c = sobolev_norm(second, sigma - 2.0);
            return std::sqrt(a * a + b * b + c * c);
        };

        tr.times.push_back(traj.times[i]);
        tr.comp_u.push_back(sobolev_norm(u, s - 2.0));
        tr.comp_v.push_back(sobolev_norm(v, s - 2.0));
        tr.comp_W.push_back(sobolev_norm(W, s - 2.0));
        tr.E_s.push_back(energy(s, W));
        tr.E_r.push_back(energy(r, W));
        tr.E_r_naive.push_back(energy(r, w));
    }
    tr.K = tr.E_s.empty() ? 0.0 : tr.E_s.front();
    return tr;
}

EnergyInequalityReport verify_energy_inequality(const EnergyTrace& trace) {
    const size_t n = trace.times.size();
    if (n < 8) throw PreconditionViolated("verify_energy_inequality: need >= 8 snapshots");

    EnergyInequalityReport rep;
    rep.c1_hat = -std::numeric_limits<double>::infinity();
    for (size_t i = 1; i + 1 < n; ++i) {
        double dt = trace.times[i + 1] - trace.times[i - 1];
        double dE = (trace.E_r[i + 1] - trace.E_r[i - 1]) / dt;
        double ratio = dE / (1.0 + trace.E_r[i]);
        rep.ratios.push_back(ratio);
        rep.c1_hat = std::max(rep.c1_hat, ratio);
    }
    return rep;
}

}  // namespace torusnls

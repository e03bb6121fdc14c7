#pragma once

#include <vector>

#include "torusnls/poly.hpp"
#include "torusnls/solver.hpp"

namespace torusnls {

// Energy functional
//   E_s(t) = sqrt(||u||_{H^{s-2}}^2 + ||v||_{H^{s-2}}^2 + ||W||_{H^{s-2}}^2)
// with v = dx u and W the gauged second derivative. Requires 5/2 < s <= r.
struct EnergyTrace {
    double s = 0.0, r = 0.0;
    std::vector<double> times;
    std::vector<double> E_s;
    std::vector<double> E_r;
    std::vector<double> E_r_naive;  // same norm with raw w instead of W, for contrast
    std::vector<double> comp_u, comp_v, comp_W;  // H^{s-2} components
    double K = 0.0;  // E_s(0)
};

EnergyTrace energy_trace(const ComplexPolynomial4& F, const Trajectory& traj, double s,
                         double r);

struct EnergyInequalityReport {
    double c1_hat;  // max over interior times of (dt E_r)/(1 + E_r)
    std::vector<double> ratios;
};

EnergyInequalityReport verify_energy_inequality(const EnergyTrace& trace);

}  // namespace torusnls

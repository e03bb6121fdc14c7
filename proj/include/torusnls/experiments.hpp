#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "torusnls/poly.hpp"
#include "torusnls/solver.hpp"

namespace torusnls {

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "inconclusive";
    }
}

// Structured experiment record: every reported number is recomputable
// from the stored series, and identical seeds reproduce identical JSON.
struct ExperimentReport {
    std::string id;
    nlohmann::json inputs;
    nlohmann::json series;
    nlohmann::json fits;
    Verdict verdict = Verdict::Inconclusive;
    std::uint64_t seed = 0;
    std::string note;
};

nlohmann::json report_to_json(const ExperimentReport& r);

// Vanishing-viscosity rate: sup_t ||u^{eps1} - u^{eps2}||_{H^{s-1}} over
// consecutive eps pairs, fitted against |eps1 - eps2| on log-log axes.
// Pass iff fitted order >= 0.45.
ExperimentReport eps_convergence_study(const ComplexPolynomial4& F, const GridFunction& phi,
                                       std::vector<double> eps_list, double s, double t_end,
                                       double dt, std::uint64_t seed = 0);

// Bona-Smith approximation rates: data-level slope of ||phi_N - phi||_{H^r}
// within 10% of -(s-r), and solution-level Cauchy decay of
// ||u_{2M} - u_M||_{L^inf_T H^s} with exponent >= 0.8 (s - s0).
ExperimentReport bona_smith_study(const ComplexPolynomial4& F, const GridFunction& phi,
                                  std::vector<int> n_list, double s, double s0, double r,
                                  double t_end, double dt, std::uint64_t seed = 0);

struct SmoothingProbeConfig {
    double eps = 1e-3;
    double s = 2.6;
    double delta = 0.25;
    double t_end = 0.012;
    double dt = 6e-5;
    int k_min = 8;         // dyadic fitting band [k_min, n/8]
    double window = 0.2;   // admissible times satisfy eps k^2 t < window
};

// One-sided smoothing mechanism: integrating-factor gain
// log(|what(t,k)| / |what(0,k)|) fitted against -k int_0^t Im P0 Theta_beta
// over the predicted dyadic band; ill-posed F must show proportionality
// within 25% of 1 and band asymmetry > 4, the well-posed control must
// show asymmetry < 1.5.
ExperimentReport smoothing_probe(const ComplexPolynomial4& F, const GridFunction& phi,
                                 const SmoothingProbeConfig& cfg, std::uint64_t seed = 0);

enum class InequalityKind { Bilinear21, Product22, Projection23, Commutator25 };

struct InequalityParams {
    // Prop 2.1 exponents
    double s0 = 0.2, s1 = 0.2, s2 = 0.2;
    // Prop 2.2 / Lemma 2.3 exponents
    double s = 1.0, r = 0.6;
    // commutator estimate exponents
    double comm_s = 0.6, comm_eps = 0.1;
};

// Seeded random-sample probe of the bilinear/product/projection/
// commutator estimates: max LHS/RHS per grid size must grow by < 2x
// from n to 2n.
ExperimentReport inequality_probe(InequalityKind which, const InequalityParams& params,
                                  int sample_count, std::vector<int> n_list,
                                  std::uint64_t seed);

}  // namespace torusnls

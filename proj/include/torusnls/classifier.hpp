#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "torusnls/poly.hpp"
#include "torusnls/spectral.hpp"

namespace torusnls {

// Jet-variable indices extending the four density variables
// (psi, psi_x, conj psi, conj psi_x) with second-order derivatives.
namespace jet {
inline constexpr int psi_xx = 4;
inline constexpr int psi_bar_xx = 5;
}  // namespace jet

JetPoly lift(const DifferentialDensity& p);

// Formal total x-derivative D_x, introducing psi_xx / conj psi_xx.
JetPoly total_derivative(const DifferentialDensity& p);

// D_x of a zeroth-order polynomial (variables psi, conj psi only);
// stays first-order.
DifferentialDensity total_derivative_zeroth(const DifferentialDensity& p);

// Variational derivatives E_psi(G) = dG/dpsi - D_x(dG/dpsi_x) and the
// conjugate counterpart. Both vanish identically iff G is a total
// x-derivative plus a constant.
std::pair<JetPoly, JetPoly> euler_operator(const DifferentialDensity& g);

// Normalized integral M[psi] = (1/2pi) int Im F_beta(psi, psi_x, ...) dx,
// evaluated as the grid mean with psi_x computed spectrally.
double mizohata_functional(const ComplexPolynomial4& F, const GridFunction& psi);

// Null-Lagrangian homotopy: given an exact density G with zero constant
// term, returns Phi(psi, conj psi) with D_x(Phi) = G exactly.
DifferentialDensity construct_potential(const DifferentialDensity& g);

struct Witness {
    std::string description;   // symbolic form of psi*
    GridFunction realization;  // grid realization used to evaluate M
};

struct ClassificationVerdict {
    enum class Status { WellPosed, IllPosed };
    Status status;
    std::optional<DifferentialDensity> potential;  // WellPosed only
    std::optional<Witness> witness;                // IllPosed only
    double mizohata_value_at_witness = 0.0;
    std::uint64_t seed = 0;

    bool well_posed() const { return status == Status::WellPosed; }
};

// Exact dichotomy: WellPosed iff both Euler expressions of G = Im F_beta
// vanish identically and G(0,0,0,0) = 0; otherwise IllPosed with a
// witness found by find_witness.
ClassificationVerdict decide(const ComplexPolynomial4& F, std::uint64_t seed = 0,
                             int grid_size = 256);

// Searches constants, then low lattice trigonometric polynomials, then
// seeded random trigonometric polynomials of degree <= 8 for psi* with
// |M[psi*]| > 1e-6. Throws WitnessNotFound after the full budget.
Witness find_witness(const ComplexPolynomial4& F, std::uint64_t seed = 0,
                     int grid_size = 256, double* m_out = nullptr);

nlohmann::json verdict_to_json(const ClassificationVerdict& v);
nlohmann::json poly_to_json(const ComplexPolynomial4& p);

}  // namespace torusnls

#pragma once

#include <string>
#include <vector>

namespace lieflow::cli {

/// One measured quantity with its bound; pass means value <= tol.
struct Check {
  std::string label;
  double value = 0.0;
  double tol = 0.0;
  bool pass() const { return value <= tol; }
};

// Conservation of energy, spatial momentum and Lax spectrum for random
// rigid bodies in dimensions 3..5.
std::vector<Check> checks_rigid_conservation();

// n = 3 trajectory against an independently coded classical Euler system.
std::vector<Check> checks_classical_oracle();

// Manakov polynomial coefficients along an n = 4 trajectory, plus the
// integral counts for n = 3, 4.
std::vector<Check> checks_manakov();

// Pairwise Lie-Poisson brackets of the n = 4 Manakov coefficients at
// random dual points.
std::vector<Check> checks_involution();

// b_k at k = 0 against the transport closed form on random fields.
std::vector<Check> checks_b0_closed_form();

// Spectral k = 0 run against the characteristics solver, and the breaking
// time formula.
std::vector<Check> checks_burgers_oracle();

// Camassa-Holm right-hand side agreement and the pinned k = 1
// conservation regime (T = 2, u0 = 0.5 cos x, N = 256, dt = 5e-4).
std::vector<Check> checks_camassa_holm();

// Flow-map momentum density constancy: k = 0 to half the breaking time,
// k = 1 in the pinned regime above.
std::vector<Check> checks_lagrangian_momentum();

// Exponential map: derivative probes at zero, exact identity at zero, ray
// homogeneity.
std::vector<Check> checks_exponential_map();

// Structure-constant Euler-Arnold flow against the dedicated rigid-body
// integrator.
std::vector<Check> checks_generic_cross_check();

// Conservation checks restricted to windows where the pinned grid
// resolves the solution; the verify CLI runs these.
std::vector<Check> checks_circle_conservation();

}  // namespace lieflow::cli

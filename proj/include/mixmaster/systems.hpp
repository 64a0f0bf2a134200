// Wainwright-Hsu equations for vacuum/perfect-fluid Bianchi class A models
// and the Bianchi VI*_{-1/9} system, with their constraints and seeds near
// the Kasner circle.
#pragma once

#include <array>

#include "mixmaster/adams.hpp"
#include "mixmaster/chains.hpp"
#include "mixmaster/kasner.hpp"

namespace mixmaster::odes {

using kasner::BasePoint;
using kasner::TransitionVariable;

/// Bianchi class A (IX when all N_i > 0, II when only one is nonzero).
struct StateA {
  Real N1 = 0, N2 = 0, N3 = 0;
  Real sigma_plus = 0, sigma_minus = 0;

  static constexpr std::size_t size = 5;
  State to_vector() const { return {N1, N2, N3, sigma_plus, sigma_minus}; }
  static StateA from(const State& y);
};

struct StateB {
  Real sigma_plus = 0, sigma_minus = 0;
  Real sigma_cross = 0, sigma_two = 0;
  Real n_minus = 0, A = 0;

  static constexpr std::size_t size = 6;
  State to_vector() const { return {sigma_plus, sigma_minus, sigma_cross, sigma_two, n_minus, A}; }
  static StateB from(const State& y);
  Real of(TransitionVariable v) const;
  Real& of(TransitionVariable v);
};

template <std::size_t N>
using Jacobian = std::array<std::array<Real, N>, N>;

Real curvature_K(const StateA& s);
Real deceleration(const StateA& s, Real gamma);
Real deceleration(const StateB& s, Real gamma);

/// 1 - Sigma_+^2 - Sigma_-^2 - K; zero in vacuum.
Real omega_residual(const StateA& s);
/// 1 - Sigma^2 - N_-^2 - 4 A^2; zero in vacuum.
Real omega_residual(const StateB& s);
/// (Sigma_+ + sqrt3 Sigma_-) A - Sigma_cross N_-
Real g_residual(const StateB& s);

/// Toward the singularity the field is negated.
StateA rhs_bianchiA(const StateA& s, Real gamma = 1, Direction d = Direction::Forward);
StateB rhs_bianchiB(const StateB& s, Real gamma = 1, Direction d = Direction::Forward);

Jacobian<5> jacobian_bianchiA(const StateA& s, Real gamma = 1, Direction d = Direction::Forward);
Jacobian<6> jacobian_bianchiB(const StateB& s, Real gamma = 1, Direction d = Direction::Forward);

/// Forward-time fields in the form integrate() expects.
Rhs field_bianchiA(Real gamma = 1);
Rhs field_bianchiB(Real gamma = 1);

/// Predicted Omega' and g' from the auxiliary equations, forward time.
std::array<Real, 2> auxiliary_rates(const StateB& s, Real gamma = 1);

/// (Omega, g) residuals of a state vector of size 5 or 6.
std::array<Real, 2> residuals_of(const State& y);

StateA kasner_state_a(const BasePoint& b);
StateB kasner_state_b(const BasePoint& b);

/// Restores both constraints: A from g = 0, then the magnitude of
/// (Sigma_+, Sigma_-) from Omega = 0, iterated to a fixed point. The angle of
/// (Sigma_+, Sigma_-) is kept. Throws IntegrationError when the fixed point
/// is not reached.
void project_constraints(StateB& s);
/// Rescales (Sigma_+, Sigma_-) so that Omega = 0.
void project_constraints(StateA& s);

/// b perturbed by eps in exit and by transverse in the other two transition
/// variables (transverse < 0 means eps), then constraint-corrected.
StateB seed_near_chain(const BasePoint& b, TransitionVariable exit, Real eps, Real transverse = -1);
/// Seed for the first transition of chain.
StateB seed_near_chain(const chains::HeteroclinicChain& chain, Real eps, Real transverse = -1);

/// Bianchi IX seed: N1 = N2 = N3 = eps off the Kasner point b.
StateA seed_bianchi9(const BasePoint& b, Real eps);
/// Bianchi II seed: only the N growing toward the singularity at b is eps.
StateA seed_bianchi2(const BasePoint& b, Real eps);
/// Index (0..2) of the N_i that grows toward the singularity at b.
int unstable_curvature_index(const BasePoint& b);

}  // namespace mixmaster::odes

#include "mixmaster/systems.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mixmaster::odes {

namespace {

const Real kSqrt3 = std::sqrt(3.0L);

Real fluid_c(Real gamma) { return 0.5L * (3 * gamma - 2); }

template <class S>
S negate_if(S s, Direction d) {
  if (d == Direction::Forward) return s;
  auto v = s.to_vector();
  for (auto& x : v) x = -x;
  return S::from(v);
}

template <std::size_t N>
Jacobian<N> negate_if(Jacobian<N> j, Direction d) {
  if (d == Direction::TowardSingularity) {
    for (auto& row : j) {
      for (auto& x : row) x = -x;
    }
  }
  return j;
}

}  // namespace

StateA StateA::from(const State& y) {
  if (y.size() != size) throw std::invalid_argument("Bianchi A state needs 5 components");
  return {y[0], y[1], y[2], y[3], y[4]};
}

StateB StateB::from(const State& y) {
  if (y.size() != size) throw std::invalid_argument("Bianchi VI state needs 6 components");
  return {y[0], y[1], y[2], y[3], y[4], y[5]};
}

Real StateB::of(TransitionVariable v) const {
  switch (v) {
    case TransitionVariable::SigmaCross:
      return sigma_cross;
    case TransitionVariable::SigmaTwo:
      return sigma_two;
    case TransitionVariable::NMinus:
      return n_minus;
  }
  return 0;
}

Real& StateB::of(TransitionVariable v) {
  switch (v) {
    case TransitionVariable::SigmaCross:
      return sigma_cross;
    case TransitionVariable::SigmaTwo:
      return sigma_two;
    case TransitionVariable::NMinus:
      break;
  }
  return n_minus;
}

Real curvature_K(const StateA& s) {
  return 0.75L * (s.N1 * s.N1 + s.N2 * s.N2 + s.N3 * s.N3 - 2 * (s.N1 * s.N2 + s.N2 * s.N3 + s.N3 * s.N1));
}

Real omega_residual(const StateA& s) {
  return 1 - s.sigma_plus * s.sigma_plus - s.sigma_minus * s.sigma_minus - curvature_K(s);
}

Real omega_residual(const StateB& s) {
  Real sigma2 = s.sigma_plus * s.sigma_plus + s.sigma_minus * s.sigma_minus + s.sigma_two * s.sigma_two +
                s.sigma_cross * s.sigma_cross;
  return 1 - sigma2 - s.n_minus * s.n_minus - 4 * s.A * s.A;
}

Real g_residual(const StateB& s) { return (s.sigma_plus + kSqrt3 * s.sigma_minus) * s.A - s.sigma_cross * s.n_minus; }

Real deceleration(const StateA& s, Real gamma) {
  return 2 * (s.sigma_plus * s.sigma_plus + s.sigma_minus * s.sigma_minus) + fluid_c(gamma) * omega_residual(s);
}

Real deceleration(const StateB& s, Real gamma) {
  Real sigma2 = s.sigma_plus * s.sigma_plus + s.sigma_minus * s.sigma_minus + s.sigma_two * s.sigma_two +
                s.sigma_cross * s.sigma_cross;
  return 2 * sigma2 + fluid_c(gamma) * omega_residual(s);
}

StateA rhs_bianchiA(const StateA& s, Real gamma, Direction d) {
  const Real q = deceleration(s, gamma);
  const Real Sp = 0.5L * ((s.N2 - s.N3) * (s.N2 - s.N3) - s.N1 * (2 * s.N1 - s.N2 - s.N3));
  const Real Sm = 0.5L * kSqrt3 * (s.N3 - s.N2) * (s.N1 - s.N2 - s.N3);
  StateA out;
  out.N1 = (q - 4 * s.sigma_plus) * s.N1;
  out.N2 = (q + 2 * s.sigma_plus + 2 * kSqrt3 * s.sigma_minus) * s.N2;
  out.N3 = (q + 2 * s.sigma_plus - 2 * kSqrt3 * s.sigma_minus) * s.N3;
  out.sigma_plus = (q - 2) * s.sigma_plus - 3 * Sp;
  out.sigma_minus = (q - 2) * s.sigma_minus - 3 * Sm;
  return negate_if(out, d);
}

StateB rhs_bianchiB(const StateB& s, Real gamma, Direction d) {
  const Real q = deceleration(s, gamma);
  const Real Sx = s.sigma_cross, S2 = s.sigma_two, Nm = s.n_minus, A = s.A;
  StateB out;
  out.sigma_plus = (q - 2) * s.sigma_plus + 3 * S2 * S2 - 2 * Nm * Nm - 6 * A * A;
  out.sigma_minus =
      (q - 2) * s.sigma_minus - kSqrt3 * S2 * S2 + 2 * kSqrt3 * Sx * Sx - 2 * kSqrt3 * Nm * Nm + 2 * kSqrt3 * A * A;
  out.sigma_cross = (q - 2 - 2 * kSqrt3 * s.sigma_minus) * Sx - 8 * Nm * A;
  out.sigma_two = (q - 2 - 3 * s.sigma_plus + kSqrt3 * s.sigma_minus) * S2;
  out.n_minus = (q + 2 * s.sigma_plus + 2 * kSqrt3 * s.sigma_minus) * Nm + 6 * Sx * A;
  out.A = (q + 2 * s.sigma_plus) * A;
  return negate_if(out, d);
}

Jacobian<5> jacobian_bianchiA(const StateA& s, Real gamma, Direction d) {
  enum { n1, n2, n3, sp, sm };
  const Real c = fluid_c(gamma);
  const Real q = deceleration(s, gamma);
  const Real N1 = s.N1, N2 = s.N2, N3 = s.N3;
  const std::array<Real, 5> dK = {1.5L * (N1 - N2 - N3), 1.5L * (N2 - N1 - N3), 1.5L * (N3 - N1 - N2), 0, 0};
  std::array<Real, 5> dq{};
  for (int j = 0; j < 3; ++j) dq[j] = -c * dK[j];
  dq[sp] = (4 - 2 * c) * s.sigma_plus;
  dq[sm] = (4 - 2 * c) * s.sigma_minus;
  const std::array<Real, 5> dSp = {0.5L * (-4 * N1 + N2 + N3), 0.5L * (2 * (N2 - N3) + N1), 0.5L * (N1 - 2 * (N2 - N3)),
                                   0, 0};
  const Real h3 = 0.5L * kSqrt3;
  const std::array<Real, 5> dSm = {h3 * (N3 - N2), h3 * (2 * N2 - N1), h3 * (N1 - 2 * N3), 0, 0};

  Jacobian<5> J{};
  for (int j = 0; j < 5; ++j) {
    J[n1][j] = dq[j] * N1;
    J[n2][j] = dq[j] * N2;
    J[n3][j] = dq[j] * N3;
    J[sp][j] = dq[j] * s.sigma_plus - 3 * dSp[j];
    J[sm][j] = dq[j] * s.sigma_minus - 3 * dSm[j];
  }
  J[n1][n1] += q - 4 * s.sigma_plus;
  J[n1][sp] += -4 * N1;
  J[n2][n2] += q + 2 * s.sigma_plus + 2 * kSqrt3 * s.sigma_minus;
  J[n2][sp] += 2 * N2;
  J[n2][sm] += 2 * kSqrt3 * N2;
  J[n3][n3] += q + 2 * s.sigma_plus - 2 * kSqrt3 * s.sigma_minus;
  J[n3][sp] += 2 * N3;
  J[n3][sm] += -2 * kSqrt3 * N3;
  J[sp][sp] += q - 2;
  J[sm][sm] += q - 2;
  return negate_if(J, d);
}

Jacobian<6> jacobian_bianchiB(const StateB& s, Real gamma, Direction d) {
  enum { sp, sm, sx, s2, nm, a };
  const Real c = fluid_c(gamma);
  const Real q = deceleration(s, gamma);
  const Real Sp = s.sigma_plus, Sm = s.sigma_minus, Sx = s.sigma_cross, S2 = s.sigma_two, Nm = s.n_minus, A = s.A;
  const std::array<Real, 6> dq = {(4 - 2 * c) * Sp, (4 - 2 * c) * Sm, (4 - 2 * c) * Sx,
                                  (4 - 2 * c) * S2, -2 * c * Nm,      -8 * c * A};
  const std::array<Real, 6> lin = {Sp, Sm, Sx, S2, Nm, A};
  Jacobian<6> J{};
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) J[i][j] = dq[j] * lin[i];
  }
  J[sp][sp] += q - 2;
  J[sp][s2] += 6 * S2;
  J[sp][nm] += -4 * Nm;
  J[sp][a] += -12 * A;

  J[sm][sm] += q - 2;
  J[sm][s2] += -2 * kSqrt3 * S2;
  J[sm][sx] += 4 * kSqrt3 * Sx;
  J[sm][nm] += -4 * kSqrt3 * Nm;
  J[sm][a] += 4 * kSqrt3 * A;

  J[sx][sx] += q - 2 - 2 * kSqrt3 * Sm;
  J[sx][sm] += -2 * kSqrt3 * Sx;
  J[sx][nm] += -8 * A;
  J[sx][a] += -8 * Nm;

  J[s2][s2] += q - 2 - 3 * Sp + kSqrt3 * Sm;
  J[s2][sp] += -3 * S2;
  J[s2][sm] += kSqrt3 * S2;

  J[nm][nm] += q + 2 * Sp + 2 * kSqrt3 * Sm;
  J[nm][sp] += 2 * Nm;
  J[nm][sm] += 2 * kSqrt3 * Nm;
  J[nm][sx] += 6 * A;
  J[nm][a] += 6 * Sx;

  J[a][a] += q + 2 * Sp;
  J[a][sp] += 2 * A;
  return negate_if(J, d);
}

Rhs field_bianchiA(Real gamma) {
  return [gamma](Real, const State& y, State& dy) {
    StateA f = rhs_bianchiA({y[0], y[1], y[2], y[3], y[4]}, gamma);
    dy.resize(5);
    dy[0] = f.N1;
    dy[1] = f.N2;
    dy[2] = f.N3;
    dy[3] = f.sigma_plus;
    dy[4] = f.sigma_minus;
  };
}

Rhs field_bianchiB(Real gamma) {
  return [gamma](Real, const State& y, State& dy) {
    StateB f = rhs_bianchiB({y[0], y[1], y[2], y[3], y[4], y[5]}, gamma);
    dy.resize(6);
    dy[0] = f.sigma_plus;
    dy[1] = f.sigma_minus;
    dy[2] = f.sigma_cross;
    dy[3] = f.sigma_two;
    dy[4] = f.n_minus;
    dy[5] = f.A;
  };
}

std::array<Real, 2> auxiliary_rates(const StateB& s, Real gamma) {
  const Real q = deceleration(s, gamma);
  return {(2 * q - (3 * gamma - 2)) * omega_residual(s), 2 * (q + s.sigma_plus - 1) * g_residual(s)};
}

std::array<Real, 2> residuals_of(const State& y) {
  if (y.size() == StateA::size) return {omega_residual(StateA::from(y)), 0};
  if (y.size() == StateB::size) {
    auto s = StateB::from(y);
    return {omega_residual(s), g_residual(s)};
  }
  throw std::invalid_argument("state must have 5 or 6 components");
}

StateA kasner_state_a(const BasePoint& b) {
  StateA s;
  s.sigma_plus = b.sigma_plus.to_long_double();
  s.sigma_minus = kSqrt3 * b.sigma_minus_scaled.to_long_double();
  return s;
}

StateB kasner_state_b(const BasePoint& b) {
  StateB s;
  s.sigma_plus = b.sigma_plus.to_long_double();
  s.sigma_minus = kSqrt3 * b.sigma_minus_scaled.to_long_double();
  return s;
}

void project_constraints(StateB& s) {
  const Real r0 = std::hypot(s.sigma_plus, s.sigma_minus);
  if (!(r0 > 0)) throw IntegrationError("constraint correction needs a nonzero (Sigma_+, Sigma_-)");
  const Real cp = s.sigma_plus / r0, cm = s.sigma_minus / r0;
  const Real tiny = 8 * std::numeric_limits<Real>::epsilon();
  for (int it = 0; it < 60; ++it) {
    const Real lever = s.sigma_plus + kSqrt3 * s.sigma_minus;
    const Real product = s.sigma_cross * s.n_minus;
    if (product != 0 && std::fabs(lever) < 1e-12L) {
      throw IntegrationError("g-constraint cannot be solved for A at this point");
    }
    s.A = product == 0 ? 0 : product / lever;
    const Real rest = 1 - s.sigma_cross * s.sigma_cross - s.sigma_two * s.sigma_two - s.n_minus * s.n_minus -
                      4 * s.A * s.A;
    if (!(rest > 0)) throw IntegrationError("Omega-constraint has no solution: perturbation too large");
    const Real r = std::sqrt(rest);
    s.sigma_plus = r * cp;
    s.sigma_minus = r * cm;
    if (std::fabs(g_residual(s)) <= tiny && std::fabs(omega_residual(s)) <= tiny) return;
  }
  throw IntegrationError("constraint correction did not converge");
}

void project_constraints(StateA& s) {
  const Real r0 = std::hypot(s.sigma_plus, s.sigma_minus);
  if (!(r0 > 0)) throw IntegrationError("constraint correction needs a nonzero (Sigma_+, Sigma_-)");
  const Real rest = 1 - curvature_K(s);
  if (!(rest > 0)) throw IntegrationError("Omega-constraint has no solution: perturbation too large");
  const Real scale = std::sqrt(rest) / r0;
  s.sigma_plus *= scale;
  s.sigma_minus *= scale;
}

StateB seed_near_chain(const BasePoint& b, TransitionVariable exit, Real eps, Real transverse) {
  if (!(eps >= 0) || eps > 1e-3L) throw std::invalid_argument("seed eps must lie in [0, 1e-3]");
  if (transverse < 0) transverse = eps;
  StateB s = kasner_state_b(b);
  for (auto v : kasner::kTransitionVariables) s.of(v) = v == exit ? eps : transverse;
  project_constraints(s);
  return s;
}

StateB seed_near_chain(const chains::HeteroclinicChain& chain, Real eps, Real transverse) {
  if (chain.nodes.empty() || chain.transitions.empty()) throw std::invalid_argument("chain has no transitions");
  return seed_near_chain(chain.nodes.front(), chains::variable_of(chain.transitions.front()), eps, transverse);
}

int unstable_curvature_index(const BasePoint& b) {
  auto e = kasner::eigenvalues_at(b);
  const std::array<const kasner::QuadraticSurd*, 3> mu = {&e.mu1, &e.mu2, &e.mu3};
  for (int i = 0; i < 3; ++i) {
    if (mu[static_cast<std::size_t>(i)]->sign() < 0) return i;
  }
  throw std::invalid_argument("no unstable curvature direction at a Taub point");
}

StateA seed_bianchi9(const BasePoint& b, Real eps) {
  if (!(eps >= 0) || eps > 1e-3L) throw std::invalid_argument("seed eps must lie in [0, 1e-3]");
  StateA s = kasner_state_a(b);
  s.N1 = s.N2 = s.N3 = eps;
  project_constraints(s);
  return s;
}

StateA seed_bianchi2(const BasePoint& b, Real eps) {
  if (!(eps >= 0) || eps > 1e-3L) throw std::invalid_argument("seed eps must lie in [0, 1e-3]");
  StateA s = kasner_state_a(b);
  switch (unstable_curvature_index(b)) {
    case 0:
      s.N1 = eps;
      break;
    case 1:
      s.N2 = eps;
      break;
    default:
      s.N3 = eps;
  }
  project_constraints(s);
  return s;
}

}  // namespace mixmaster::odes

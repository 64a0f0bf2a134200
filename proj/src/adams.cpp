#include "mixmaster/adams.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixmaster::odes {

namespace {

// Error-constant table of the Shampine-Gordon STEP routine (1-based).
constexpr std::array<Real, 14> kGstr = {0.0L,     0.5L,     0.0833L,  0.0417L,  0.0264L,  0.0188L,  0.0143L,
                                        0.0114L,  0.00936L, 0.00789L, 0.00679L, 0.00592L, 0.00524L, 0.00468L};

constexpr Real kUnit = std::numeric_limits<Real>::epsilon();
constexpr Real kTwoU = 2 * kUnit;
constexpr Real kFourU = 4 * kUnit;

Real sign_of(Real magnitude, Real s) { return s < 0 ? -std::fabs(magnitude) : std::fabs(magnitude); }

// One instance per integration. Arrays are 1-based to follow the published
// algorithm; index 0 is unused.
class Stepper {
 public:
  Stepper(const Rhs& rhs, std::size_t n, int kmax, std::size_t& evaluations)
      : rhs_(rhs), n_(n), kmax_(kmax), evaluations_(evaluations), y(n), yp(n), p(n), wt(n), phi(n) {
    for (auto& row : phi) row.fill(0);
  }

  void eval(Real t, const State& s, State& out) {
    rhs_(t, s, out);
    ++evaluations_;
  }

  // Returns false after a rejected attempt; the caller retries.
  bool attempt();
  void interpolate(Real xout, State& yout) const;

  const Rhs& rhs_;
  std::size_t n_;
  int kmax_;
  std::size_t& evaluations_;

  Real x = 0;
  State y, yp, p, wt;
  std::vector<std::array<Real, 17>> phi;
  std::array<Real, 14> psi{}, alpha{}, beta{};
  std::array<Real, 15> sig{}, v{}, w{}, g{};
  Real h = 0, hold = 0, eps = 1, xold = 0;
  int k = 1, kold = 0, ns = 0, ifail = 0;
  bool start = true, phase1 = true, nornd = true;

  // fixed-order mode
  int fixed_k = 0;
  Real fixed_h = 0;

  // Block 2 leftovers needed by block 4.
  Real erk = 0, erkm1 = 0, erkm2 = 0;
  int knew = 1;

  std::function<void(State&)> projection;
};

bool Stepper::attempt() {
  const std::size_t n = n_;
  // block 0
  if (std::fabs(h) < kFourU * std::fabs(x)) {
    throw IntegrationError("step size underflow at t = " + std::to_string(static_cast<double>(x)));
  }
  Real p5eps = 0.5L * eps;
  Real round = 0;
  for (std::size_t l = 0; l < n; ++l) round += (y[l] / wt[l]) * (y[l] / wt[l]);
  round = kTwoU * std::sqrt(round);
  if (p5eps < round) {
    // tolerance below what the arithmetic supports: relax it and retry
    eps = 2 * round * (1 + kFourU);
    return false;
  }
  g[1] = 1;
  g[2] = 0.5L;
  sig[1] = 1;
  if (start) {
    eval(x, y, yp);
    Real sum = 0;
    for (std::size_t l = 0; l < n; ++l) {
      phi[l][1] = yp[l];
      phi[l][2] = 0;
      sum += (yp[l] / wt[l]) * (yp[l] / wt[l]);
    }
    sum = std::sqrt(sum);
    if (fixed_k > 0) {
      h = sign_of(std::ldexp(fixed_h, -30), h);
    } else {
      Real absh = std::fabs(h);
      if (eps < 16 * sum * h * h) absh = 0.25L * std::sqrt(eps / sum);
      h = sign_of(std::max(absh, kFourU * std::fabs(x)), h);
    }
    hold = 0;
    k = 1;
    kold = 0;
    start = false;
    phase1 = true;
    nornd = true;
    if (p5eps <= 100 * round) {
      nornd = false;
      for (std::size_t l = 0; l < n; ++l) phi[l][15] = 0;
    }
  }

  {
    // block 1: coefficients for this step
    int kp1 = k + 1, kp2 = k + 2, km1 = k - 1, km2 = k - 2;
    if (h != hold) ns = 0;
    if (ns <= kold) ++ns;
    int nsp1 = ns + 1;
    if (k >= ns) {
      beta[ns] = 1;
      alpha[ns] = 1.0L / ns;
      Real temp1 = h * ns;
      sig[nsp1] = 1;
      for (int i = nsp1; i <= k; ++i) {
        Real temp2 = psi[i - 1];
        psi[i - 1] = temp1;
        beta[i] = beta[i - 1] * psi[i - 1] / temp2;
        temp1 = temp2 + h;
        alpha[i] = h / temp1;
        sig[i + 1] = i * alpha[i] * sig[i];
      }
      psi[k] = temp1;
      if (ns <= 1) {
        for (int iq = 1; iq <= k; ++iq) {
          v[iq] = 1.0L / (iq * (iq + 1));
          w[iq] = v[iq];
        }
      } else {
        if (k > kold) {
          v[k] = 1.0L / (k * kp1);
          for (int j = 1; j <= ns - 2; ++j) {
            int i = k - j;
            v[i] -= alpha[j + 1] * v[i + 1];
          }
        }
        Real temp5 = alpha[ns];
        for (int iq = 1; iq <= kp1 - ns; ++iq) {
          v[iq] -= temp5 * v[iq + 1];
          w[iq] = v[iq];
        }
        g[nsp1] = w[1];
      }
      for (int i = ns + 2; i <= kp1; ++i) {
        Real temp6 = alpha[i - 1];
        for (int iq = 1; iq <= kp2 - i; ++iq) w[iq] -= temp6 * w[iq + 1];
        g[i] = w[1];
      }
    }

    // block 2: predict, evaluate, estimate errors
    for (int i = nsp1; i <= k; ++i) {
      for (std::size_t l = 0; l < n; ++l) phi[l][static_cast<std::size_t>(i)] *= beta[i];
    }
    for (std::size_t l = 0; l < n; ++l) {
      phi[l][kp2] = phi[l][kp1];
      phi[l][kp1] = 0;
      p[l] = 0;
    }
    for (int j = 1; j <= k; ++j) {
      int i = kp1 - j;
      for (std::size_t l = 0; l < n; ++l) {
        p[l] += g[i] * phi[l][i];
        phi[l][i] += phi[l][i + 1];
      }
    }
    if (!nornd) {
      for (std::size_t l = 0; l < n; ++l) {
        Real tau = h * p[l] - phi[l][15];
        p[l] = y[l] + tau;
        phi[l][16] = (p[l] - y[l]) - tau;
      }
    } else {
      for (std::size_t l = 0; l < n; ++l) p[l] = y[l] + h * p[l];
    }
    xold = x;
    x += h;
    Real absh = std::fabs(h);
    eval(x, p, yp);

    erkm2 = 0;
    erkm1 = 0;
    erk = 0;
    for (std::size_t l = 0; l < n; ++l) {
      Real temp3 = 1 / wt[l];
      Real temp4 = yp[l] - phi[l][1];
      if (km2 > 0) erkm2 += ((phi[l][km1] + temp4) * temp3) * ((phi[l][km1] + temp4) * temp3);
      if (km2 >= 0) erkm1 += ((phi[l][k] + temp4) * temp3) * ((phi[l][k] + temp4) * temp3);
      erk += (temp4 * temp3) * (temp4 * temp3);
    }
    if (km2 > 0) erkm2 = absh * sig[km1] * kGstr[km2] * std::sqrt(erkm2);
    if (km2 >= 0) erkm1 = absh * sig[k] * kGstr[km1] * std::sqrt(erkm1);
    Real temp5 = absh * std::sqrt(erk);
    Real err = temp5 * (g[k] - g[kp1]);
    erk = temp5 * sig[kp1] * kGstr[k];
    knew = k;
    if (km2 > 0) {
      if (std::max(erkm1, erkm2) <= erk) knew = km1;
    } else if (km2 == 0) {
      if (erkm1 <= 0.5L * erk) knew = km1;
    }
    if (fixed_k == 0 && err > eps) {
      // block 3: failure, restore and shrink
      phase1 = false;
      x = xold;
      for (int i = 1; i <= k; ++i) {
        Real temp1 = 1 / beta[i];
        for (std::size_t l = 0; l < n; ++l) phi[l][i] = temp1 * (phi[l][i] - phi[l][i + 1]);
      }
      for (int i = 2; i <= k; ++i) psi[i - 1] = psi[i] - h;
      ++ifail;
      Real temp2 = 0.5L;
      if (ifail > 3 && p5eps < 0.25L * erk) temp2 = std::sqrt(p5eps / erk);
      if (ifail >= 3) knew = 1;
      h *= temp2;
      k = knew;
      if (std::fabs(h) < kFourU * std::fabs(x)) {
        throw IntegrationError("step size underflow at t = " + std::to_string(static_cast<double>(x)));
      }
      return false;
    }
  }

  // block 4: success, correct and pick the next order and step
  ifail = 0;
  int kp1 = k + 1, kp2 = k + 2, km1 = k - 1;
  kold = k;
  hold = h;
  Real temp1 = h * g[kp1];
  if (!nornd) {
    for (std::size_t l = 0; l < n; ++l) {
      Real rho = temp1 * (yp[l] - phi[l][1]) - phi[l][16];
      y[l] = p[l] + rho;
      phi[l][15] = (y[l] - p[l]) - rho;
    }
  } else {
    for (std::size_t l = 0; l < n; ++l) y[l] = p[l] + temp1 * (yp[l] - phi[l][1]);
  }
  if (projection) projection(y);
  eval(x, y, yp);
  for (std::size_t l = 0; l < n; ++l) {
    phi[l][kp1] = yp[l] - phi[l][1];
    phi[l][kp2] = phi[l][kp1] - phi[l][kp2];
  }
  for (int i = 1; i <= k; ++i) {
    for (std::size_t l = 0; l < n; ++l) phi[l][i] += phi[l][kp1];
  }

  if (fixed_k > 0) {
    if (k < fixed_k) ++k;
    h = sign_of(std::min(2 * std::fabs(h), fixed_h), h);
    return true;
  }

  Real absh = std::fabs(h);

  Real erkp1 = 0;
  bool raise = false, lower = false;
  if (knew == km1 || k == kmax_) phase1 = false;
  if (phase1) {
    raise = true;
  } else if (knew == km1) {
    lower = true;
  } else if (kp1 <= ns) {
    for (std::size_t l = 0; l < n; ++l) erkp1 += (phi[l][kp2] / wt[l]) * (phi[l][kp2] / wt[l]);
    erkp1 = absh * kGstr[kp1] * std::sqrt(erkp1);
    if (k == 1) {
      if (erkp1 < 0.5L * erk && k < kmax_) raise = true;
    } else if (erkm1 <= std::min(erk, erkp1)) {
      lower = true;
    } else if (erkp1 < erk && k < kmax_) {
      raise = true;
    }
  }
  if (raise) {
    k = kp1;
    erk = erkp1;
  } else if (lower) {
    k = km1;
    erk = erkm1;
  }

  Real hnew = h + h;
  if (!phase1 && p5eps < erk * std::ldexp(Real(1), k + 1)) {
    hnew = h;
    if (p5eps < erk) {
      Real r = std::pow(p5eps / erk, 1.0L / (k + 1));
      hnew = absh * std::max(0.5L, std::min(0.9L, r));
      hnew = sign_of(std::max(hnew, kFourU * std::fabs(x)), h);
    }
  }
  h = hnew;
  return true;
}

void Stepper::interpolate(Real xout, State& yout) const {
  std::array<Real, 15> gi{}, wi{}, rho{};
  gi[1] = 1;
  rho[1] = 1;
  Real hi = xout - x;
  int ki = kold + 1;
  int kip1 = ki + 1;
  for (int i = 1; i <= ki; ++i) wi[i] = 1.0L / i;
  Real term = 0;
  for (int j = 2; j <= ki; ++j) {
    Real psijm1 = psi[j - 1];
    Real gamma = (hi + term) / psijm1;
    Real eta = hi / psijm1;
    for (int i = 1; i <= kip1 - j; ++i) wi[i] = gamma * wi[i] - eta * wi[i + 1];
    gi[j] = wi[1];
    rho[j] = gamma * rho[j - 1];
    term = psijm1;
  }
  yout.assign(n_, 0);
  for (int j = 1; j <= ki; ++j) {
    int i = kip1 - j;
    for (std::size_t l = 0; l < n_; ++l) yout[l] += gi[i] * phi[l][i];
  }
  for (std::size_t l = 0; l < n_; ++l) yout[l] = y[l] + hi * yout[l];
}

bool crossed(Real f0, Real f1, int direction) {
  bool rising = f0 < 0 && f1 >= 0;
  bool falling = f0 > 0 && f1 <= 0;
  if (direction > 0) return rising;
  if (direction < 0) return falling;
  return rising || falling;
}

// Illinois-modified regula falsi on the dense output between a and b.
Real locate_root(const Stepper& st, const EventSpec& ev, Real a, Real fa, Real b, Real fb) {
  State tmp;
  int side = 0;
  for (int it = 0; it < 200 && std::fabs(b - a) > 1e-10L; ++it) {
    Real c = (a * fb - b * fa) / (fb - fa);
    if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5L * (a + b);
    st.interpolate(c, tmp);
    Real fc = ev.fn(c, tmp);
    if (fc == 0) return c;
    if ((fc < 0) == (fb < 0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5L;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5L;
      side = 1;
    }
  }
  // the side after the crossing
  return b;
}

}  // namespace

std::string to_string(Direction d) { return d == Direction::Forward ? "forward" : "toward-singularity"; }

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::Completed:
      return "completed";
    case StopReason::Event:
      return "event";
    case StopReason::BlowUp:
      return "blow-up";
  }
  return "?";
}

Trajectory integrate(const Rhs& rhs, const State& y0, const IntegratorConfig& cfg) {
  const std::size_t n = y0.size();
  if (n == 0) throw IntegrationError("empty initial state");
  for (Real v : y0) {
    if (!std::isfinite(v)) throw IntegrationError("initial state is not finite");
  }
  if (!(cfg.rel_tol > 0)) throw IntegrationError("rel_tol must be positive");
  if (cfg.abs_tol_components.empty() ? !(cfg.abs_tol >= 0) : cfg.abs_tol_components.size() != n) {
    throw IntegrationError("abs_tol must be non-negative with one entry per component");
  }
  for (Real a : cfg.abs_tol_components) {
    if (!(a >= 0)) throw IntegrationError("negative absolute tolerance");
  }
  if (cfg.max_order < 2 || cfg.max_order > 13) throw IntegrationError("max_order must lie in 2..13");
  if (!(cfg.span > 0)) throw IntegrationError("span must be positive");
  if (cfg.fixed_order != 0 && (cfg.fixed_order < 2 || cfg.fixed_order > 13 || !(cfg.fixed_step > 0))) {
    throw IntegrationError("fixed-order mode needs an order in 2..13 and a positive step");
  }

  const Real dir = cfg.direction == Direction::Forward ? 1 : -1;
  const Real tend = cfg.t0 + dir * cfg.span;
  Trajectory traj;
  Stepper st(rhs, n, std::min(cfg.max_order, 13) - 1, traj.evaluations);
  st.x = cfg.t0;
  st.y = y0;
  st.h = dir * (cfg.initial_step > 0 ? cfg.initial_step : cfg.span);
  st.projection = cfg.projection;
  if (cfg.fixed_order > 0) {
    st.fixed_k = cfg.fixed_order - 1;
    st.fixed_h = cfg.fixed_step;
    st.kmax_ = st.fixed_k;
  }

  auto make_sample = [&](Real t, const State& y, Real step, int order) {
    Sample s;
    s.t = t;
    s.y = y;
    if (cfg.residuals) {
      auto r = cfg.residuals(y);
      s.omega_residual = r[0];
      s.g_residual = r[1];
    }
    s.step = step;
    s.order = order;
    return s;
  };
  traj.samples.push_back(make_sample(cfg.t0, y0, 0, 0));

  std::vector<Real> ev_prev(cfg.events.size());
  std::vector<int> ev_count(cfg.events.size(), 0);
  for (std::size_t i = 0; i < cfg.events.size(); ++i) ev_prev[i] = cfg.events[i].fn(cfg.t0, y0);

  State tmp;
  std::size_t since_sample = 0;
  for (;;) {
    if (traj.accepted >= cfg.max_steps) throw IntegrationError("max_steps exceeded");
    for (std::size_t l = 0; l < n; ++l) {
      Real atol = cfg.abs_tol_components.empty() ? cfg.abs_tol : cfg.abs_tol_components[l];
      st.wt[l] = std::max(cfg.rel_tol * std::fabs(st.y[l]) + atol, std::numeric_limits<Real>::min());
    }
    if (!st.attempt()) {
      ++traj.rejected;
      continue;
    }
    ++traj.accepted;
    traj.order_history.push_back(st.kold + 1);
    for (Real v : st.y) {
      if (!std::isfinite(v)) {
        throw IntegrationError("non-finite state at t = " + std::to_string(static_cast<double>(st.x)));
      }
    }
    const bool past_end = dir * (st.x - tend) >= 0;
    const Real t_hi = past_end ? tend : st.x;

    // events inside (xold, t_hi], earliest first
    struct Hit {
      Real t;
      std::size_t index;
    };
    std::vector<Hit> hits;
    if (!cfg.events.empty()) {
      State y_hi = st.y;
      if (past_end) st.interpolate(t_hi, y_hi);
      for (std::size_t i = 0; i < cfg.events.size(); ++i) {
        const auto& ev = cfg.events[i];
        Real f1 = ev.fn(t_hi, y_hi);
        if (crossed(ev_prev[i], f1, ev.direction)) hits.push_back({locate_root(st, ev, st.xold, ev_prev[i], t_hi, f1), i});
        ev_prev[i] = f1;
      }
      std::sort(hits.begin(), hits.end(), [&](const Hit& a, const Hit& b) { return dir * a.t < dir * b.t; });
    }
    for (const auto& hit : hits) {
      const auto& ev = cfg.events[hit.index];
      st.interpolate(hit.t, tmp);
      traj.events.push_back({hit.t, ev.id, tmp});
      if (ev.terminal_after > 0 && ++ev_count[hit.index] >= ev.terminal_after) {
        traj.samples.push_back(make_sample(hit.t, tmp, st.hold, st.kold + 1));
        traj.stop = StopReason::Event;
        return traj;
      }
    }
    if (past_end) {
      st.interpolate(tend, tmp);
      traj.samples.push_back(make_sample(tend, tmp, st.hold, st.kold + 1));
      traj.stop = StopReason::Completed;
      return traj;
    }
    bool blown = std::any_of(st.y.begin(), st.y.end(), [&](Real v) { return std::fabs(v) > cfg.blowup; });
    if (blown || ++since_sample >= std::max<std::size_t>(cfg.sample_stride, 1)) {
      traj.samples.push_back(make_sample(st.x, st.y, st.hold, st.kold + 1));
      since_sample = 0;
    }
    if (blown) {
      traj.stop = StopReason::BlowUp;
      return traj;
    }
  }
}

}  // namespace mixmaster::odes

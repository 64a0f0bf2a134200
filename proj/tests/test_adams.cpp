#include <cmath>

#include "doctest.h"
#include "mixmaster/systems.hpp"
#include "support.hpp"

using namespace mixmaster::odes;
using mixmaster::kasner::Sector;
using mixmaster::surd::parse_surd;

namespace {

const Rhs decay = [](Real, const State& y, State& dy) { dy = {-y[0]}; };
const Rhs oscillator = [](Real, const State& y, State& dy) { dy = {y[1], -y[0]}; };

double slope(const Rhs& f, const State& y0, int order, const std::function<double(const State&)>& error) {
  std::vector<double> errs;
  for (Real h : {0.1L, 0.05L, 0.025L, 0.0125L}) {
    IntegratorConfig cfg;
    cfg.fixed_order = order;
    cfg.fixed_step = h;
    cfg.span = 10;
    cfg.sample_stride = 1000000;
    errs.push_back(error(integrate(f, y0, cfg).back().y));
  }
  // least squares fit of log2 err against log2 h over the halvings
  double s = 0;
  for (std::size_t i = 1; i < errs.size(); ++i) s += std::log2(errs[i - 1] / errs[i]);
  return s / static_cast<double>(errs.size() - 1);
}

}  // namespace

TEST_SUITE("adams") {

TEST_CASE("exponential decay to tolerance") {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-10L;
  cfg.abs_tol = 1e-10L;
  cfg.span = 5;
  auto t = integrate(decay, {1}, cfg);
  CHECK(t.stop == StopReason::Completed);
  CHECK(t.back().t == 5);
  CHECK(std::fabs(t.back().y[0] - std::exp(-5.0L)) < 1e-9L);
  CHECK(t.samples.front().t == 0);
  for (int k : t.order_history) {
    CHECK(k >= 1);
    CHECK(k <= 13);
  }
  CHECK(t.samples.size() == t.accepted + 1);
}

TEST_CASE("tighter tolerance gives smaller error") {
  double prev = 1;
  for (Real tol : {1e-6L, 1e-9L, 1e-12L}) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol;
    cfg.span = 20;
    auto t = integrate(oscillator, {0, 1}, cfg);
    double err = static_cast<double>(std::fabs(t.back().y[0] - std::sin(20.0L)));
    CHECK(err < prev);
    CHECK(err < 200 * static_cast<double>(tol));
    prev = err;
  }
}

TEST_CASE("convergence order in fixed-order mode") {
  auto quad = [](const State& y) { return static_cast<double>(std::fabs(y[0] - std::sin(10.0L))); };
  const Rhs cosine = [](Real t, const State&, State& dy) { dy = {std::cos(t)}; };
  auto osc = [](const State& y) { return static_cast<double>(std::fabs(y[0] - std::sin(10.0L))); };
  for (int order : {2, 4, 6}) {
    CAPTURE(order);
    CHECK(std::fabs(slope(cosine, {0}, order, quad) - order) < 0.3);
    CHECK(std::fabs(slope(oscillator, {0, 1}, order, osc) - order) < 0.3);
  }
}

TEST_CASE("time reversal returns to the start") {
  IntegratorConfig fwd;
  fwd.rel_tol = 1e-12L;
  fwd.abs_tol = 1e-12L;
  fwd.span = 7;
  auto out = integrate(oscillator, {0.3L, -0.2L}, fwd);
  IntegratorConfig back = fwd;
  back.direction = Direction::TowardSingularity;
  back.t0 = out.back().t;
  auto ret = integrate(oscillator, out.back().y, back);
  CHECK(std::fabs(ret.back().t) < 1e-15L);
  CHECK(std::fabs(ret.back().y[0] - 0.3L) < 1e-10L);
  CHECK(std::fabs(ret.back().y[1] + 0.2L) < 1e-10L);
  CHECK(ret.samples[1].t < ret.samples[0].t);
}

TEST_CASE("Kasner equilibria are preserved") {
  for (const char* u : {"[;3,5]", "(1+sqrt(5))/2", "7/3"}) {
    for (int s = 1; s <= 6; ++s) {
      auto bp = mixmaster::kasner::base_point(parse_surd(u), Sector::from_index(s));
      IntegratorConfig cfg;
      cfg.span = 100;
      cfg.direction = Direction::TowardSingularity;
      auto y0 = kasner_state_b(bp).to_vector();
      auto t = integrate(field_bianchiB(), y0, cfg);
      for (std::size_t i = 0; i < y0.size(); ++i) CHECK(std::fabs(t.back().y[i] - y0[i]) <= 1e-12L);
      auto a0 = kasner_state_a(bp).to_vector();
      auto ta = integrate(field_bianchiA(), a0, cfg);
      for (std::size_t i = 0; i < a0.size(); ++i) CHECK(std::fabs(ta.back().y[i] - a0[i]) <= 1e-12L);
    }
  }
}

TEST_CASE("events are located on the interpolant") {
  IntegratorConfig cfg;
  cfg.span = 10;
  cfg.events.push_back({"cos zero", [](Real, const State& y) { return y[0]; }, 0, 0});
  cfg.events.push_back({"rising", [](Real, const State& y) { return y[1]; }, +1, 0});
  auto t = integrate(oscillator, {1, 0}, cfg);  // y = cos t, y' = -sin t
  std::vector<Real> zeros, rising;
  for (const auto& e : t.events) (e.id == "cos zero" ? zeros : rising).push_back(e.t);
  REQUIRE(zeros.size() == 3);
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    CHECK(std::fabs(zeros[k] - (static_cast<Real>(k) + 0.5L) * std::acos(-1.0L)) < 1e-8L);
  }
  // -sin t rises through zero at t = pi, 3 pi
  REQUIRE(rising.size() == 2);
  CHECK(std::fabs(rising[0] - std::acos(-1.0L)) < 1e-8L);
  CHECK(std::fabs(t.events[0].y[0]) < 1e-8L);
}

TEST_CASE("terminal events count occurrences") {
  IntegratorConfig cfg;
  cfg.span = 100;
  cfg.events.push_back({"zero", [](Real, const State& y) { return y[0]; }, 0, 2});
  auto t = integrate(oscillator, {1, 0}, cfg);
  CHECK(t.stop == StopReason::Event);
  CHECK(std::fabs(t.back().t - 1.5L * std::acos(-1.0L)) < 1e-8L);
  CHECK(t.events.size() == 2);
}

TEST_CASE("blow-up guard and failures") {
  const Rhs square = [](Real, const State& y, State& dy) { dy = {y[0] * y[0]}; };
  IntegratorConfig cfg;
  cfg.span = 2;
  auto t = integrate(square, {1}, cfg);
  CHECK(t.stop == StopReason::BlowUp);
  CHECK(t.back().t < 1);
  CHECK(t.back().y[0] > 1e3L);

  IntegratorConfig bad;
  bad.max_order = 1;
  CHECK_THROWS_AS(integrate(decay, {1}, bad), IntegrationError);
  bad = {};
  bad.span = 0;
  CHECK_THROWS_AS(integrate(decay, {1}, bad), IntegrationError);
  bad = {};
  bad.abs_tol_components = {1, 1};
  CHECK_THROWS_AS(integrate(decay, {1}, bad), IntegrationError);
  bad = {};
  bad.max_steps = 5;
  bad.span = 1000;
  CHECK_THROWS_AS(integrate(oscillator, {1, 0}, bad), IntegrationError);
  CHECK_THROWS_AS(integrate(decay, {}, IntegratorConfig{}), IntegrationError);
}

TEST_CASE("order limit and sample stride") {
  IntegratorConfig cfg;
  cfg.max_order = 4;
  cfg.span = 30;
  cfg.sample_stride = 10;
  auto t = integrate(oscillator, {0, 1}, cfg);
  for (int k : t.order_history) CHECK(k <= 4);
  CHECK(t.samples.size() <= t.accepted / 10 + 2);
  CHECK(t.back().t == 30);
  CHECK(std::fabs(t.back().y[0] - std::sin(30.0L)) < 1e-7L);
}

TEST_CASE("residual hook and pure relative control") {
  IntegratorConfig cfg;
  cfg.span = 40;
  cfg.abs_tol_components = {0};
  cfg.residuals = [](const State& y) { return std::array<Real, 2>{y[0], 0}; };
  auto t = integrate(decay, {1}, cfg);
  // relative control tracks e^-40 without flushing it to zero
  CHECK(std::fabs(t.back().y[0] / std::exp(-40.0L) - 1) < 1e-8L);
  CHECK(t.back().omega_residual == t.back().y[0]);
}

}  // TEST_SUITE

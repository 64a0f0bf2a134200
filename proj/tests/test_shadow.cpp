#include <cmath>

#include "doctest.h"
#include "mixmaster/shadow.hpp"
#include "support.hpp"

using namespace mixmaster::odes;
using mixmaster::kasner::Sector;
using mixmaster::surd::QuadraticSurd;
using mixmaster::surd::parse_surd;

TEST_SUITE("shadow") {

TEST_CASE("Bianchi II cap endpoint follows the Kasner map") {
  for (const char* u : {"3/2", "5/2", "3", "(1+sqrt(5))/2", "[;3,5]", "4.25"}) {
    CAPTURE(u);
    auto r = heteroclinic_endpoint_check(parse_surd(u));
    CHECK(r.error <= 1e-3);
    CHECK(r.t_arrival < 0);
  }
  CHECK_THROWS_AS(heteroclinic_endpoint_check(QuadraticSurd(1)), std::invalid_argument);
}

TEST_CASE("endpoint from every sector") {
  auto u = parse_surd("7/3");
  for (int s = 1; s <= 6; ++s) {
    EndpointConfig cfg;
    cfg.sector = s;
    auto r = heteroclinic_endpoint_check(u, cfg);
    CHECK(r.error <= 1e-3);
  }
}

TEST_CASE("classic 18-cycle is shadowed") {
  auto chain = mixmaster::chains::named_cycle("classic18");
  ShadowRunConfig cfg;
  auto run = run_shadow(chain, cfg);
  CHECK(run.trajectory.stop == StopReason::Event);
  CHECK(run.report.compared == 18);
  CHECK(run.report.match);
  CHECK(run.report.matched_prefix == 18);
  CHECK(run.report.observed.size() == 19);
  CHECK(run.max_omega_residual <= 1e-7);
  CHECK(run.max_g_residual <= 1e-7);
  for (std::size_t i = 0; i < 18; ++i) {
    CHECK(run.report.distances[i] < 2e-2);
    // visits get deeper along the cycle
    if (i > 0) CHECK(run.report.visits[i].log10_depth < run.report.visits[0].log10_depth);
  }
  for (std::size_t i = 1; i < run.report.visits.size(); ++i) {
    CHECK(run.report.visits[i].t_enter < run.report.visits[i - 1].t_enter);
  }
}

TEST_CASE("projection keeps the constraints near rounding level") {
  auto chain = mixmaster::chains::named_cycle("classic18");
  ShadowRunConfig cfg;
  cfg.entries = 6;
  cfg.project = true;
  auto run = run_shadow(chain, cfg);
  CHECK(run.report.match);
  CHECK(run.max_omega_residual <= 1e-12);
  CHECK(run.max_g_residual <= 1e-12);
}

TEST_CASE("a seed on the Kasner circle stays in one visit") {
  auto chain = mixmaster::chains::named_cycle("classic18");
  auto seed = kasner_state_b(chain.nodes.front());
  ShadowRunConfig cfg;
  cfg.span = 50;
  auto run = run_shadow(seed, chain, cfg);
  CHECK(run.trajectory.stop == StopReason::Completed);
  REQUIRE(run.report.visits.size() == 1);
  CHECK_FALSE(run.report.visits[0].t_exit.has_value());
  CHECK(run.report.match);
  CHECK(run.report.compared == 1);
}

TEST_CASE("a seed in the N_- cap cannot follow a frame transition") {
  auto chain = mixmaster::chains::named_cycle("classic18");
  ShadowRunConfig cfg;
  cfg.transverse = 0;
  cfg.span = 2000;
  auto run = run_shadow(chain, cfg);
  // the orbit reaches the second node and stays there
  CHECK(run.trajectory.stop == StopReason::Completed);
  CHECK(run.report.visits.size() == 2);
  CHECK_FALSE(run.report.visits.back().t_exit.has_value());
  CHECK(run.report.compared < 18);
}

TEST_CASE("Bianchi IX visits follow the Kasner map") {
  auto bp = mixmaster::kasner::base_point(parse_surd("7/2"), Sector::from_index(5));
  ShadowRunConfig cfg;
  cfg.entries = 3;
  cfg.eps = 1e-5L;
  auto run = run_bianchi9(bp, cfg);
  REQUIRE(run.visits.size() >= 3);
  const double want[] = {3.5, 2.5, 1.5};
  for (std::size_t i = 0; i < 3; ++i) CHECK(run.visits[i].location.u == doctest::Approx(want[i]).epsilon(1e-3));
}

TEST_CASE("visit detection errors") {
  Trajectory far;
  Sample s;
  s.y = {0.1L, 0.1L, 0.3L, 0.3L, 0.3L, 0.3L};
  far.samples = {s, s};
  CHECK(find_visits(far).empty());
  CHECK_THROWS_AS(shadow_analysis(far, mixmaster::chains::named_cycle("classic18")), ShadowError);
  Trajectory odd;
  Sample o;
  o.y = {0, 0, 0};
  odd.samples = {o};
  CHECK_THROWS_AS(find_visits(odd), ShadowError);
}

}  // TEST_SUITE

#include "mixmaster/shadow.hpp"

#include <algorithm>
#include <cmath>

namespace mixmaster::odes {

namespace {

struct Layout {
  std::size_t first, last;  // transition variables [first, last)
  std::size_t sp, sm;
  std::vector<std::string> names;
};

Layout layout_for(std::size_t dimension) {
  if (dimension == StateA::size) return {0, 3, 3, 4, {"N1", "N2", "N3"}};
  if (dimension == StateB::size) return {2, 6, 0, 1, {"cross", "two", "minus", "A"}};
  throw ShadowError("states must have 5 or 6 components");
}

Real transition_size(const Layout& lay, const State& y, std::size_t* arg = nullptr) {
  Real m = 0;
  for (std::size_t i = lay.first; i < lay.last; ++i) {
    if (std::fabs(y[i]) >= m) {
      m = std::fabs(y[i]);
      if (arg) *arg = i - lay.first;
    }
  }
  return m;
}

IntegratorConfig toward_singularity(const ShadowRunConfig& cfg, std::size_t dimension) {
  const Layout lay = layout_for(dimension);
  IntegratorConfig ic;
  ic.rel_tol = cfg.rel_tol;
  ic.abs_tol_components.assign(dimension, 0);
  ic.abs_tol_components[lay.sp] = cfg.sigma_abs_tol;
  ic.abs_tol_components[lay.sm] = cfg.sigma_abs_tol;
  ic.direction = Direction::TowardSingularity;
  ic.span = cfg.span;
  ic.sample_stride = cfg.sample_stride;
  ic.residuals = residuals_of;
  ic.events.push_back(approach_event(dimension, cfg.shadow.delta, cfg.entries));
  return ic;
}

}  // namespace

EndpointResult heteroclinic_endpoint_check(const kasner::QuadraticSurd& u, const EndpointConfig& cfg) {
  if (u <= kasner::QuadraticSurd(1)) throw std::invalid_argument("u must exceed 1");
  auto image = kasner::kasner_map(u);
  if (!std::holds_alternative<kasner::QuadraticSurd>(image)) throw std::invalid_argument("u maps to the Taub point");
  const auto b = kasner::base_point(u, kasner::Sector::from_index(cfg.sector));
  const StateA seed = seed_bianchi2(b, cfg.eps);
  const std::size_t idx = static_cast<std::size_t>(unstable_curvature_index(b));

  IntegratorConfig ic;
  ic.rel_tol = cfg.rel_tol;
  ic.abs_tol_components = {0, 0, 0, cfg.abs_tol, cfg.abs_tol};
  ic.direction = Direction::TowardSingularity;
  ic.span = cfg.span;
  ic.residuals = residuals_of;
  ic.sample_stride = 1000000;
  const Real arrival = cfg.arrival;
  ic.events.push_back({"arrival", [idx, arrival](Real, const State& y) { return y[idx] - arrival; }, -1, 1});
  Trajectory traj = integrate(field_bianchiA(1), seed.to_vector(), ic);
  if (traj.stop != StopReason::Event) throw IntegrationError("Bianchi II orbit did not return to the Kasner circle");

  const Sample& end = traj.back();
  auto loc = kasner::locate(static_cast<double>(end.y[3]), static_cast<double>(end.y[4]));
  EndpointResult out;
  out.u_measured = loc.u;
  out.u_expected = std::get<kasner::QuadraticSurd>(image).to_double();
  out.error = std::fabs(out.u_measured - out.u_expected);
  out.t_arrival = static_cast<double>(end.t);
  out.arrival_sector = loc.sector;
  return out;
}

EventSpec approach_event(std::size_t dimension, Real delta, int terminal_after) {
  const Layout lay = layout_for(dimension);
  return {"approach", [lay, delta](Real, const State& y) { return transition_size(lay, y) - delta; }, -1,
          terminal_after};
}

std::vector<Visit> find_visits(const Trajectory& traj, const ShadowOptions& opts) {
  std::vector<Visit> out;
  if (traj.samples.empty()) return out;
  const Layout lay = layout_for(traj.samples.front().y.size());
  std::vector<double> entries;
  for (const auto& e : traj.events) {
    if (e.id == "approach") entries.push_back(static_cast<double>(e.t));
  }

  bool inside = false;
  Visit cur;
  std::size_t closest = 0;
  Real best = 0;
  auto finish = [&]() {
    const Sample& s = traj.samples[closest];
    cur.t_closest = static_cast<double>(s.t);
    cur.depth = static_cast<double>(best);
    cur.log10_depth = static_cast<double>(std::log10(best));
    cur.sigma_plus = static_cast<double>(s.y[lay.sp]);
    cur.sigma_minus = static_cast<double>(s.y[lay.sm]);
    cur.location = kasner::locate(cur.sigma_plus, cur.sigma_minus);
    out.push_back(cur);
  };
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const Sample& s = traj.samples[i];
    std::size_t arg = 0;
    const Real m = transition_size(lay, s.y, &arg);
    if (!inside) {
      if (m < opts.delta) {
        inside = true;
        cur = Visit{};
        cur.t_enter = static_cast<double>(s.t);
        if (i > 0) {
          // refine with a located crossing inside the last step
          double lo = static_cast<double>(std::min(traj.samples[i - 1].t, s.t));
          double hi = static_cast<double>(std::max(traj.samples[i - 1].t, s.t));
          for (double t : entries) {
            if (t >= lo && t <= hi) cur.t_enter = t;
          }
        }
        closest = i;
        best = m;
      }
      continue;
    }
    if (m < best) {
      best = m;
      closest = i;
    }
    if (m > opts.hysteresis * opts.delta) {
      cur.t_exit = static_cast<double>(s.t);
      cur.exit_variable = lay.names[arg];
      finish();
      inside = false;
    }
  }
  if (inside) finish();
  return out;
}

ShadowReport shadow_analysis(const Trajectory& traj, const chains::HeteroclinicChain& chain,
                             const ShadowOptions& opts) {
  ShadowReport rep;
  rep.visits = find_visits(traj, opts);
  if (rep.visits.empty()) throw ShadowError("trajectory never comes within delta of the Kasner circle");
  std::size_t usable = rep.visits.size();
  if (traj.stop == StopReason::Event && !rep.visits.back().t_exit) --usable;
  const auto& nodes = chain.nodes;
  if (!chain.closed) usable = std::min(usable, nodes.size());
  rep.compared = usable;
  rep.match = usable > 0;
  for (std::size_t i = 0; i < rep.visits.size(); ++i) rep.observed.push_back(rep.visits[i].location.sector.index());
  for (std::size_t i = 0; i < usable; ++i) {
    const auto& node = nodes[i % nodes.size()];
    rep.expected.push_back(node.sector.index());
    rep.distances.push_back(std::hypot(rep.visits[i].sigma_plus - node.sigma_plus.to_double(),
                                       rep.visits[i].sigma_minus - node.sigma_minus()));
    if (rep.match && rep.observed[i] == rep.expected[i]) {
      ++rep.matched_prefix;
    } else if (rep.match) {
      rep.match = false;
      rep.first_mismatch = i;
    }
  }
  return rep;
}

ShadowRun run_shadow(const StateB& seed, const chains::HeteroclinicChain& chain, const ShadowRunConfig& cfg) {
  IntegratorConfig ic = toward_singularity(cfg, StateB::size);
  if (cfg.project) {
    ic.projection = [](State& y) {
      StateB s = StateB::from(y);
      project_constraints(s);
      y = s.to_vector();
    };
  }
  ShadowRun run;
  run.seed = seed.to_vector();
  run.trajectory = integrate(field_bianchiB(cfg.gamma), run.seed, ic);
  run.report = shadow_analysis(run.trajectory, chain, cfg.shadow);
  for (const auto& s : run.trajectory.samples) {
    run.max_omega_residual = std::max(run.max_omega_residual, static_cast<double>(std::fabs(s.omega_residual)));
    run.max_g_residual = std::max(run.max_g_residual, static_cast<double>(std::fabs(s.g_residual)));
  }
  return run;
}

ShadowRun run_shadow(const chains::HeteroclinicChain& chain, const ShadowRunConfig& cfg) {
  return run_shadow(seed_near_chain(chain, cfg.eps, cfg.transverse), chain, cfg);
}

Bianchi9Run run_bianchi9(const BasePoint& b, const ShadowRunConfig& cfg) {
  IntegratorConfig ic = toward_singularity(cfg, StateA::size);
  Bianchi9Run run;
  run.seed = seed_bianchi9(b, cfg.eps).to_vector();
  run.trajectory = integrate(field_bianchiA(cfg.gamma), run.seed, ic);
  run.visits = find_visits(run.trajectory, cfg.shadow);
  return run;
}

}  // namespace mixmaster::odes

// Close approaches of integrated trajectories to the Kasner circle and their
// comparison with predicted chains.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixmaster/adams.hpp"
#include "mixmaster/chains.hpp"
#include "mixmaster/systems.hpp"

namespace mixmaster::odes {

class ShadowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EndpointConfig {
  Real eps = 1e-6L;
  /// Arrival is declared when the growing N falls back below this.
  Real arrival = 1e-9L;
  Real rel_tol = 1e-12L;
  Real abs_tol = 1e-15L;
  Real span = 500;
  int sector = 5;
};

struct EndpointResult {
  double u_measured = 0;
  double u_expected = 0;
  double error = 0;
  /// Physical time of arrival (negative: toward the singularity).
  double t_arrival = 0;
  kasner::Sector arrival_sector;
};

/// Bianchi II orbit from the Kasner point of u toward the singularity. Throws
/// IntegrationError if the orbit does not come back to the circle.
EndpointResult heteroclinic_endpoint_check(const kasner::QuadraticSurd& u, const EndpointConfig& cfg = {});

struct ShadowOptions {
  Real delta = 1e-2L;
  /// A visit ends once the transition variables exceed hysteresis * delta.
  Real hysteresis = 1.5L;
};

struct Visit {
  double t_enter = 0;
  /// Empty while the trajectory is still inside at its end.
  std::optional<double> t_exit;
  double t_closest = 0;
  /// max |transition variable| at the closest sample
  double depth = 0;
  /// log10 of depth, kept separately since depths underflow a double
  double log10_depth = 0;
  double sigma_plus = 0, sigma_minus = 0;
  kasner::Location location;
  /// Largest transition variable when the visit ends.
  std::string exit_variable;
};

/// Transition variables are N1..N3 for 5-component states and
/// (cross, two, minus, A) for 6-component ones.
std::vector<Visit> find_visits(const Trajectory& traj, const ShadowOptions& opts = {});

struct ShadowReport {
  std::vector<Visit> visits;
  std::vector<int> observed;
  std::vector<int> expected;
  /// Euclidean distance in (Sigma_+, Sigma_-) to the predicted base point.
  std::vector<double> distances;
  std::size_t compared = 0;
  std::size_t matched_prefix = 0;
  std::optional<std::size_t> first_mismatch;
  bool match = false;
};

/// Compares visited sectors with chain.sectors() (repeated for cycles). A
/// visit cut short by a terminal event is listed but not compared. Throws
/// ShadowError when the trajectory never comes within delta of the circle.
ShadowReport shadow_analysis(const Trajectory& traj, const chains::HeteroclinicChain& chain,
                             const ShadowOptions& opts = {});

/// Stops the integration at the n-th entry into the delta-ball.
EventSpec approach_event(std::size_t dimension, Real delta, int terminal_after);

struct ShadowRunConfig {
  Real eps = 1e-5L;
  Real transverse = -1;
  Real rel_tol = 1e-10L;
  /// Absolute tolerance of Sigma_+/-; transition variables use pure relative
  /// control.
  Real sigma_abs_tol = 1e-12L;
  Real gamma = 1;
  Real span = 1e5L;
  /// Number of further entries into the delta-ball before stopping.
  int entries = 18;
  bool project = false;
  std::size_t sample_stride = 1;
  ShadowOptions shadow;
};

struct ShadowRun {
  State seed;
  Trajectory trajectory;
  ShadowReport report;
  double max_omega_residual = 0;
  double max_g_residual = 0;
};

/// Bianchi VI*_{-1/9} run toward the singularity from seed_near_chain.
ShadowRun run_shadow(const chains::HeteroclinicChain& chain, const ShadowRunConfig& cfg = {});
/// Same from an explicit state.
ShadowRun run_shadow(const StateB& seed, const chains::HeteroclinicChain& chain, const ShadowRunConfig& cfg = {});

/// Bianchi IX run toward the singularity from seed_bianchi9.
struct Bianchi9Run {
  State seed;
  Trajectory trajectory;
  std::vector<Visit> visits;
};

Bianchi9Run run_bianchi9(const BasePoint& b, const ShadowRunConfig& cfg = {});

}  // namespace mixmaster::odes

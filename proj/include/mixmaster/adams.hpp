// Variable-step variable-order Adams-Bashforth-Moulton (PECE) integrator in
// the divided-difference form of Shampine and Gordon, with dense output and
// event location.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixmaster::odes {

/// 80-bit on x86-64. Shadowing runs push transition variables far below the
/// double range.
using Real = long double;
using State = std::vector<Real>;
using Rhs = std::function<void(Real t, const State& y, State& dy)>;

enum class Direction { TowardSingularity, Forward };

std::string to_string(Direction d);

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero crossing of fn. direction +1 only counts rising crossings, -1
/// falling ones, 0 both. Integration stops at the terminal_after-th
/// occurrence (0 = never).
struct EventSpec {
  std::string id;
  std::function<Real(Real t, const State& y)> fn;
  int direction = 0;
  int terminal_after = 0;
};

struct IntegratorConfig {
  Real rel_tol = 1e-10L;
  Real abs_tol = 1e-12L;
  /// Overrides abs_tol per component when non-empty. Zero is allowed.
  std::vector<Real> abs_tol_components;
  /// Order of the corrected value, 2..13.
  int max_order = 13;
  /// TowardSingularity integrates the (forward-time) rhs with decreasing t.
  Direction direction = Direction::Forward;
  Real t0 = 0;
  Real span = 1;
  std::size_t max_steps = 2000000;
  std::vector<EventSpec> events;
  /// 0 picks a starting step from the derivative.
  Real initial_step = 0;
  /// Fixed-order mode for convergence studies: when fixed_order > 0 the
  /// controller ramps up from fixed_step * 2^-30 and then holds order and
  /// step without error control.
  int fixed_order = 0;
  Real fixed_step = 0;
  /// Stop when some |y_i| exceeds this.
  Real blowup = 1e3L;
  /// (Omega, g) style residuals recorded with every sample; zeros if unset.
  std::function<std::array<Real, 2>(const State&)> residuals;
  /// Applied to each corrected value before the final evaluation.
  std::function<void(State&)> projection;
  /// Record every n-th accepted step (the first and last are always kept).
  std::size_t sample_stride = 1;
};

struct Sample {
  Real t = 0;
  State y;
  Real omega_residual = 0;
  Real g_residual = 0;
  Real step = 0;
  int order = 0;
};

struct Event {
  Real t = 0;
  std::string id;
  State y;
};

enum class StopReason { Completed, Event, BlowUp };

std::string to_string(StopReason r);

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<Event> events;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  /// Order used for each accepted step.
  std::vector<int> order_history;
  StopReason stop = StopReason::Completed;

  const Sample& back() const { return samples.back(); }
};

/// Throws IntegrationError on step-size underflow, a non-finite state or
/// when max_steps is exceeded.
Trajectory integrate(const Rhs& rhs, const State& y0, const IntegratorConfig& cfg);

}  // namespace mixmaster::odes

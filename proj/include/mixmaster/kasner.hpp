// Kasner circle geometry: sectors, exponents, the Kasner map and the
// eigenvalues of the transition variables at each base point.
#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "mixmaster/surd.hpp"

namespace mixmaster::kasner {

using surd::QuadraticSurd;

class KasnerError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One of the six arcs of the Kasner circle, labelled by the ordering of
/// the exponents: tag (a,b,c) means p_a < p_b < p_c.
class Sector {
 public:
  constexpr Sector() = default;
  /// Throws KasnerError outside 1..6.
  static Sector from_index(int index);
  static std::optional<Sector> from_tag(const std::array<int, 3>& tag);

  constexpr int index() const { return index_; }
  std::array<int, 3> tag() const;
  /// "(312)" style label.
  std::string label() const;

  friend constexpr bool operator==(Sector a, Sector b) { return a.index_ == b.index_; }

 private:
  constexpr explicit Sector(int index) : index_(index) {}
  int index_ = 1;
};

/// The u = infinity image of u = 1.
struct Taub {
  friend constexpr bool operator==(Taub, Taub) { return true; }
};

using KasnerImage = std::variant<QuadraticSurd, Taub>;

/// u - 1 for u >= 2, 1/(u - 1) for 1 < u < 2, Taub at u = 1.
KasnerImage kasner_map(const QuadraticSurd& u);

struct KasnerExponents {
  QuadraticSurd p1, p2, p3;

  const QuadraticSurd& slot(int i) const;
};

KasnerExponents exponents_for(const QuadraticSurd& u, Sector s);

/// A point on the Kasner circle.
///
/// sigma_minus_scaled stores Sigma_- / sqrt(3), which keeps every coordinate
/// in the field of u. sigma_minus() puts the factor back.
struct BasePoint {
  Sector sector;
  QuadraticSurd u;
  QuadraticSurd sigma_plus;
  QuadraticSurd sigma_minus_scaled;
  KasnerExponents exponents;

  double sigma_minus() const;
};

BasePoint base_point(const QuadraticSurd& u, Sector s);

enum class TransitionVariable { SigmaCross, SigmaTwo, NMinus };

inline constexpr std::array<TransitionVariable, 3> kTransitionVariables = {
    TransitionVariable::SigmaCross, TransitionVariable::SigmaTwo, TransitionVariable::NMinus};

std::string to_string(TransitionVariable v);

/// Linearization eigenvalues at a base point, forward time. A negative
/// value marks a direction that grows toward the singularity.
struct EigenvalueSet {
  QuadraticSurd lambda_cross;
  QuadraticSurd lambda_two;
  QuadraticSurd lambda_minus;
  QuadraticSurd lambda_A;
  // Bianchi IX curvature eigenvalues at the same point of the circle
  QuadraticSurd mu1, mu2, mu3;

  const QuadraticSurd& of(TransitionVariable v) const;
  bool unstable(TransitionVariable v) const { return of(v).sign() < 0; }
};

/// (-6u, 6(1+u), 6u(1+u)) / (1+u+u^2).
std::array<QuadraticSurd, 3> eigenvalues_b9(const QuadraticSurd& u);

EigenvalueSet eigenvalues_b6(const QuadraticSurd& u, Sector s);
EigenvalueSet eigenvalues_at(const BasePoint& b);

/// Matter eigenvalue 3(2 - gamma).
double mu_omega(double gamma);

/// Nearest Kasner point to (Sigma_+, Sigma_-) in floating point.
struct Location {
  Sector sector;
  double u = 1.0;
};

Location locate(double sigma_plus, double sigma_minus);

}  // namespace mixmaster::kasner

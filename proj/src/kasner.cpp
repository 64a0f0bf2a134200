#include "mixmaster/kasner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixmaster::kasner {

namespace {

constexpr std::array<std::array<int, 3>, 6> kTags = {{
    {1, 2, 3}, {2, 1, 3}, {2, 3, 1}, {3, 2, 1}, {3, 1, 2}, {1, 3, 2},
}};

void require_u(const QuadraticSurd& u) {
  if (u < QuadraticSurd(1)) throw KasnerError("Kasner parameter must satisfy u >= 1, got " + u.str());
}

}  // namespace

Sector Sector::from_index(int index) {
  if (index < 1 || index > 6) throw KasnerError("sector index must be in 1..6, got " + std::to_string(index));
  return Sector(index);
}

std::optional<Sector> Sector::from_tag(const std::array<int, 3>& tag) {
  for (int i = 0; i < 6; ++i) {
    if (kTags[static_cast<std::size_t>(i)] == tag) return Sector(i + 1);
  }
  return std::nullopt;
}

std::array<int, 3> Sector::tag() const { return kTags[static_cast<std::size_t>(index_ - 1)]; }

std::string Sector::label() const {
  auto t = tag();
  return "(" + std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]) + ")";
}

KasnerImage kasner_map(const QuadraticSurd& u) {
  require_u(u);
  if (u == QuadraticSurd(1)) return Taub{};
  if (u >= QuadraticSurd(2)) return u - QuadraticSurd(1);
  return (u - QuadraticSurd(1)).reciprocal();
}

const QuadraticSurd& KasnerExponents::slot(int i) const {
  switch (i) {
    case 1: return p1;
    case 2: return p2;
    case 3: return p3;
    default: throw KasnerError("exponent slot must be 1..3");
  }
}

KasnerExponents exponents_for(const QuadraticSurd& u, Sector s) {
  require_u(u);
  QuadraticSurd one(1);
  QuadraticSurd d = one + u + u * u;
  std::array<QuadraticSurd, 3> ordered = {-u / d, (one + u) / d, u * (one + u) / d};
  std::array<QuadraticSurd, 3> slots;
  auto tag = s.tag();
  for (std::size_t rank = 0; rank < 3; ++rank) slots[static_cast<std::size_t>(tag[rank] - 1)] = ordered[rank];
  return {slots[0], slots[1], slots[2]};
}

double BasePoint::sigma_minus() const { return std::sqrt(3.0) * sigma_minus_scaled.to_double(); }

BasePoint base_point(const QuadraticSurd& u, Sector s) {
  KasnerExponents e = exponents_for(u, s);
  QuadraticSurd half = QuadraticSurd::rational(1, 2);
  BasePoint b;
  b.sector = s;
  b.u = u;
  b.sigma_plus = QuadraticSurd::rational(-3, 2) * e.p1 + half;
  b.sigma_minus_scaled = -half * (e.p1 + QuadraticSurd(2) * e.p2 - QuadraticSurd(1));
  b.exponents = e;
  if (b.sigma_plus * b.sigma_plus + QuadraticSurd(3) * b.sigma_minus_scaled * b.sigma_minus_scaled !=
      QuadraticSurd(1)) {
    throw KasnerError("base point off the Kasner circle");
  }
  return b;
}

std::string to_string(TransitionVariable v) {
  switch (v) {
    case TransitionVariable::SigmaCross: return "cross";
    case TransitionVariable::SigmaTwo: return "two";
    case TransitionVariable::NMinus: return "minus";
  }
  return "?";
}

const QuadraticSurd& EigenvalueSet::of(TransitionVariable v) const {
  switch (v) {
    case TransitionVariable::SigmaCross: return lambda_cross;
    case TransitionVariable::SigmaTwo: return lambda_two;
    case TransitionVariable::NMinus: return lambda_minus;
  }
  return lambda_minus;
}

std::array<QuadraticSurd, 3> eigenvalues_b9(const QuadraticSurd& u) {
  require_u(u);
  QuadraticSurd one(1);
  QuadraticSurd d = one + u + u * u;
  return {QuadraticSurd(-6) * u / d, QuadraticSurd(6) * (one + u) / d, QuadraticSurd(6) * u * (one + u) / d};
}

EigenvalueSet eigenvalues_at(const BasePoint& b) {
  const QuadraticSurd& sp = b.sigma_plus;
  const QuadraticSurd& sm = b.sigma_minus_scaled;
  QuadraticSurd two(2), three(3), four(4), six(6);
  EigenvalueSet e;
  e.lambda_cross = -six * sm;
  e.lambda_two = -three * sp + three * sm;
  e.lambda_minus = two + two * sp + six * sm;
  e.lambda_A = two + two * sp;
  e.mu1 = two - four * sp;
  e.mu2 = two + two * sp + six * sm;
  e.mu3 = two + two * sp - six * sm;
  return e;
}

EigenvalueSet eigenvalues_b6(const QuadraticSurd& u, Sector s) { return eigenvalues_at(base_point(u, s)); }

double mu_omega(double gamma) { return 3.0 * (2.0 - gamma); }

Location locate(double sigma_plus, double sigma_minus) {
  double r = std::hypot(sigma_plus, sigma_minus);
  if (r > 0) {
    sigma_plus /= r;
    sigma_minus /= r;
  }
  std::array<double, 3> p;
  p[0] = (1.0 - 2.0 * sigma_plus) / 3.0;
  p[1] = (1.0 - p[0] - 2.0 * sigma_minus / std::sqrt(3.0)) / 2.0;
  p[2] = 1.0 - p[0] - p[1];
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return p[static_cast<std::size_t>(a)] < p[static_cast<std::size_t>(b)]; });
  std::array<int, 3> tag = {order[0] + 1, order[1] + 1, order[2] + 1};
  Location loc;
  loc.sector = *Sector::from_tag(tag);
  double pmin = p[static_cast<std::size_t>(order[0])];
  double pmid = p[static_cast<std::size_t>(order[1])];
  double denom = pmid + pmin;
  loc.u = denom > 0 ? -pmin / denom : std::numeric_limits<double>::infinity();
  return loc;
}

}  // namespace mixmaster::kasner

#include "mixmaster/cllp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mixmaster::cllp {

namespace {

using chains::TransitionKind;

std::size_t idx(TransitionVariable v) { return static_cast<std::size_t>(v); }

struct Step {
  std::size_t node;
  TransitionVariable incoming;
  TransitionVariable exit;
};

struct Segment {
  std::vector<Step> steps;
  TransitionVariable incoming;
  std::array<TransitionVariable, 2> state;
};

std::array<TransitionVariable, 2> others(TransitionVariable v) {
  std::array<TransitionVariable, 2> out{};
  std::size_t n = 0;
  for (auto w : kasner::kTransitionVariables) {
    if (w != v) out[n++] = w;
  }
  return out;
}

HeteroclinicChain closed_copy(const HeteroclinicChain& chain) {
  try {
    return chains::close_cycle(chain);
  } catch (const chains::ChainError& e) {
    throw CllpError(std::string("composition needs a closed cycle: ") + e.what());
  }
}

TransitionVariable exit_of(const HeteroclinicChain& c, std::size_t i) {
  return chains::variable_of(c.transitions[i % c.transitions.size()]);
}

Segment passage_segment(const HeteroclinicChain& c, const chains::Passage& p) {
  const std::size_t n = c.nodes.size();
  if (c.transitions[p.first] != TransitionKind::CurvatureNMinus) {
    throw CllpError("passage " + chains::to_string(p.label) + " does not open with a curvature transition");
  }
  Segment seg;
  seg.incoming = TransitionVariable::NMinus;
  seg.state = {TransitionVariable::SigmaCross, TransitionVariable::SigmaTwo};
  TransitionVariable incoming = TransitionVariable::NMinus;
  for (std::size_t j = 1; j <= p.length; ++j) {
    std::size_t node = (p.first + j) % n;
    TransitionVariable exit = exit_of(c, node);
    seg.steps.push_back({node, incoming, exit});
    incoming = exit;
  }
  return seg;
}

Segment node_entry_segment(const HeteroclinicChain& c) {
  const std::size_t n = c.nodes.size();
  Segment seg;
  seg.incoming = exit_of(c, n - 1);
  seg.state = others(seg.incoming);
  TransitionVariable incoming = seg.incoming;
  for (std::size_t i = 0; i < n; ++i) {
    TransitionVariable exit = exit_of(c, i);
    seg.steps.push_back({i, incoming, exit});
    incoming = exit;
  }
  return seg;
}

// Ratios for the two non-exit variables, incoming first.
std::vector<std::pair<TransitionVariable, QuadraticSurd>> step_ratios(const HeteroclinicChain& c, const Step& s) {
  LocalPassage lp = local_passage(c.nodes[s.node], s.incoming, s.exit);
  std::vector<std::pair<TransitionVariable, QuadraticSurd>> out;
  out.emplace_back(s.incoming, lp.ratios.at(s.incoming));
  for (auto v : kasner::kTransitionVariables) {
    if (v != s.incoming && v != s.exit) out.emplace_back(v, lp.ratios.at(v));
  }
  return out;
}

template <class T>
using RatioTable = std::vector<std::vector<std::pair<TransitionVariable, T>>>;

template <class T>
Matrix2<T> propagate(const Segment& seg, const RatioTable<T>& ratios) {
  Matrix2<T> out;
  for (std::size_t col = 0; col < 2; ++col) {
    std::array<T, 3> L{T(0), T(0), T(0)};
    L[idx(seg.state[col])] = T(1);
    for (std::size_t s = 0; s < seg.steps.size(); ++s) {
      const Step& st = seg.steps[s];
      L[idx(st.incoming)] = T(0);
      T e = L[idx(st.exit)];
      for (const auto& [var, r] : ratios[s]) L[idx(var)] = L[idx(var)] + r * e;
      L[idx(st.exit)] = T(0);
    }
    out[0][col] = L[idx(seg.state[0])];
    out[1][col] = L[idx(seg.state[1])];
  }
  return out;
}

template <class T>
Matrix2<T> mul(const Matrix2<T>& a, const Matrix2<T>& b) {
  Matrix2<T> out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  }
  return out;
}

template <class T>
Matrix2<T> identity() {
  Matrix2<T> out;
  out[0] = {T(1), T(0)};
  out[1] = {T(0), T(1)};
  return out;
}

std::vector<Segment> segments(const HeteroclinicChain& c, Section section) {
  if (section == Section::NodeEntry) return {node_entry_segment(c)};
  std::vector<Segment> out;
  for (const auto& p : chains::segment_passages(c)) out.push_back(passage_segment(c, p));
  return out;
}

RatioTable<QuadraticSurd> exact_ratios(const HeteroclinicChain& c, const Segment& seg) {
  RatioTable<QuadraticSurd> table;
  for (const auto& st : seg.steps) table.push_back(step_ratios(c, st));
  return table;
}

template <class T>
Matrix2<T> combine(const std::vector<Matrix2<T>>& factors, ProductOrder order) {
  Matrix2<T> acc = identity<T>();
  for (const auto& f : factors) acc = order == ProductOrder::ChainOrder ? mul(acc, f) : mul(f, acc);
  return acc;
}

}  // namespace

double LocalPassage::ratio(TransitionVariable v) const {
  auto it = ratios.find(v);
  if (it == ratios.end()) throw CllpError("no ratio for the exit variable");
  return it->second.to_double();
}

LocalPassage local_passage(const BasePoint& b, TransitionVariable incoming, TransitionVariable exit) {
  if (incoming == exit) throw CllpError("incoming and exit variable coincide");
  auto eigs = kasner::eigenvalues_at(b);
  if (!eigs.unstable(exit)) {
    throw CllpError("exit variable " + kasner::to_string(exit) + " is not unstable in sector " +
                    std::to_string(b.sector.index()));
  }
  LocalPassage lp{b, incoming, exit, {}};
  const QuadraticSurd& le = eigs.of(exit);
  for (auto v : kasner::kTransitionVariables) {
    if (v != exit) lp.ratios.emplace(v, -eigs.of(v) / le);
  }
  return lp;
}

SymbolicPolynomial::SymbolicPolynomial(long constant) {
  if (constant != 0) terms_[{}] = constant;
}

SymbolicPolynomial SymbolicPolynomial::symbol(int index) {
  if (index < 1) throw CllpError("symbol index must be positive");
  SymbolicPolynomial out;
  Monomial m(static_cast<std::size_t>(index), 0);
  m.back() = 1;
  out.terms_[m] = 1;
  return out;
}

void SymbolicPolynomial::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

SymbolicPolynomial& SymbolicPolynomial::operator+=(const SymbolicPolynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) terms_[m] += c;
  prune();
  return *this;
}

SymbolicPolynomial operator*(const SymbolicPolynomial& a, const SymbolicPolynomial& b) {
  SymbolicPolynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      SymbolicPolynomial::Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      while (!m.empty() && m.back() == 0) m.pop_back();
      out.terms_[m] += ca * cb;
    }
  }
  out.prune();
  return out;
}

double SymbolicPolynomial::evaluate(const std::vector<double>& values) const {
  double total = 0;
  for (const auto& [m, c] : terms_) {
    double t = static_cast<double>(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= values.size()) throw CllpError("missing value for symbol r" + std::to_string(i + 1));
      t *= std::pow(values[i], m[i]);
    }
    total += t;
  }
  return total;
}

std::string SymbolicPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    long ac = std::labs(c);
    bool any = false;
    if (ac != 1 || std::all_of(m.begin(), m.end(), [](int e) { return e == 0; })) {
      out << ac;
      any = true;
    }
    for (std::size_t i = m.size(); i-- > 0;) {
      for (int e = 0; e < m[i]; ++e) {
        out << (any ? "*" : "") << "r" << (i + 1);
        any = true;
      }
    }
  }
  return out.str();
}

EigenData eigen2(const Matrix2<double>& m) {
  const double a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
  const double tr = a + d, det = a * d - b * c;
  const double half = 0.5 * (a - d);
  const double disc = half * half + b * c;
  EigenData out;
  if (disc < 0) {
    out.real = false;
    double im = std::sqrt(-disc);
    out.values = {std::complex<double>(tr / 2, im), std::complex<double>(tr / 2, -im)};
    return out;
  }
  double s = std::sqrt(disc);
  double mu1 = tr / 2 + (tr >= 0 ? s : -s);
  double mu2 = mu1 != 0 ? det / mu1 : tr / 2 - s;
  if (std::abs(mu2) > std::abs(mu1)) std::swap(mu1, mu2);
  out.values = {mu1, mu2};
  std::array<double, 2> mus = {mu1, mu2};
  for (std::size_t i = 0; i < 2; ++i) {
    double mu = mus[i];
    std::array<double, 2> v1 = {b, mu - a};
    std::array<double, 2> v2 = {mu - d, c};
    auto norm = [](const std::array<double, 2>& v) { return std::hypot(v[0], v[1]); };
    std::array<double, 2> v = norm(v1) >= norm(v2) ? v1 : v2;
    double n = norm(v);
    if (n == 0) {
      v = i == 0 ? std::array<double, 2>{1, 0} : std::array<double, 2>{0, 1};
      n = 1;
    }
    if (std::abs(v[1]) > 1e-14 * n) {
      out.vectors[i] = {v[0] / v[1], 1.0};
    } else {
      out.vectors[i] = {1.0, 0.0};
    }
  }
  return out;
}

ContractionVerdict contraction_verdict(const Matrix2<double>& m, int iterations) {
  ContractionVerdict out;
  EigenData e = eigen2(m);
  for (const auto& mu : e.values) {
    if (std::abs(std::abs(mu) - 1.0) < 1e-9) out.boundary = true;
  }
  bool decreasing = true;
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 9; ++k) {
    double theta = pi / 4 + (k % 2 ? 1 : -1) * ((k + 1) / 2) * pi / 20;
    std::array<double, 2> L = {-10.0 * std::cos(theta), -10.0 * std::sin(theta)};
    if (k == 0) out.witness.push_back(L);
    for (int it = 0; it < iterations; ++it) {
      std::array<double, 2> next = {m[0][0] * L[0] + m[0][1] * L[1], m[1][0] * L[0] + m[1][1] * L[1]};
      if (!(std::max(next[0], next[1]) < std::max(L[0], L[1]))) decreasing = false;
      L = next;
      if (k == 0) out.witness.push_back(L);
    }
  }
  out.contraction = decreasing && !out.boundary;
  return out;
}

CLLPMatrix make_cllp(const Matrix2<double>& m) { return {m, eigen2(m), contraction_verdict(m)}; }

Matrix2<double> to_double(const Matrix2<QuadraticSurd>& m) {
  Matrix2<double> out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out[i][j] = m[i][j].to_double();
  }
  return out;
}

Matrix2<double> multiply(const Matrix2<double>& a, const Matrix2<double>& b) { return mul(a, b); }

std::vector<PassageFactor> per_passage_factors(const HeteroclinicChain& chain, ProductOrder order) {
  HeteroclinicChain c = closed_copy(chain);
  std::vector<PassageFactor> out;
  Matrix2<double> acc = identity<double>();
  for (const auto& p : chains::segment_passages(c)) {
    Segment seg = passage_segment(c, p);
    PassageFactor f;
    f.passage = p;
    f.u_start = c.nodes[p.first].u;
    f.exact = propagate(seg, exact_ratios(c, seg));
    f.m = to_double(f.exact);
    f.eigen = eigen2(f.m);
    acc = order == ProductOrder::ChainOrder ? mul(acc, f.m) : mul(f.m, acc);
    f.cumulative = acc;
    out.push_back(std::move(f));
  }
  return out;
}

Matrix2<QuadraticSurd> compose_exact(const HeteroclinicChain& chain, ComposeOptions opts) {
  HeteroclinicChain c = closed_copy(chain);
  std::vector<Matrix2<QuadraticSurd>> factors;
  for (const auto& seg : segments(c, opts.section)) factors.push_back(propagate(seg, exact_ratios(c, seg)));
  return combine(factors, opts.order);
}

Matrix2<SymbolicPolynomial> compose_symbolic(const HeteroclinicChain& chain, ComposeOptions opts) {
  HeteroclinicChain c = closed_copy(chain);
  std::vector<Matrix2<SymbolicPolynomial>> factors;
  int next_symbol = 1;
  for (const auto& seg : segments(c, opts.section)) {
    RatioTable<SymbolicPolynomial> table;
    for (const auto& st : seg.steps) {
      std::vector<std::pair<TransitionVariable, SymbolicPolynomial>> row;
      for (const auto& [var, value] : step_ratios(c, st)) {
        (void)value;
        row.emplace_back(var, SymbolicPolynomial::symbol(next_symbol++));
      }
      table.push_back(std::move(row));
    }
    factors.push_back(propagate(seg, table));
  }
  return combine(factors, opts.order);
}

std::vector<QuadraticSurd> symbol_values(const HeteroclinicChain& chain, Section section) {
  HeteroclinicChain c = closed_copy(chain);
  std::vector<QuadraticSurd> out;
  for (const auto& seg : segments(c, section)) {
    for (const auto& st : seg.steps) {
      for (const auto& [var, value] : step_ratios(c, st)) {
        (void)var;
        out.push_back(value);
      }
    }
  }
  return out;
}

CLLPMatrix compose(const HeteroclinicChain& chain, ComposeOptions opts) {
  return make_cllp(to_double(compose_exact(chain, opts)));
}

}  // namespace mixmaster::cllp

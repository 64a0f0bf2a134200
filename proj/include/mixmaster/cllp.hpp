// Combined linear local passages: log-linear section maps near each base
// point composed around a heteroclinic cycle.
#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixmaster/chains.hpp"

namespace mixmaster::cllp {

using chains::HeteroclinicChain;
using kasner::BasePoint;
using kasner::QuadraticSurd;
using kasner::TransitionVariable;

class CllpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
using Matrix2 = std::array<std::array<T, 2>, 2>;

/// Near b, a variable x_j scales like x_exit^{r_j} with r_j = -lambda_j / lambda_exit.
struct LocalPassage {
  BasePoint base;
  TransitionVariable incoming;
  TransitionVariable exit;
  std::map<TransitionVariable, QuadraticSurd> ratios;

  double ratio(TransitionVariable v) const;
};

/// Throws CllpError if exit is stable at b or equals incoming.
LocalPassage local_passage(const BasePoint& b, TransitionVariable incoming, TransitionVariable exit);

/// Polynomial with integer coefficients in the symbols r1, r2, ...
class SymbolicPolynomial {
 public:
  using Monomial = std::vector<int>;  // exponent of r(i+1) at index i

  SymbolicPolynomial() = default;
  SymbolicPolynomial(long constant);  // NOLINT(google-explicit-constructor)
  static SymbolicPolynomial symbol(int index);  // 1-based

  SymbolicPolynomial& operator+=(const SymbolicPolynomial& rhs);
  friend SymbolicPolynomial operator+(SymbolicPolynomial a, const SymbolicPolynomial& b) { return a += b; }
  friend SymbolicPolynomial operator*(const SymbolicPolynomial& a, const SymbolicPolynomial& b);
  friend bool operator==(const SymbolicPolynomial& a, const SymbolicPolynomial& b) { return a.terms_ == b.terms_; }

  double evaluate(const std::vector<double>& values) const;
  /// e.g. "r3*r2 + r6*r1"
  std::string str() const;
  const std::map<Monomial, long>& terms() const { return terms_; }

 private:
  void prune();
  std::map<Monomial, long> terms_;
};

/// Where the 2-dimensional section sits.
enum class Section {
  /// Right after each passage's opening curvature transition; state
  /// (log Sigma_cross, log Sigma_2).
  PassageBoundary,
  /// Entry to node 0 with the closing transition's variable incoming; state
  /// is the other two variables in (cross, two, minus) order.
  NodeEntry,
};

enum class ProductOrder {
  /// F1 F2 ... Fn with Fi the factor of passage i.
  ChainOrder,
  /// Fn ... F2 F1, the return map of successive passages.
  Sequential,
};

struct ComposeOptions {
  Section section = Section::PassageBoundary;
  ProductOrder order = ProductOrder::ChainOrder;
};

struct EigenData {
  std::array<std::complex<double>, 2> values;
  /// (x, 1) normalized where possible, otherwise (1, 0). Only set for real
  /// eigenvalues.
  std::array<std::array<double, 2>, 2> vectors{};
  bool real = true;
};

/// Closed-form eigen-solve, values sorted by modulus, largest first.
EigenData eigen2(const Matrix2<double>& m);

struct ContractionVerdict {
  bool contraction = false;
  /// Some eigenvalue has modulus 1 within tolerance.
  bool boundary = false;
  /// Iterates of the first test point (log a, log b).
  std::vector<std::array<double, 2>> witness;
};

struct CLLPMatrix {
  Matrix2<double> m{};
  EigenData eigen;
  ContractionVerdict verdict;
};

ContractionVerdict contraction_verdict(const Matrix2<double>& m, int iterations = 12);
CLLPMatrix make_cllp(const Matrix2<double>& m);

struct PassageFactor {
  chains::Passage passage;
  QuadraticSurd u_start;
  Matrix2<QuadraticSurd> exact;
  Matrix2<double> m{};
  EigenData eigen;
  /// Product of the factors so far, in the requested order.
  Matrix2<double> cumulative{};
};

/// Requires a closed chain (or one whose cycle is detectable).
std::vector<PassageFactor> per_passage_factors(const HeteroclinicChain& chain,
                                               ProductOrder order = ProductOrder::ChainOrder);

Matrix2<QuadraticSurd> compose_exact(const HeteroclinicChain& chain, ComposeOptions opts = {});
Matrix2<SymbolicPolynomial> compose_symbolic(const HeteroclinicChain& chain, ComposeOptions opts = {});
CLLPMatrix compose(const HeteroclinicChain& chain, ComposeOptions opts = {});

/// Ratios in the order the symbols r1, r2, ... are assigned by
/// compose_symbolic: at each node the incoming variable first, then the
/// remaining non-exit variable.
std::vector<QuadraticSurd> symbol_values(const HeteroclinicChain& chain, Section section);

Matrix2<double> to_double(const Matrix2<QuadraticSurd>& m);
Matrix2<double> multiply(const Matrix2<double>& a, const Matrix2<double>& b);

}  // namespace mixmaster::cllp

// Integer relations among the transition eigenvalues (non-resonance
// conditions) and the Takens-order comparison.
#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixmaster/chains.hpp"
#include "mixmaster/fixtures.hpp"
#include "mixmaster/kasner.hpp"

namespace mixmaster::resonance {

using kasner::QuadraticSurd;
using kasner::Sector;
using surd::BigInt;

class ResonanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row i holds the u^i numerator coefficients; columns are
/// (lambda_2, lambda_cross, lambda_minus). The common denominator
/// 1 + u + u^2 is dropped.
struct CoeffMatrix {
  std::array<std::array<long, 3>, 3> m{};

  long det() const;
  friend bool operator==(const CoeffMatrix&, const CoeffMatrix&) = default;
};

CoeffMatrix coeff_matrix(Sector s);

/// Integer vector in the order (lambda_2, lambda_cross, lambda_minus).
using IntVec = std::array<BigInt, 3>;

struct ResonanceSolution {
  BigInt z;
  IntVec k;
};

/// Smallest z > 0 with M k = z * rhs for integral k. rhs is usually the
/// minimal polynomial (c0, c1, c2) of u, which makes k an exact relation
/// k1 lambda_2 + k2 lambda_cross + k3 lambda_minus = 0.
ResonanceSolution solve_resonance(const CoeffMatrix& M, const std::array<BigInt, 3>& rhs);

/// (c0, c1, c2) for irrational u; (-p, r, 0) for rational u = p/r.
std::array<BigInt, 3> relation_rhs(const QuadraticSurd& u);

/// k1 lambda_2 + k2 lambda_cross + k3 lambda_minus, exactly.
QuadraticSurd residual(const kasner::EigenvalueSet& eigs, const IntVec& k);

/// All primitive k with sum |k_i| <= max_order annihilating
/// (lambda_2, lambda_cross, lambda_minus), one per sign pair (first nonzero
/// entry positive), ordered by order and then lexicographically.
std::vector<std::array<long, 3>> search_resonances(const kasner::EigenvalueSet& eigs, int max_order);

long order(const std::array<long, 3>& k);
BigInt order(const IntVec& k);

/// Key of a base point in the Takens tables: u = [m; tail] with the tail
/// purely periodic. Empty optional if u has no such form.
struct FixtureKey {
  std::string pattern;
  int m = 0;
};

std::optional<FixtureKey> fixture_key(const QuadraticSurd& u);

struct ResonanceReport {
  std::size_t node = 0;
  Sector sector;
  QuadraticSurd u;
  FixtureKey key;
  IntVec k;
  BigInt z;
  int alpha = 0;
  int beta = 0;
  bool passes_takens = false;
  /// Whether the table's k equals the computed one.
  bool fixture_k_match = false;
  std::array<long, 3> fixture_k{};
};

/// One report per distinct base point of the chain (one period for cycles).
/// Throws ResonanceError for a missing table row.
std::vector<ResonanceReport> takens_check(const chains::HeteroclinicChain& chain,
                                          const fixtures::AlphaTable& table);

bool all_pass(const std::vector<ResonanceReport>& reports);

}  // namespace mixmaster::resonance

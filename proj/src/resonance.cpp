#include "mixmaster/resonance.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace mixmaster::resonance {

namespace {

using Row = std::array<long, 3>;

// Numerators of the ordered exponents -u, 1+u, u+u^2 in the basis 1, u, u^2.
constexpr std::array<Row, 3> kExponentNumerators = {{{0, -1, 0}, {1, 1, 0}, {0, 1, 1}}};

// keeps sums of 3 * 30 * |coefficient| inside a long long
const BigInt kCoeffBound = BigInt(1) << 55;

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

long CoeffMatrix::det() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

CoeffMatrix coeff_matrix(Sector s) {
  std::array<Row, 3> slot{};
  auto tag = s.tag();
  for (std::size_t rank = 0; rank < 3; ++rank) slot[static_cast<std::size_t>(tag[rank] - 1)] = kExponentNumerators[rank];
  const Row& p1 = slot[0];
  const Row& p2 = slot[1];
  const Row& p3 = slot[2];
  CoeffMatrix M;
  for (std::size_t i = 0; i < 3; ++i) {
    M.m[i][0] = 3 * (p1[i] - p2[i]);  // lambda_2
    M.m[i][1] = 3 * (p2[i] - p3[i]);  // lambda_cross
    M.m[i][2] = 6 * p3[i];            // lambda_minus
  }
  return M;
}

ResonanceSolution solve_resonance(const CoeffMatrix& M, const std::array<BigInt, 3>& rhs) {
  const auto& a = M.m;
  BigInt det = M.det();
  if (det == 0) throw ResonanceError("coefficient matrix is singular");
  // adjugate
  std::array<std::array<BigInt, 3>, 3> adj;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          BigInt(a[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c0)]) * a[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c1)] -
          BigInt(a[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c1)]) * a[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c0)];
    }
  }
  IntVec kp;
  for (std::size_t i = 0; i < 3; ++i) kp[i] = adj[i][0] * rhs[0] + adj[i][1] * rhs[1] + adj[i][2] * rhs[2];
  BigInt g = gcd(gcd(gcd(abs(det), kp[0]), kp[1]), kp[2]);
  ResonanceSolution out;
  out.z = abs(det) / g;
  for (std::size_t i = 0; i < 3; ++i) out.k[i] = out.z * kp[i] / det;
  return out;
}

std::array<BigInt, 3> relation_rhs(const QuadraticSurd& u) {
  if (u.is_rational()) return {-u.p(), u.r(), 0};
  auto mp = surd::minimal_polynomial(u);
  return {mp.c0, mp.c1, mp.c2};
}

QuadraticSurd residual(const kasner::EigenvalueSet& eigs, const IntVec& k) {
  return QuadraticSurd::rational(k[0]) * eigs.lambda_two + QuadraticSurd::rational(k[1]) * eigs.lambda_cross +
         QuadraticSurd::rational(k[2]) * eigs.lambda_minus;
}

long order(const std::array<long, 3>& k) { return std::labs(k[0]) + std::labs(k[1]) + std::labs(k[2]); }

BigInt order(const IntVec& k) { return abs(k[0]) + abs(k[1]) + abs(k[2]); }

std::vector<std::array<long, 3>> search_resonances(const kasner::EigenvalueSet& eigs, int max_order) {
  if (max_order < 0 || max_order > 30) throw ResonanceError("max order must lie in 0..30");
  // Bring the three values to a common denominator: lambda_j = (a_j + b_j sqrt(D)) / R.
  std::array<const QuadraticSurd*, 3> lam = {&eigs.lambda_two, &eigs.lambda_cross, &eigs.lambda_minus};
  BigInt R = 1;
  for (auto* l : lam) {
    BigInt g = gcd(R, l->r());
    R = R / g * l->r();
  }
  std::array<long long, 3> a{}, b{};
  for (std::size_t j = 0; j < 3; ++j) {
    BigInt scale = R / lam[j]->r();
    BigInt aj = lam[j]->p() * scale, bj = lam[j]->q() * scale;
    if (abs(aj) > kCoeffBound || abs(bj) > kCoeffBound) throw ResonanceError("eigenvalue coefficients too large for search");
    a[j] = aj.get_si();
    b[j] = bj.get_si();
  }
  std::vector<std::array<long, 3>> out;
  const long n = max_order;
  for (long k1 = -n; k1 <= n; ++k1) {
    for (long k2 = -(n - std::labs(k1)); k2 <= n - std::labs(k1); ++k2) {
      long rest = n - std::labs(k1) - std::labs(k2);
      for (long k3 = -rest; k3 <= rest; ++k3) {
        if (k1 == 0 && k2 == 0 && k3 == 0) continue;
        // one representative per sign pair
        long lead = k1 != 0 ? k1 : (k2 != 0 ? k2 : k3);
        if (lead < 0) continue;
        if (std::gcd(std::gcd(k1, k2), k3) != 1) continue;
        long long ra = k1 * a[0] + k2 * a[1] + k3 * a[2];
        long long rb = k1 * b[0] + k2 * b[1] + k3 * b[2];
        if (ra == 0 && rb == 0) out.push_back({k1, k2, k3});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    long ox = order(x), oy = order(y);
    if (ox != oy) return ox < oy;
    return x < y;
  });
  return out;
}

std::optional<FixtureKey> fixture_key(const QuadraticSurd& u) {
  if (u.is_rational() || u < QuadraticSurd(1)) return std::nullopt;
  BigInt m = u.floor();
  QuadraticSurd tail = (u - QuadraticSurd::rational(m)).reciprocal();
  auto cf = surd::surd_to_cf(tail);
  if (!cf.prefix.empty() || !m.fits_sint_p()) return std::nullopt;
  FixtureKey key;
  key.m = static_cast<int>(m.get_si());
  for (std::size_t i = 0; i < cf.period.size(); ++i) {
    if (i) key.pattern += "-";
    key.pattern += std::to_string(cf.period[i]);
  }
  return key;
}

std::vector<ResonanceReport> takens_check(const chains::HeteroclinicChain& chain, const fixtures::AlphaTable& table) {
  std::size_t count = chain.nodes.size();
  if (!chain.closed && chain.period) count = *chain.period;
  std::vector<ResonanceReport> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& node = chain.nodes[i];
    auto key = fixture_key(node.u);
    if (!key) throw ResonanceError("base point u = " + node.u.str() + " has no table key");
    const auto* row = table.find(key->pattern, key->m, node.sector.index());
    if (!row) {
      throw ResonanceError("missing fixture row for pattern " + key->pattern + ", m = " + std::to_string(key->m) +
                           ", sector " + std::to_string(node.sector.index()));
    }
    auto sol = solve_resonance(coeff_matrix(node.sector), relation_rhs(node.u));
    ResonanceReport rep;
    rep.node = i;
    rep.sector = node.sector;
    rep.u = node.u;
    rep.key = *key;
    rep.k = sol.k;
    rep.z = sol.z;
    rep.alpha = row->alpha;
    rep.beta = row->beta;
    rep.passes_takens = order(sol.k) > row->alpha;
    rep.fixture_k = row->k;
    rep.fixture_k_match = sol.k[0] == row->k[0] && sol.k[1] == row->k[1] && sol.k[2] == row->k[2];
    out.push_back(std::move(rep));
  }
  return out;
}

bool all_pass(const std::vector<ResonanceReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passes_takens; });
}

}  // namespace mixmaster::resonance

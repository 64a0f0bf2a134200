#include <cmath>
#include <complex>

#include "doctest.h"
#include "mixmaster/cllp.hpp"
#include "mixmaster/fixtures.hpp"
#include "support.hpp"

using namespace mixmaster::cllp;
using mixmaster::kasner::Sector;
using mixmaster::kasner::TransitionVariable;
using mixmaster::surd::QuadraticSurd;
using mixmaster::surd::parse_surd;

namespace {

using TV = TransitionVariable;

QuadraticSurd S(long v) { return QuadraticSurd(v); }

QuadraticSurd golden() { return parse_surd("(1+sqrt(5))/2"); }

/// r1..r6 written out in u.
std::vector<QuadraticSurd> r_formulas(const QuadraticSurd& u) {
  return {(u + S(2)) / S(2),
          -(u * u - S(1)) / (S(2) * u),
          S(2) * u * (u + S(1)) / (S(2) * u + S(1)),
          -(u * u - S(1)) / (S(2) * u + S(1)),
          (S(2) * u + S(1)) / (u * (u + S(2))),
          S(2) * (u + S(1)) / (u + S(2))};
}

/// Log-linear map of the three passages applied to (log a, log b), by direct
/// substitution into the power-law formulas.
std::array<double, 2> substitute(const std::vector<double>& r, double la, double lb) {
  double inner = r[1] * lb + la;            // log(b^r2 a)
  double outer = r[3] * inner + r[0] * lb;  // log([b^r2 a]^r4 b^r1)
  return {r[4] * outer, r[5] * outer + r[2] * inner};
}

std::array<double, 2> quadratic_roots(double tr, double det) {
  double disc = std::sqrt(tr * tr - 4 * det);
  return {(tr + disc) / 2, (tr - disc) / 2};
}

}  // namespace

TEST_SUITE("cllp") {

TEST_CASE("3-cycle local passage ratios") {
  auto g = golden();
  auto want = r_formulas(g);
  auto b1 = mixmaster::kasner::base_point(g, Sector::from_index(5));
  auto b2 = mixmaster::kasner::base_point(g, Sector::from_index(1));
  auto b3 = mixmaster::kasner::base_point(g, Sector::from_index(2));
  auto p1 = local_passage(b1, TV::SigmaCross, TV::NMinus);
  auto p2 = local_passage(b2, TV::NMinus, TV::SigmaTwo);
  auto p3 = local_passage(b3, TV::SigmaTwo, TV::SigmaCross);
  CHECK(p1.ratios.at(TV::SigmaCross) == want[0]);
  CHECK(p1.ratios.at(TV::SigmaTwo) == want[1]);
  CHECK(p2.ratios.at(TV::NMinus) == want[2]);
  CHECK(p2.ratios.at(TV::SigmaCross) == want[3]);
  CHECK(p3.ratios.at(TV::SigmaTwo) == want[4]);
  CHECK(p3.ratios.at(TV::NMinus) == want[5]);
  const double printed[] = {1.8090, -0.5000, 2.0, -0.3820, 0.7236, 1.4472};
  for (int i = 0; i < 6; ++i) CHECK(std::fabs(want[static_cast<std::size_t>(i)].to_double() - printed[i]) < 1e-4);
  CHECK(symbol_values(mixmaster::chains::named_cycle("3-cycle"), Section::NodeEntry) == want);
}

TEST_CASE("local passage ratios are eigenvalue quotients") {
  for (int i = 0; i < 100; ++i) {
    auto b = mixmaster::kasner::base_point(testing::random_u(), testing::random_sector());
    auto eig = mixmaster::kasner::eigenvalues_at(b);
    for (auto exit : mixmaster::kasner::kTransitionVariables) {
      for (auto in : mixmaster::kasner::kTransitionVariables) {
        if (in == exit) continue;
        if (!eig.unstable(exit)) {
          CHECK_THROWS_AS(local_passage(b, in, exit), CllpError);
          continue;
        }
        auto lp = local_passage(b, in, exit);
        for (auto v : mixmaster::kasner::kTransitionVariables) {
          if (v != exit) CHECK(lp.ratios.at(v) * eig.of(exit) == -eig.of(v));
        }
      }
    }
  }
}

TEST_CASE("3-cycle composition") {
  auto c = mixmaster::chains::named_cycle("3-cycle");
  ComposeOptions opts{Section::NodeEntry, ProductOrder::ChainOrder};
  auto sym = compose_symbolic(c, opts);
  auto r = [](int i) { return SymbolicPolynomial::symbol(i); };
  CHECK(sym[0][0] == r(5) * r(4));
  CHECK(sym[0][1] == r(5) * r(4) * r(2) + r(5) * r(1));
  CHECK(sym[1][0] == r(6) * r(4) + r(3));
  CHECK(sym[1][1] == r(6) * r(4) * r(2) + r(6) * r(1) + r(3) * r(2));

  auto g = golden();
  auto exact = compose_exact(c, opts);
  CHECK(exact[0][0] + exact[1][1] == g);
  CHECK(exact[0][0] * exact[1][1] - exact[0][1] * exact[1][0] == -g * g);

  auto m = compose(c, opts);
  CHECK(std::fabs(m.m[0][0] + m.m[1][1] - g.to_double()) < 1e-10);
  CHECK(std::fabs(m.m[0][0] * m.m[1][1] - m.m[0][1] * m.m[1][0] + g.to_double() * g.to_double()) < 1e-10);
  REQUIRE(m.eigen.real);
  CHECK(std::fabs(m.eigen.values[0].real() - 2.618034) < 1e-6);
  CHECK(std::fabs(m.eigen.values[1].real() + 1.0) < 1e-6);
  CHECK(m.verdict.boundary);
  CHECK_FALSE(m.verdict.contraction);

  // brute-force substitution oracle
  std::vector<double> rv;
  for (const auto& x : r_formulas(g)) rv.push_back(x.to_double());
  auto col0 = substitute(rv, 1, 0);
  auto col1 = substitute(rv, 0, 1);
  CHECK(m.m[0][0] == doctest::Approx(col0[0]).epsilon(1e-12));
  CHECK(m.m[1][0] == doctest::Approx(col0[1]).epsilon(1e-12));
  CHECK(m.m[0][1] == doctest::Approx(col1[0]).epsilon(1e-12));
  CHECK(m.m[1][1] == doctest::Approx(col1[1]).epsilon(1e-12));
  auto roots = quadratic_roots(col0[0] + col1[1], col0[0] * col1[1] - col1[0] * col0[1]);
  CHECK(m.eigen.values[0].real() == doctest::Approx(roots[0]).epsilon(1e-12));
  CHECK(m.eigen.values[1].real() == doctest::Approx(roots[1]).epsilon(1e-12));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(sym[i / 2][i % 2].evaluate(rv) == doctest::Approx(m.m[i / 2][i % 2]).epsilon(1e-12));
  }
  // eigenvectors (1/2, 1) and (-2, 1)
  CHECK(m.eigen.vectors[0][0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(m.eigen.vectors[1][0] == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("classic 18-cycle per-passage factors") {
  auto dir = mixmaster::fixtures::default_fixture_dir();
  auto rows = mixmaster::fixtures::load_cllp_rows(dir / mixmaster::fixtures::kCllpFile);
  auto factors = per_passage_factors(mixmaster::chains::named_cycle("classic18"));
  REQUIRE(factors.size() == 8);
  REQUIRE(rows.size() == 9);
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& f = factors[i];
    CAPTURE(i);
    CHECK(mixmaster::chains::to_string(f.passage.label) == rows[i].passage);
    CHECK(std::fabs(f.u_start.to_double() - rows[i].u_start) < 1e-5);
    REQUIRE(f.eigen.real);
    CHECK(std::fabs(f.eigen.values[0].real() - rows[i].mu1) < 5e-4);
    CHECK(std::fabs(f.eigen.values[1].real() - rows[i].mu2) < 5e-4);
    CHECK(std::fabs(f.eigen.vectors[0][0] - rows[i].v1) < 5e-4);
    CHECK(std::fabs(f.eigen.vectors[1][0] - rows[i].v2) < 5e-4);
    CHECK(to_double(f.exact)[0][0] == doctest::Approx(f.m[0][0]));
  }
}

TEST_CASE("classic 18-cycle composed map") {
  auto c = mixmaster::chains::named_cycle("classic18");
  auto m = compose(c);
  auto want = mixmaster::fixtures::load_matrix(mixmaster::fixtures::default_fixture_dir() /
                                               mixmaster::fixtures::kMatrixFile);
  CHECK(m.m[0][0] == doctest::Approx(want[0]).epsilon(5e-3));
  CHECK(m.m[0][1] == doctest::Approx(want[1]).epsilon(5e-3));
  CHECK(m.m[1][0] == doctest::Approx(want[2]).epsilon(5e-3));
  CHECK(m.m[1][1] == doctest::Approx(want[3]).epsilon(5e-3));
  CHECK(m.eigen.values[0].real() == doctest::Approx(514.49).epsilon(5e-3));
  CHECK(m.eigen.values[1].real() == doctest::Approx(0.55783).epsilon(5e-3));
  CHECK(m.verdict.contraction);

  // chain order is the left-to-right product of the factors
  auto factors = per_passage_factors(c);
  Matrix2<double> prod = {{{1, 0}, {0, 1}}};
  for (const auto& f : factors) prod = multiply(prod, f.m);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) CHECK(prod[i][j] == doctest::Approx(m.m[i][j]).epsilon(1e-12));
  }
  CHECK(factors.back().cumulative[0][0] == doctest::Approx(m.m[0][0]).epsilon(1e-12));

  auto seq = compose(c, {Section::PassageBoundary, ProductOrder::Sequential});
  CHECK(seq.eigen.values[0].real() == doctest::Approx(287.00).epsilon(1e-4));
  CHECK(seq.eigen.values[1].real() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(seq.verdict.contraction);
}

TEST_CASE("eigen2 solves random matrices") {
  for (int i = 0; i < 200; ++i) {
    Matrix2<double> m = {{{testing::uniform_real(-3, 3), testing::uniform_real(-3, 3)},
                          {testing::uniform_real(-3, 3), testing::uniform_real(-3, 3)}}};
    auto e = eigen2(m);
    using C = std::complex<double>;
    C tr = m[0][0] + m[1][1], det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    CHECK(std::abs(e.values[0] + e.values[1] - tr) < 1e-9);
    CHECK(std::abs(e.values[0] * e.values[1] - det) < 1e-9);
    CHECK(std::abs(e.values[0]) >= std::abs(e.values[1]));
    if (e.real) {
      for (std::size_t k = 0; k < 2; ++k) {
        double mu = e.values[k].real();
        auto v = e.vectors[k];
        CHECK(std::fabs(m[0][0] * v[0] + m[0][1] * v[1] - mu * v[0]) < 1e-8 * (1 + std::fabs(v[0])));
        CHECK(std::fabs(m[1][0] * v[0] + m[1][1] * v[1] - mu * v[1]) < 1e-8 * (1 + std::fabs(v[0])));
      }
    }
  }
}

TEST_CASE("symbolic polynomials") {
  auto r1 = SymbolicPolynomial::symbol(1), r2 = SymbolicPolynomial::symbol(2);
  auto p = r1 * r2 + r2 * r1 + SymbolicPolynomial(3);
  CHECK(p.evaluate({2.0, 5.0}) == 23.0);
  CHECK(p.str() == "3 + 2*r2*r1");
  CHECK((p + SymbolicPolynomial(-3) + r1 * r2 * SymbolicPolynomial(-2)) == SymbolicPolynomial());
}

}  // TEST_SUITE

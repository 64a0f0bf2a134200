#include <set>

#include "doctest.h"
#include "mixmaster/fixtures.hpp"
#include "mixmaster/resonance.hpp"
#include "support.hpp"

using namespace mixmaster::resonance;
using mixmaster::kasner::Sector;
using mixmaster::surd::BigInt;
using mixmaster::surd::QuadraticSurd;
using mixmaster::surd::parse_surd;

namespace {

/// Independent brute force over the box |k_i| <= n with the eigenvalues
/// rebuilt from the Kasner exponents.
std::set<std::array<long, 3>> brute_force(const QuadraticSurd& u, Sector s, int n) {
  auto p = mixmaster::kasner::exponents_for(u, s);
  QuadraticSurd l2 = QuadraticSurd(3) * (p.p1 - p.p2);
  QuadraticSurd lx = QuadraticSurd(3) * (p.p2 - p.p3);
  QuadraticSurd lm = QuadraticSurd(6) * p.p3;
  std::set<std::array<long, 3>> out;
  for (long a = -n; a <= n; ++a) {
    for (long b = -n; b <= n; ++b) {
      for (long c = -n; c <= n; ++c) {
        if (std::abs(a) + std::abs(b) + std::abs(c) > n || (a == 0 && b == 0 && c == 0)) continue;
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        long first = a != 0 ? a : b != 0 ? b : c;
        if (first < 0) continue;
        if ((QuadraticSurd(a) * l2 + QuadraticSurd(b) * lx + QuadraticSurd(c) * lm).is_zero()) out.insert({a, b, c});
      }
    }
  }
  return out;
}

IntVec vec(long a, long b, long c) { return {BigInt(a), BigInt(b), BigInt(c)}; }

}  // namespace

TEST_SUITE("resonance") {

TEST_CASE("golden mean vectors of the 3-cycle") {
  std::array<BigInt, 3> rhs = {1, 1, -1};
  auto b1 = solve_resonance(coeff_matrix(Sector::from_index(5)), rhs);
  auto b2 = solve_resonance(coeff_matrix(Sector::from_index(1)), rhs);
  auto b3 = solve_resonance(coeff_matrix(Sector::from_index(2)), rhs);
  CHECK(b1.k == vec(2, 0, -1));
  CHECK(b2.k == vec(-2, 0, -1));
  CHECK(b3.k == vec(2, 0, -1));
  CHECK(b1.z == 6);
  CHECK(b2.z == 6);
  CHECK(b3.z == 6);
}

TEST_CASE("coefficient matrices are invertible") {
  for (int s = 1; s <= 6; ++s) CHECK(coeff_matrix(Sector::from_index(s)).det() != 0);
}

TEST_CASE("returned relations annihilate the eigenvalues exactly") {
  for (int i = 0; i < 150; ++i) {
    auto u = testing::random_u();
    auto s = testing::random_sector();
    auto sol = solve_resonance(coeff_matrix(s), relation_rhs(u));
    CHECK(sol.z > 0);
    auto eig = mixmaster::kasner::eigenvalues_b6(u, s);
    CHECK(residual(eig, sol.k).is_zero());
    // and it is the primitive generator: brute force finds it when it is short
    if (order(sol.k) <= 8) {
      auto found = brute_force(u, s, 8);
      std::array<long, 3> k = {sol.k[0].get_si(), sol.k[1].get_si(), sol.k[2].get_si()};
      long first = k[0] != 0 ? k[0] : k[1] != 0 ? k[1] : k[2];
      if (first < 0) k = {-k[0], -k[1], -k[2]};
      CHECK(found.count(k) == 1);
    }
  }
}

TEST_CASE("search matches the brute-force oracle") {
  for (int i = 0; i < 40; ++i) {
    auto u = testing::random_u();
    auto s = testing::random_sector();
    auto eig = mixmaster::kasner::eigenvalues_b6(u, s);
    auto got = search_resonances(eig, 7);
    std::set<std::array<long, 3>> as_set(got.begin(), got.end());
    CHECK(as_set.size() == got.size());
    CHECK(as_set == brute_force(u, s, 7));
    for (std::size_t j = 1; j < got.size(); ++j) CHECK(order(got[j - 1]) <= order(got[j]));
  }
}

TEST_CASE("irrational u admits a one-dimensional relation lattice") {
  for (int i = 0; i < 30; ++i) {
    auto u = testing::random_irrational();
    auto s = testing::random_sector();
    auto eig = mixmaster::kasner::eigenvalues_b6(u, s);
    auto sol = solve_resonance(coeff_matrix(s), relation_rhs(u));
    for (const auto& k : search_resonances(eig, 10)) {
      // every short relation is a multiple of the generator
      BigInt cross0 = BigInt(k[0]) * sol.k[1] - BigInt(k[1]) * sol.k[0];
      BigInt cross1 = BigInt(k[1]) * sol.k[2] - BigInt(k[2]) * sol.k[1];
      CHECK(cross0 == 0);
      CHECK(cross1 == 0);
    }
  }
}

TEST_CASE("fixture vectors are reproduced for every row") {
  auto table = mixmaster::fixtures::AlphaTable::load(mixmaster::fixtures::default_fixture_dir() /
                                                     mixmaster::fixtures::kTakensFile);
  REQUIRE(table.rows().size() == 54);
  for (const auto& row : table.rows()) {
    mixmaster::surd::PeriodicCF cf;
    cf.prefix = {row.m};
    for (char c : row.pattern) {
      if (c != '-') cf.period.push_back(c - '0');
    }
    auto u = mixmaster::surd::cf_to_surd(cf);
    auto s = Sector::from_index(row.sector);
    auto mp = mixmaster::surd::minimal_polynomial(u);
    auto sol = solve_resonance(coeff_matrix(s), {mp.c0, mp.c1, mp.c2});
    CAPTURE(row.pattern);
    CAPTURE(row.m);
    CAPTURE(row.sector);
    CHECK(sol.k == vec(row.k[0], row.k[1], row.k[2]));
  }
}

TEST_CASE("takens verdicts") {
  auto table = mixmaster::fixtures::AlphaTable::load(mixmaster::fixtures::default_fixture_dir() /
                                                     mixmaster::fixtures::kTakensFile);
  auto three = takens_check(mixmaster::chains::named_cycle("3-cycle"), table);
  REQUIRE(three.size() == 3);
  CHECK_FALSE(all_pass(three));
  for (const auto& r : three) {
    CHECK(order(r.k) == 3);
    CHECK(r.alpha > 10);
    CHECK(r.fixture_k_match);
  }
  for (const char* name : {"classic18", "advanced18"}) {
    auto reports = takens_check(mixmaster::chains::named_cycle(name), table);
    CHECK(reports.size() == 18);
    CHECK(all_pass(reports));
    for (const auto& r : reports) {
      CHECK(order(r.k) > r.alpha);
      CHECK(r.fixture_k_match);
    }
  }
}

TEST_CASE("fixture keys") {
  auto key = fixture_key(parse_surd("[;3,5]"));
  REQUIRE(key.has_value());
  CHECK(key->pattern == "5-3");
  CHECK(key->m == 3);
  CHECK_FALSE(fixture_key(parse_surd("7/2")).has_value());
}

}  // TEST_SUITE

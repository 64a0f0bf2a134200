#include <cmath>

#include "doctest.h"
#include "mixmaster/surd.hpp"
#include "support.hpp"

using namespace mixmaster::surd;

namespace {

QuadraticSurd golden() { return parse_surd("(1+sqrt(5))/2"); }

long double as_ld(const QuadraticSurd& x) { return x.to_long_double(); }

}  // namespace

TEST_SUITE("surd") {

TEST_CASE("canonical form pulls squares out of the radicand") {
  auto a = QuadraticSurd::make(2, 2, 4, 8);  // (2 + 2 sqrt 8)/4 = (1 + 2 sqrt 2)/2
  CHECK(a.p() == 1);
  CHECK(a.q() == 2);
  CHECK(a.r() == 2);
  CHECK(a.D() == 2);
  CHECK(QuadraticSurd::make(3, 1, 1, 4) == QuadraticSurd(5));
  CHECK(QuadraticSurd::make(1, 1, -2, 5) == QuadraticSurd::make(-1, -1, 2, 5));
  CHECK(QuadraticSurd::sqrt_of(12).str() == "2*sqrt(3)");
}

TEST_CASE("mixing radicands is rejected") {
  CHECK_THROWS_AS(QuadraticSurd::sqrt_of(2) + QuadraticSurd::sqrt_of(3), SurdError);
  CHECK_THROWS_AS(QuadraticSurd(1) / QuadraticSurd(0), SurdError);
  CHECK_THROWS_AS(QuadraticSurd::make(1, 0, 0, 1), SurdError);
}

TEST_CASE("golden mean arithmetic is exact") {
  auto g = golden();
  CHECK(g * g == g + 1);
  CHECK(g.reciprocal() == g - 1);
  CHECK(g.conjugate() == QuadraticSurd(1) - g);
  CHECK(g.floor() == 1);
  CHECK(g.to_double() == doctest::Approx(1.6180339887498949).epsilon(1e-16));
  CHECK(g.str() == "(1+sqrt(5))/2");
}

TEST_CASE("field operations agree with long double on random values") {
  for (int i = 0; i < 300; ++i) {
    auto a = testing::random_irrational();
    auto b = testing::uniform(0, 1) ? testing::random_rational() : a.conjugate() + testing::random_rational();
    const long double x = as_ld(a), y = as_ld(b);
    CHECK(std::fabs(as_ld(a + b) - (x + y)) <= 1e-15L * (1 + std::fabs(x + y)));
    CHECK(std::fabs(as_ld(a - b) - (x - y)) <= 1e-15L * (1 + std::fabs(x - y)));
    CHECK(std::fabs(as_ld(a * b) - x * y) <= 1e-15L * (1 + std::fabs(x * y)));
    if (!b.is_zero()) {
      CHECK(std::fabs(as_ld(a / b) - x / y) <= 1e-14L * (1 + std::fabs(x / y)));
      CHECK((a / b) * b == a);
    }
    CHECK((a < b) == (x < y));
    CHECK(a.floor() == static_cast<long>(std::floor(x)));
    CHECK(surd_sub(surd_add(a, b), b) == a);
    CHECK(surd_div(surd_mul(a, b), a) == b);
  }
}

TEST_CASE("minimal polynomial vanishes and is primitive") {
  for (int i = 0; i < 100; ++i) {
    auto a = testing::random_irrational();
    auto mp = minimal_polynomial(a);
    CHECK(mp.c2 > 0);
    CHECK(mp.evaluate(a).is_zero());
    CHECK(mp.evaluate(a.conjugate()).is_zero());
    BigInt g;
    mpz_gcd(g.get_mpz_t(), mp.c0.get_mpz_t(), mp.c1.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mp.c2.get_mpz_t());
    CHECK(g == 1);
  }
  CHECK(minimal_polynomial(golden()) == MinimalPolynomial{-1, -1, 1});
  CHECK_THROWS_AS(minimal_polynomial(QuadraticSurd(3)), SurdError);
}

TEST_CASE("continued fractions round trip") {
  CHECK(format_cf(surd_to_cf(golden())) == "[;1]");
  auto u = cf_to_surd(parse_cf("[;3,5]"));
  CHECK(u.str() == "(15+sqrt(285))/10");
  CHECK(cf_to_surd(parse_cf("[1,2;3]")) == parse_surd("[1,2;3]"));
  for (int i = 0; i < 200; ++i) {
    auto a = testing::random_irrational();
    auto cf = surd_to_cf(a);
    CHECK(cf_to_surd(cf) == a);
    CHECK(parse_cf(format_cf(cf)) == cf);
    // the expansion is minimal: the period cannot be shortened
    for (std::size_t p = 1; p < cf.period.size(); ++p) {
      if (cf.period.size() % p) continue;
      bool repeats = true;
      for (std::size_t j = p; j < cf.period.size(); ++j) repeats = repeats && cf.period[j] == cf.period[j - p];
      CHECK_FALSE(repeats);
    }
  }
}

TEST_CASE("cf digits follow the floor recursion") {
  for (int i = 0; i < 50; ++i) {
    auto a = testing::random_irrational();
    auto digits = cf_digits(a, 12);
    REQUIRE(digits.size() == 12);
    long double x = as_ld(a);
    for (int j = 0; j < 6; ++j) {
      CHECK(digits[j] == static_cast<long>(std::floor(x)));
      x = 1 / (x - std::floor(x));
    }
  }
  auto r = cf_digits(QuadraticSurd::rational(7, 2), 10);
  CHECK(r == std::vector<BigInt>{3, 2});
}

TEST_CASE("parse accepts all supported notations") {
  CHECK(parse_surd("3.5") == QuadraticSurd::rational(7, 2));
  CHECK(parse_surd("7/2") == QuadraticSurd::rational(7, 2));
  CHECK(parse_surd("-4") == QuadraticSurd(-4));
  CHECK(parse_surd("(2+sqrt(8))/2") == parse_surd("1+sqrt(2)"));
  CHECK(parse_surd("[;1]") == golden());
  CHECK(parse_surd(golden().str()) == golden());
  CHECK_THROWS(parse_surd("sqrt(-1)"));
  CHECK_THROWS(parse_surd("abc"));
  CHECK_THROWS(parse_cf("[;0]"));
}

}  // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "tg/log2real.hpp"

using namespace tg;
using boost::multiprecision::cpp_int;

namespace {

double log2_exact(const cpp_int& v) {
  REQUIRE(v > 0);
  unsigned bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 53) return std::log2(v.convert_to<double>());
  cpp_int top = v >> (bits - 53);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 53);
}

cpp_int binom_exact(int n, int k) {
  cpp_int r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("zero and one behave") {
  Log2Real z = Log2Real::zero();
  Log2Real one = Log2Real::one();
  CHECK(z.is_zero());
  CHECK(!one.is_zero());
  CHECK(one.log2() == 0.0);
  CHECK((z + one).log2() == 0.0);
  CHECK((one + z).log2() == 0.0);
  CHECK((z * one).is_zero());
  CHECK((z / one).is_zero());
  CHECK(z.to_double() == 0.0);
  CHECK_THROWS_AS(z.log2(), std::domain_error);
  CHECK_THROWS_AS(one / z, std::domain_error);
  CHECK_THROWS_AS(Log2Real::from_value(-1.0), std::domain_error);
  CHECK(Log2Real::from_value(0.0).is_zero());
}

TEST_CASE("sum matches plain doubles inside their range") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(1e-4, 1e4);
  for (int rep = 0; rep < 500; ++rep) {
    double a = dist(rng), b = dist(rng);
    Log2Real s = Log2Real::from_value(a) + Log2Real::from_value(b);
    CHECK(s.log2() == doctest::Approx(std::log2(a + b)).epsilon(1e-12));
  }
}

TEST_CASE("product and quotient add and subtract logs") {
  Log2Real a = Log2Real::from_log2(1e6);
  Log2Real b = Log2Real::from_log2(2.5e5);
  CHECK((a * b).log2() == doctest::Approx(1.25e6));
  CHECK((a / b).log2() == doctest::Approx(7.5e5));
  CHECK(a > b);
  CHECK(b < a);
  CHECK(a >= a);
  CHECK(Log2Real::zero() < b);
}

TEST_CASE("sum of far-apart magnitudes keeps the large term") {
  Log2Real big = Log2Real::from_log2(4000.0);
  Log2Real tiny = Log2Real::from_log2(-4000.0);
  Log2Real s = big + tiny;
  CHECK(s.log2() == doctest::Approx(4000.0).epsilon(1e-15));
  // near-equal magnitudes gain exactly one bit
  CHECK((big + big).log2() == doctest::Approx(4001.0).epsilon(1e-15));
}

TEST_CASE("root and pow") {
  Log2Real v = Log2Real::from_log2(100.0);
  CHECK(v.root(4).log2() == doctest::Approx(25.0));
  CHECK(v.pow(0.5).log2() == doctest::Approx(50.0));
  CHECK(v.pow(0.0).log2() == 0.0);
  CHECK(Log2Real::zero().pow(3.0).is_zero());
  CHECK(Log2Real::zero().pow(0.0).log2() == 0.0);
  CHECK_THROWS_AS(Log2Real::zero().pow(-1.0), std::domain_error);
  CHECK_THROWS_AS(v.root(0), std::domain_error);
}

TEST_CASE("binomial log2 against exact integers") {
  for (int n = 0; n <= 60; ++n)
    for (int k = 0; k <= n; ++k) {
      double got = log2_binomial(n, k);
      double want = log2_exact(binom_exact(n, k));
      CHECK(got == doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("binomial edges are exact") {
  CHECK(log2_binomial(17, 0) == 0.0);
  CHECK(log2_binomial(17, 17) == 0.0);
  CHECK(log2_binomial(5, 6) == -std::numeric_limits<double>::infinity());
  CHECK(binomial_l2(5, 6).is_zero());
  CHECK(binomial_l2(5, 2).log2() == doctest::Approx(std::log2(10.0)));
}

TEST_CASE("factorial log2") {
  double acc = 0.0;
  for (int n = 1; n <= 170; ++n) {
    acc += std::log2(static_cast<double>(n));
    CHECK(log2_factorial(n) == doctest::Approx(acc).epsilon(1e-11));
  }
}

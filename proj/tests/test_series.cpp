#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qseries/error.hpp"
#include "qseries/series.hpp"

using namespace qseries;

namespace {

const CoefficientRing Z = CoefficientRing::exact();

std::vector<std::string> strs(std::initializer_list<const char*> items) { return {items.begin(), items.end()}; }

}  // namespace

TEST_CASE("construction and coefficient access") {
  auto s = TruncatedSeries::make(Z, {1, 2, 4, 8, 14, 24});
  CHECK(s.order() == 6);
  CHECK(oracle::strings(s) == strs({"1", "2", "4", "8", "14", "24"}));
  CHECK(s.nonzero_count() == 6);

  auto r = TruncatedSeries::make(CoefficientRing::modular(5), {-1, 7, 10});
  CHECK(oracle::strings(r) == strs({"4", "2", "0"}));
  CHECK(r.is_zero_at(2));

  auto m = TruncatedSeries::monomial(Z, 5, 3, -2);
  CHECK(oracle::strings(m) == strs({"0", "0", "0", "-2", "0"}));
  CHECK(TruncatedSeries::monomial(Z, 3, 7).nonzero_count() == 0);
}

TEST_CASE("ring parsing") {
  CHECK(CoefficientRing::parse("exact").is_exact());
  CHECK(CoefficientRing::parse("mod:32").modulus() == 32);
  CHECK(CoefficientRing::parse("mod32").modulus() == 32);
  CHECK(CoefficientRing::parse("9").modulus() == 9);
  CHECK_THROWS_AS(CoefficientRing::modular(1), InvalidArgument);
  CHECK_THROWS_AS(CoefficientRing::modular(CoefficientRing::kMaxModulus + 1), InvalidArgument);
  CHECK_THROWS_AS(CoefficientRing::parse("mod:x"), InvalidArgument);
}

TEST_CASE("arithmetic truncates to the shorter operand") {
  auto a = TruncatedSeries::make(Z, {1, 1, 1, 1});
  auto b = TruncatedSeries::make(Z, {1, -1, 0});
  CHECK(oracle::strings(a + b) == strs({"2", "0", "1"}));
  CHECK(oracle::strings(a - b) == strs({"0", "2", "1"}));
  CHECK(oracle::strings(a * b) == strs({"1", "0", "0"}));
  CHECK(oracle::strings(scalar_mul(3, a)) == strs({"3", "3", "3", "3"}));
  CHECK(oracle::strings(-b) == strs({"-1", "1", "0"}));
}

TEST_CASE("inversion and division") {
  // 1/(1-q) = 1 + q + q^2 + ...
  auto g = invert(TruncatedSeries::make(Z, {1, -1, 0, 0, 0}));
  CHECK(oracle::strings(g) == strs({"1", "1", "1", "1", "1"}));
  auto d = divide(TruncatedSeries::make(Z, {1, 0, 0, 0}), TruncatedSeries::make(Z, {1, 1, 0, 0}));
  CHECK(oracle::strings(d) == strs({"1", "-1", "1", "-1"}));
  CHECK_THROWS_AS(invert(TruncatedSeries::make(Z, {2, 1})), NonUnit);
  CHECK_THROWS_AS(invert(TruncatedSeries::make(CoefficientRing::modular(8), {2, 1})), NonUnit);
  // 3 is a unit mod 8: 1/3 = 3.
  CHECK(invert(TruncatedSeries::make(CoefficientRing::modular(8), {3, 0})).coefficient(0) == 3);
  CHECK(oracle::strings(pow(TruncatedSeries::make(Z, {1, -1, 0, 0}), -2)) == strs({"1", "2", "3", "4"}));
  CHECK(oracle::strings(pow(TruncatedSeries::make(Z, {1, 1, 0, 0}), 3)) == strs({"1", "3", "3", "1"}));
  CHECK(pow(TruncatedSeries::make(Z, {5, 1}), 0) == TruncatedSeries::one(Z, 2));
}

TEST_CASE("substitution, shifts and dissection") {
  auto a = TruncatedSeries::make(Z, {1, 2, 3});
  auto s = substitute_power(a, 2);
  CHECK(s.order() == 6);
  CHECK(oracle::strings(s) == strs({"1", "0", "2", "0", "3", "0"}));
  CHECK(oracle::strings(substitute_neg(a)) == strs({"1", "-2", "3"}));
  auto sh = mul_qpower(a, 2);
  CHECK(sh.order() == 5);
  CHECK(oracle::strings(sh) == strs({"0", "0", "1", "2", "3"}));

  auto e = extract_dissection(TruncatedSeries::make(Z, {1, 2, 3, 4, 5}), 2, 1);
  CHECK(oracle::strings(e) == strs({"2", "4"}));
  CHECK(extract_dissection(TruncatedSeries::make(Z, {1, 2, 3, 4, 5}), 2, 0).order() == 3);
  CHECK_THROWS_AS(extract_dissection(a, 2, 2), InvalidArgument);
  CHECK_THROWS_AS(truncate(a, 4), OrderTooSmall);
  CHECK(truncate(a, 2).order() == 2);
}

TEST_CASE("rings do not mix") {
  auto a = TruncatedSeries::make(Z, {1, 2});
  auto b = TruncatedSeries::make(CoefficientRing::modular(7), {1, 2});
  CHECK_THROWS_AS(a + b, RingMismatch);
  CHECK_THROWS_AS(a * b, RingMismatch);
  CHECK(reduce_mod(a, 7) == b);
  CHECK(reduce_mod(TruncatedSeries::make(CoefficientRing::modular(32), {17, 9}), 8) ==
        TruncatedSeries::make(CoefficientRing::modular(8), {1, 1}));
  CHECK_THROWS_AS(reduce_mod(b, 2), RingMismatch);
}

TEST_CASE("first mismatch") {
  auto a = TruncatedSeries::make(Z, {1, 2, 3, 4});
  CHECK_FALSE(first_mismatch(a, truncate(a, 3)));
  CHECK(first_mismatch(a, TruncatedSeries::make(Z, {1, 2, 4, 4})) == 2u);
}

TEST_CASE("large products match the schoolbook oracle") {
  std::mt19937_64 rng(20240611);
  for (std::uint64_t m : {2ull, 32ull, 1000003ull, 2147483647ull}) {
    CAPTURE(m);
    const std::size_t n = 700;
    oracle::Coeffs a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<long>(rng() % 2000001) - 1000000;
      b[i] = static_cast<long>(rng() % 2000001) - 1000000;
    }
    const auto ring = CoefficientRing::modular(m);
    auto got = TruncatedSeries::from_integers(ring, a) * TruncatedSeries::from_integers(ring, b);
    CHECK(oracle::strings(got) == oracle::strings(oracle::reduce(oracle::mul(a, b), m)));
  }
  oracle::Coeffs a(300), b(300);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = mpz_class("123456789012345678901234567890") * static_cast<long>(i % 7) - static_cast<long>(i);
    b[i] = static_cast<long>(i * i) - 5;
  }
  CHECK(oracle::strings(TruncatedSeries::from_exact(a) * TruncatedSeries::from_exact(b)) ==
        oracle::strings(oracle::mul(a, b)));
}

TEST_CASE("printing") {
  CHECK(to_string(TruncatedSeries::make(Z, {1, -2, 0, 3})) == "1 - 2q + 3q^3 + O(q^4)");
}

#include <doctest.h>

#include "oracles.hpp"
#include "qseries/error.hpp"
#include "qseries/special_functions.hpp"

using namespace qseries;

TEST_CASE("f_k agrees with the multiplied-out product") {
  for (std::uint64_t k : {1, 2, 3, 7}) {
    CAPTURE(k);
    CHECK(oracle::strings(euler_f(k, 120)) == oracle::strings(oracle::eta({{k, 1}}, 120)));
    CHECK(oracle::strings(euler_f_inverse(k, 120)) == oracle::strings(oracle::eta({{k, -1}}, 120)));
  }
}

TEST_CASE("pentagonal support of f1") {
  const auto f = euler_f(1, 60);
  const std::vector<std::pair<std::size_t, int>> terms{{0, 1},  {1, -1}, {2, -1}, {5, 1},  {7, 1},
                                                       {12, -1}, {15, -1}, {22, 1}, {26, 1}, {35, -1},
                                                       {40, -1}, {51, 1},  {57, 1}};
  std::size_t j = 0;
  for (std::size_t n = 0; n < 60; ++n) {
    if (j < terms.size() && terms[j].first == n) {
      CHECK(f.coefficient(n) == terms[j++].second);
    } else {
      CHECK(f.coefficient(n) == 0);
    }
  }
}

TEST_CASE("dense modular path agrees with the exact expansion") {
  // Above 4096 coefficients modular eta quotients switch to the dense path.
  const auto ring = CoefficientRing::modular(32);
  EtaQuotientSpec spec{{{1, -17}, {2, 51}, {3, 34}, {12, 17}, {4, -17}, {6, -51}}, 0, 1};
  const auto dense = eta_quotient(spec, 5000, ring);
  CHECK(reduce_mod(eta_quotient(spec, 300), 32) == truncate(dense, 300));
  CHECK(dense.order() == 5000);
  CHECK(reduce_mod(euler_f(5, 5000), 32) == euler_f(5, 5000, ring));
}

TEST_CASE("theta functions") {
  const auto ph = phi(50);
  const auto ps = psi(50);
  for (std::size_t n = 0; n < 50; ++n) {
    int squares = 0, triangles = 0;
    for (long long k = -10; k <= 10; ++k) {
      if (static_cast<std::size_t>(k * k) == n) ++squares;
      if (k >= 0 && static_cast<std::size_t>(k * (k + 1) / 2) == n) ++triangles;
    }
    CHECK(ph.coefficient(n) == squares);
    CHECK(ps.coefficient(n) == triangles);
  }
  CHECK(theta_f({1, 1, 1, 1}, 80) == phi(80));
  CHECK(theta_f({1, 1, 1, 3}, 80) == psi(80));
  CHECK(theta_f({-1, 1, -1, 2}, 80) == euler_f(1, 80));
  CHECK_THROWS_AS(theta_f({1, 0, 1, 0}, 10), InvalidArgument);
  CHECK_THROWS_AS(theta_f({2, 1, 1, 1}, 10), InvalidArgument);
}

TEST_CASE("Pochhammer symbols") {
  // (-q; q)_inf / (q; q)_inf is the overpartition generating function.
  const auto over = divide(pochhammer(-1, 1, 1, std::nullopt, 16), pochhammer(1, 1, 1, std::nullopt, 16));
  CHECK(oracle::strings(over) == std::vector<std::string>{"1", "2", "4", "8", "14", "24", "40", "64", "100", "154",
                                                          "232", "344", "504", "728", "1040", "1472"});
  // (q; q)_2 = (1-q)(1-q^2)
  CHECK(oracle::strings(pochhammer(1, 1, 1, 2, 5)) == std::vector<std::string>{"1", "-1", "-1", "1", "0"});
  CHECK(oracle::strings(pochhammer(1, 0, 1, 0, 3)) == std::vector<std::string>{"1", "0", "0"});
}

TEST_CASE("B_k is never integral but 2B_k is") {
  for (std::uint64_t p : {3, 5, 7, 11}) {
    for (long long k = -static_cast<long long>(p - 1) / 2; k <= static_cast<long long>(p - 3) / 2; ++k) {
      CAPTURE(p);
      CAPTURE(k);
      CHECK_THROWS_AS(b_k_series(p, k, 40), NonIntegral);
      CHECK_NOTHROW(doubled_b_k(p, k, 40));
    }
  }
  // 2B_0 for p = 3: sum (-1)^n (6n+1) q^{(3n^2+n)/2}.
  const auto b = doubled_b_k(3, 0, 16);
  CHECK(b.coefficient(0) == 1);
  CHECK(b.coefficient(1) == 5);
  CHECK(b.coefficient(2) == -7);
  CHECK(b.coefficient(5) == -11);
  CHECK(b.coefficient(7) == 13);
  CHECK(b.coefficient(3) == 0);
}

TEST_CASE("exceptional index of the f1 p-dissection") {
  CHECK(euler_exceptional_index(5) == -1);
  CHECK(euler_exceptional_index(7) == 1);
  CHECK(euler_exceptional_index(11) == -2);
  CHECK(euler_exceptional_index(13) == 2);
  CHECK_THROWS_AS(euler_exceptional_index(9), InvalidArgument);
  CHECK_THROWS_AS(euler_exceptional_index(3), InvalidArgument);
}

TEST_CASE("psi dissection residues avoid the centre") {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19}) CHECK(psi_dissection_residues_avoid_center(p));
}

TEST_CASE("primality") {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t n = 0; n < 40; ++n) {
    if (is_prime(n)) primes.push_back(n);
  }
  CHECK(primes == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37});
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(2147483649ull));
}

TEST_CASE("eta quotient specs") {
  EtaQuotientSpec a{{{2, 3}, {1, -2}, {2, -1}}, 1, 2};
  const auto n = a.normalized();
  CHECK(n.factors == std::vector<EtaFactor>{{1, -2}, {2, 2}});
  CHECK(n.to_string() == "2*q*f2^2/f1^2");
  CHECK(a.power(2).normalized().to_string() == "4*q^2*f2^4/f1^4");
  EtaQuotientSpec inv{{{1, 1}}, 0, -1};
  CHECK(inv.power(-1).to_string() == "-1/f1");
  CHECK_THROWS_AS(a.power(-1), InvalidArgument);
  CHECK(oracle::strings(eta_quotient({{{2, 1}, {1, -2}}, 0, 1}, 10)) ==
        oracle::strings(oracle::eta({{2, 1}, {1, -2}}, 10)));
  CHECK(eta_quotient({{}, 3, 5}, 6).coefficient(3) == 5);
}

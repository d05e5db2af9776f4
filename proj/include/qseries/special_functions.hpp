#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qseries/series.hpp"

namespace qseries {

struct EtaFactor {
  std::uint64_t subscript = 1;
  long long exponent = 0;

  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

// scalar * q^qpower * prod f_k^e.
struct EtaQuotientSpec {
  std::vector<EtaFactor> factors;
  std::size_t qpower = 0;
  mpz_class scalar = 1;

  // Subscripts merged and sorted ascending, zero exponents dropped.
  EtaQuotientSpec normalized() const;

  // Product of two monomials.
  EtaQuotientSpec times(const EtaQuotientSpec& other) const;
  // Every exponent (and the scalar, q-power) raised to e; e < 0 needs scalar ±1 and no q-power.
  EtaQuotientSpec power(long long e) const;

  // Text like "2*q^3*f2^6*f3^4/(f1^8*f6^2)".
  std::string to_string() const;

  friend bool operator==(const EtaQuotientSpec& a, const EtaQuotientSpec& b);
};

// f(a, b) with a = a_sign*q^a_exp and b = b_sign*q^b_exp.
struct ThetaMonomialPair {
  int a_sign = 1;
  std::size_t a_exp = 1;
  int b_sign = 1;
  std::size_t b_exp = 1;

  void validate() const;
};

// prod_{n>=1} (1 - q^{kn}) from the pentagonal number theorem.
TruncatedSeries euler_f(std::uint64_t k, std::size_t order, CoefficientRing ring = CoefficientRing::exact());

// 1/f_k, generated from the pentagonal recurrence on f_1.
TruncatedSeries euler_f_inverse(std::uint64_t k, std::size_t order, CoefficientRing ring = CoefficientRing::exact());

// (a; q^step)_n with a = a_sign*q^a_exp; nullopt means n = infinity.
TruncatedSeries pochhammer(int a_sign, std::size_t a_exp, std::size_t q_step, std::optional<std::size_t> n,
                           std::size_t order, CoefficientRing ring = CoefficientRing::exact());

// Ramanujan's bilateral theta sum.
TruncatedSeries theta_f(const ThetaMonomialPair& pair, std::size_t order,
                        CoefficientRing ring = CoefficientRing::exact());

TruncatedSeries phi(std::size_t order, CoefficientRing ring = CoefficientRing::exact());
TruncatedSeries psi(std::size_t order, CoefficientRing ring = CoefficientRing::exact());

// B_k(q) = 1/2 sum_n (-1)^n (2pn+2k+1) q^{(pn^2+(2k+1)n)/2}. Throws NonIntegral if
// the halved coefficients are not integers.
TruncatedSeries b_k_series(std::uint64_t p, long long k, std::size_t order,
                           CoefficientRing ring = CoefficientRing::exact());

// 2*B_k(q), which is always integral.
TruncatedSeries doubled_b_k(std::uint64_t p, long long k, std::size_t order,
                            CoefficientRing ring = CoefficientRing::exact());

TruncatedSeries eta_quotient(const EtaQuotientSpec& spec, std::size_t order,
                             CoefficientRing ring = CoefficientRing::exact());

// The index excluded from the f_1 p-dissection sum: (p-1)/6 if p = 1 (mod 6),
// (-p-1)/6 if p = -1 (mod 6).
long long euler_exceptional_index(std::uint64_t p);

// True when (m^2+m)/2 avoids (p^2-1)/8 modulo p for every 0 <= m <= (p-3)/2.
bool psi_dissection_residues_avoid_center(std::uint64_t p);

bool is_prime(std::uint64_t n);

}  // namespace qseries

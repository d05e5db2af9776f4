#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "qseries/error.hpp"

namespace qseries {

// Either the exact integers or Z/mZ. A modulus of zero stands for the exact ring.
class CoefficientRing {
 public:
  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

  constexpr CoefficientRing() noexcept = default;

  static constexpr CoefficientRing exact() noexcept { return {}; }
  static CoefficientRing modular(std::uint64_t modulus);

  // "exact", "mod:32", "mod32" or a bare modulus "32".
  static CoefficientRing parse(std::string_view text);

  constexpr bool is_exact() const noexcept { return modulus_ == 0; }
  constexpr std::uint64_t modulus() const noexcept { return modulus_; }

  std::string describe() const;

  friend constexpr bool operator==(CoefficientRing, CoefficientRing) noexcept = default;

 private:
  explicit constexpr CoefficientRing(std::uint64_t m) noexcept : modulus_(m) {}

  std::uint64_t modulus_ = 0;
};

// Coefficients of q^0 .. q^(order-1) of a formal power series. Values are
// immutable once built; every operation returns a new series whose order is
// the largest one its inputs justify.
class TruncatedSeries {
 public:
  using ExactCoeffs = std::vector<mpz_class>;
  using ResidueCoeffs = std::vector<std::uint64_t>;

  static TruncatedSeries make(CoefficientRing ring, std::span<const long long> coeffs);
  static TruncatedSeries make(CoefficientRing ring, std::initializer_list<long long> coeffs);
  static TruncatedSeries from_integers(CoefficientRing ring, std::span<const mpz_class> coeffs);
  static TruncatedSeries from_residues(CoefficientRing ring, ResidueCoeffs residues);
  static TruncatedSeries from_exact(ExactCoeffs coeffs);

  static TruncatedSeries zero(CoefficientRing ring, std::size_t order);
  static TruncatedSeries one(CoefficientRing ring, std::size_t order);
  // scalar * q^exponent, truncated to `order`.
  static TruncatedSeries monomial(CoefficientRing ring, std::size_t order, std::size_t exponent,
                                  long long scalar = 1);

  const CoefficientRing& ring() const noexcept { return ring_; }
  std::size_t order() const noexcept;

  // Exact value, or the residue in [0, m) for modular rings.
  mpz_class coefficient(std::size_t n) const;
  bool is_zero_at(std::size_t n) const;
  std::vector<mpz_class> coefficients() const;
  std::size_t nonzero_count() const;

  const ExactCoeffs& exact_coeffs() const;
  const ResidueCoeffs& residues() const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  TruncatedSeries(CoefficientRing ring, std::variant<ExactCoeffs, ResidueCoeffs> data);

  CoefficientRing ring_;
  std::variant<ExactCoeffs, ResidueCoeffs> data_;

  friend class SeriesAccess;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries negate(const TruncatedSeries& a);
TruncatedSeries scalar_mul(const mpz_class& c, const TruncatedSeries& a);

// Cauchy product truncated to min(order(a), order(b)).
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

// 1/a by the recurrence c0*b_n = -sum_{j>=1} a_j b_{n-j}. Requires a unit constant term.
TruncatedSeries invert(const TruncatedSeries& a);

// a/b by the same recurrence; cheaper than mul(a, invert(b)) when b is sparse.
TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b);

// a^e by repeated squaring; negative exponents go through invert().
TruncatedSeries pow(const TruncatedSeries& a, long long e);

// a(q^k). Every index below k*order(a) is determined, so that is the result order.
TruncatedSeries substitute_power(const TruncatedSeries& a, std::size_t k);

// a(-q).
TruncatedSeries substitute_neg(const TruncatedSeries& a);

// q^j * a; order grows by j.
TruncatedSeries mul_qpower(const TruncatedSeries& a, std::size_t j);

// sum_n a_{mn+r} q^n, of order ceil((order(a)-r)/m).
TruncatedSeries extract_dissection(const TruncatedSeries& a, std::size_t m, std::size_t r);

// Map into Z/mZ. From a modular ring this requires m to divide the current modulus.
TruncatedSeries reduce_mod(const TruncatedSeries& a, std::uint64_t m);

// Keep the first `order` coefficients; order must not exceed order(a).
TruncatedSeries truncate(const TruncatedSeries& a, std::size_t order);

// First index below min order where the two series differ.
std::optional<std::size_t> first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b);

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  return add(a, b);
}
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  return sub(a, b);
}
inline TruncatedSeries operator-(const TruncatedSeries& a) { return negate(a); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return mul(a, b);
}

std::string to_string(const TruncatedSeries& a, std::size_t max_terms = 12);

}  // namespace qseries

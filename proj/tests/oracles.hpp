#pragma once

// Slow, independent reference implementations. They share no code with the
// library: products are multiplied out factor by factor on plain integers.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "qseries/series.hpp"

namespace oracle {

using Coeffs = std::vector<mpz_class>;

inline Coeffs one(std::size_t n) {
  Coeffs c(n, 0);
  if (n) c[0] = 1;
  return c;
}

// c *= (1 + sign*q^k)
inline void times_binomial(Coeffs& c, std::size_t k, int sign) {
  for (std::size_t i = c.size(); i-- > k;) c[i] += sign * c[i - k];
}

// c /= (1 - q^k)
inline void over_one_minus(Coeffs& c, std::size_t k) {
  for (std::size_t i = k; i < c.size(); ++i) c[i] += c[i - k];
}

// f_k^e for any integer e, by repeated factor multiplication or division.
inline void times_eta(Coeffs& c, std::size_t k, long long e) {
  for (std::size_t j = k; j < c.size(); j += k) {
    for (long long i = 0; i < (e < 0 ? -e : e); ++i) {
      if (e > 0) {
        times_binomial(c, j, -1);
      } else {
        over_one_minus(c, j);
      }
    }
  }
}

inline Coeffs eta(std::initializer_list<std::pair<std::size_t, long long>> factors, std::size_t n) {
  Coeffs c = one(n);
  for (auto [k, e] : factors) times_eta(c, k, e);
  return c;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  Coeffs c(std::min(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; i + j < c.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// Overpartitions into odd parts not divisible by t: prod (1+q^k)/(1-q^k).
inline Coeffs odd_overpartitions(unsigned t, std::size_t n) {
  Coeffs c = one(n);
  for (std::size_t k = 1; k < n; k += 2) {
    if (k % t == 0) continue;
    times_binomial(c, k, 1);
    over_one_minus(c, k);
  }
  return c;
}

inline std::vector<std::string> strings(const Coeffs& c) {
  std::vector<std::string> out;
  for (const auto& v : c) out.push_back(v.get_str());
  return out;
}

inline std::vector<std::string> strings(const qseries::TruncatedSeries& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.order(); ++i) out.push_back(s.coefficient(i).get_str());
  return out;
}

inline Coeffs reduce(Coeffs c, unsigned long m) {
  for (auto& v : c) {
    v %= m;
    if (v < 0) v += m;
  }
  return c;
}

}  // namespace oracle

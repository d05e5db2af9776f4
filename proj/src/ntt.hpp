#pragma once

// Number-theoretic transform convolution of residue vectors. The exact integer
// convolution is recovered by CRT over up to three NTT primes and then reduced
// modulo the caller's modulus, so any modulus below 2^31 works.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qseries::detail {

template <std::uint32_t Mod>
class NttField {
 public:
  static constexpr std::uint32_t kMod = Mod;

  static constexpr std::uint32_t mul(std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % Mod);
  }

  static constexpr std::uint32_t power(std::uint32_t base, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  static void transform(std::vector<std::uint32_t>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      std::uint32_t w = power(3, (Mod - 1) / len);
      if (inverse) w = power(w, Mod - 2);
      const std::size_t half = len / 2;
      std::vector<std::uint32_t> roots(half);
      roots[0] = 1;
      for (std::size_t k = 1; k < half; ++k) roots[k] = mul(roots[k - 1], w);
      for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t k = 0; k < half; ++k) {
          const std::uint32_t u = a[i + k];
          const std::uint32_t v = mul(a[i + k + half], roots[k]);
          a[i + k] = u + v >= Mod ? u + v - Mod : u + v;
          a[i + k + half] = u >= v ? u - v : u + Mod - v;
        }
      }
    }
    if (inverse) {
      const std::uint32_t inv_n = power(static_cast<std::uint32_t>(n % Mod), Mod - 2);
      for (auto& x : a) x = mul(x, inv_n);
    }
  }

  // Cyclic-free product truncated to `out_len` terms, all arithmetic mod Mod.
  static std::vector<std::uint32_t> convolve(std::span<const std::uint64_t> a,
                                             std::span<const std::uint64_t> b,
                                             std::size_t out_len) {
    const std::size_t need = std::min(out_len, a.size() + b.size() - 1);
    std::size_t size = std::bit_ceil(a.size() + b.size() - 1);
    std::vector<std::uint32_t> fa(size, 0), fb(size, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = static_cast<std::uint32_t>(a[i] % Mod);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = static_cast<std::uint32_t>(b[i] % Mod);
    transform(fa, false);
    transform(fb, false);
    for (std::size_t i = 0; i < size; ++i) fa[i] = mul(fa[i], fb[i]);
    transform(fa, true);
    fa.resize(need);
    return fa;
  }
};

using NttPrime0 = NttField<998244353>;
using NttPrime1 = NttField<167772161>;
using NttPrime2 = NttField<469762049>;

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

// Truncated product of residues (each < modulus). The input lengths are
// trimmed to out_len by the caller.
inline std::vector<std::uint64_t> ntt_convolve(std::span<const std::uint64_t> a,
                                               std::span<const std::uint64_t> b,
                                               std::size_t out_len, std::uint64_t modulus) {
  using u128 = unsigned __int128;
  const std::size_t terms = std::min(a.size(), b.size());
  const u128 bound = static_cast<u128>(terms) * (modulus - 1) * (modulus - 1);
  constexpr std::uint64_t p0 = NttPrime0::kMod, p1 = NttPrime1::kMod, p2 = NttPrime2::kMod;

  auto c0 = NttPrime0::convolve(a, b, out_len);
  std::vector<std::uint64_t> out(c0.size());
  if (bound < p0) {
    for (std::size_t i = 0; i < c0.size(); ++i) out[i] = c0[i] % modulus;
    return out;
  }
  auto c1 = NttPrime1::convolve(a, b, out_len);
  const std::uint64_t p0_inv_mod_p1 = inverse_mod(p0, p1);
  if (bound < static_cast<u128>(p0) * p1) {
    for (std::size_t i = 0; i < c0.size(); ++i) {
      const std::uint64_t t = (c1[i] + p1 - c0[i] % p1) % p1 * p0_inv_mod_p1 % p1;
      const u128 value = c0[i] + static_cast<u128>(t) * p0;
      out[i] = static_cast<std::uint64_t>(value % modulus);
    }
    return out;
  }
  auto c2 = NttPrime2::convolve(a, b, out_len);
  const std::uint64_t p01_inv_mod_p2 = inverse_mod(p0 * p1 % p2, p2);
  for (std::size_t i = 0; i < c0.size(); ++i) {
    const std::uint64_t t1 = (c1[i] + p1 - c0[i] % p1) % p1 * p0_inv_mod_p1 % p1;
    const u128 x01 = c0[i] + static_cast<u128>(t1) * p0;  // < p0*p1
    const std::uint64_t x01_mod_p2 = static_cast<std::uint64_t>(x01 % p2);
    const std::uint64_t t2 = (c2[i] + p2 - x01_mod_p2) % p2 * p01_inv_mod_p2 % p2;
    const u128 value = x01 + static_cast<u128>(t2) * p0 * p1;
    out[i] = static_cast<std::uint64_t>(value % modulus);
  }
  return out;
}

}  // namespace qseries::detail

#include "qseries/special_functions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qseries {

namespace {

// Past this order a modular eta quotient is assembled from dense powers
// (transform products) instead of repeated sparse multiply/divide passes.
constexpr std::size_t kDenseEtaOrder = 4096;

// Adds sign * q^e for every exponent produced by `exponent(n)`, n ranging over
// all integers. Each direction stops once the exponent passes `order` and is
// monotone from there on.
template <class Exponent, class Coefficient>
std::vector<mpz_class> bilateral_sum(std::size_t order, Exponent exponent, Coefficient coefficient) {
  std::vector<mpz_class> c(order);
  for (int direction : {+1, -1}) {
    long long previous = 0;
    for (long long step = direction > 0 ? 0 : 1;; ++step) {
      const long long n = direction * step;
      const long long e = exponent(n);
      if (e >= 0 && static_cast<std::size_t>(e) < order) c[static_cast<std::size_t>(e)] += coefficient(n);
      const bool monotone = step >= 2 && e > previous;
      if (monotone && e >= static_cast<long long>(order)) break;
      previous = e;
    }
  }
  return c;
}

void multiply_binomial(std::vector<mpz_class>& c, int sign, std::size_t shift) {
  // c *= (1 - sign*q^shift)
  if (shift == 0) {
    const long factor = 1 - sign;
    for (auto& x : c) x *= factor;
    return;
  }
  for (std::size_t i = c.size(); i-- > shift;) {
    if (sign > 0) {
      c[i] -= c[i - shift];
    } else {
      c[i] += c[i - shift];
    }
  }
}

}  // namespace

// --- EtaQuotientSpec -------------------------------------------------------

EtaQuotientSpec EtaQuotientSpec::normalized() const {
  std::map<std::uint64_t, long long> merged;
  for (const auto& f : factors) {
    if (f.subscript < 1) throw InvalidArgument("eta subscript must be positive");
    merged[f.subscript] += f.exponent;
  }
  EtaQuotientSpec out;
  out.qpower = qpower;
  out.scalar = scalar;
  for (const auto& [k, e] : merged) {
    if (e != 0) out.factors.push_back({k, e});
  }
  return out;
}

EtaQuotientSpec EtaQuotientSpec::times(const EtaQuotientSpec& other) const {
  EtaQuotientSpec out = *this;
  out.factors.insert(out.factors.end(), other.factors.begin(), other.factors.end());
  out.qpower += other.qpower;
  out.scalar *= other.scalar;
  return out.normalized();
}

EtaQuotientSpec EtaQuotientSpec::power(long long e) const {
  EtaQuotientSpec out;
  if (e < 0) {
    if (qpower != 0) throw InvalidArgument("negative power of a q-shifted monomial");
    if (abs(scalar) != 1) throw InvalidArgument("negative power of a non-unit scalar");
  }
  out.qpower = qpower * static_cast<std::size_t>(e < 0 ? 0 : e);
  mpz_pow_ui(out.scalar.get_mpz_t(), scalar.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  for (const auto& f : factors) out.factors.push_back({f.subscript, f.exponent * e});
  return out.normalized();
}

std::string EtaQuotientSpec::to_string() const {
  const EtaQuotientSpec n = normalized();
  auto render = [](const std::vector<EtaFactor>& fs, bool negate) {
    std::ostringstream os;
    bool first = true;
    for (const auto& f : fs) {
      if (!first) os << "*";
      os << "f" << f.subscript;
      const long long e = negate ? -f.exponent : f.exponent;
      if (e != 1) os << "^" << e;
      first = false;
    }
    return os.str();
  };
  std::vector<EtaFactor> num, den;
  for (const auto& f : n.factors) (f.exponent > 0 ? num : den).push_back(f);
  std::ostringstream os;
  std::vector<std::string> parts;
  if (n.scalar != 1 || (num.empty() && n.qpower == 0)) parts.push_back(n.scalar.get_str());
  if (n.qpower == 1) parts.push_back("q");
  if (n.qpower > 1) parts.push_back("q^" + std::to_string(n.qpower));
  if (!num.empty()) parts.push_back(render(num, false));
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
  if (parts.empty()) os << "1";
  if (!den.empty()) os << (den.size() == 1 ? "/" : "/(") << render(den, true) << (den.size() == 1 ? "" : ")");
  return os.str();
}

bool operator==(const EtaQuotientSpec& a, const EtaQuotientSpec& b) {
  const auto na = a.normalized();
  const auto nb = b.normalized();
  return na.factors == nb.factors && na.qpower == nb.qpower && na.scalar == nb.scalar;
}

void ThetaMonomialPair::validate() const {
  if ((a_sign != 1 && a_sign != -1) || (b_sign != 1 && b_sign != -1)) {
    throw InvalidArgument("theta signs must be +1 or -1");
  }
  if (a_exp + b_exp < 1) throw InvalidArgument("theta exponents must not both be zero");
}

// --- constructors ----------------------------------------------------------

TruncatedSeries euler_f(std::uint64_t k, std::size_t order, CoefficientRing ring) {
  if (k < 1) throw InvalidArgument("euler_f subscript must be positive");
  if (order < 1) throw InvalidArgument("order must be positive");
  const long long kk = static_cast<long long>(k);
  auto c = bilateral_sum(
      order, [kk](long long j) { return kk * (j * (3 * j - 1) / 2); },
      [](long long j) { return mpz_class(j % 2 == 0 ? 1 : -1); });
  return TruncatedSeries::from_integers(ring, c);
}

TruncatedSeries euler_f_inverse(std::uint64_t k, std::size_t order, CoefficientRing ring) {
  if (k < 1) throw InvalidArgument("euler_f subscript must be positive");
  const std::size_t base_order = (order + k - 1) / k;
  const TruncatedSeries f1 = euler_f(1, base_order, ring);
  const TruncatedSeries partitions = invert(f1);
  return truncate(substitute_power(partitions, k), order);
}

TruncatedSeries pochhammer(int a_sign, std::size_t a_exp, std::size_t q_step, std::optional<std::size_t> n,
                           std::size_t order, CoefficientRing ring) {
  if (a_sign != 1 && a_sign != -1) throw InvalidArgument("pochhammer sign must be +1 or -1");
  if (q_step < 1) throw InvalidArgument("pochhammer step must be positive");
  if (!n && a_exp == 0 && a_sign == 1) throw InvalidArgument("(1;q)_inf vanishes identically");
  std::vector<mpz_class> c(order);
  c[0] = 1;
  for (std::size_t i = 0; !n || i < *n; ++i) {
    const std::size_t shift = a_exp + q_step * i;
    if (shift >= order) break;  // remaining factors are 1 to this order
    multiply_binomial(c, a_sign, shift);
  }
  return TruncatedSeries::from_integers(ring, c);
}

TruncatedSeries theta_f(const ThetaMonomialPair& pair, std::size_t order, CoefficientRing ring) {
  pair.validate();
  const long long a = static_cast<long long>(pair.a_exp);
  const long long b = static_cast<long long>(pair.b_exp);
  auto c = bilateral_sum(
      order, [a, b](long long n) { return a * (n * (n + 1) / 2) + b * (n * (n - 1) / 2); },
      [&pair](long long n) {
        const long long ta = n * (n + 1) / 2;
        const long long tb = n * (n - 1) / 2;
        int s = 1;
        if (pair.a_sign < 0 && ta % 2 != 0) s = -s;
        if (pair.b_sign < 0 && tb % 2 != 0) s = -s;
        return mpz_class(s);
      });
  return TruncatedSeries::from_integers(ring, c);
}

TruncatedSeries phi(std::size_t order, CoefficientRing ring) {
  return eta_quotient({{{1, -2}, {2, 5}, {4, -2}}}, order, ring);
}

TruncatedSeries psi(std::size_t order, CoefficientRing ring) {
  return eta_quotient({{{1, -1}, {2, 2}}}, order, ring);
}

TruncatedSeries doubled_b_k(std::uint64_t p, long long k, std::size_t order, CoefficientRing ring) {
  if (p < 3 || p % 2 == 0) throw InvalidArgument("B_k needs an odd p >= 3");
  const long long pp = static_cast<long long>(p);
  const long long odd = 2 * k + 1;
  for (long long n : {-1LL, 1LL}) {
    if (pp * n * n + odd * n < 0) throw InvalidArgument("B_k exponent would be negative");
  }
  auto c = bilateral_sum(
      order, [pp, odd](long long n) { return (pp * n * n + odd * n) / 2; },
      [pp, odd](long long n) { return mpz_class(static_cast<long>((n % 2 == 0 ? 1 : -1) * (2 * pp * n + odd))); });
  return TruncatedSeries::from_integers(ring, c);
}

TruncatedSeries b_k_series(std::uint64_t p, long long k, std::size_t order, CoefficientRing ring) {
  const TruncatedSeries doubled = doubled_b_k(p, k, order, CoefficientRing::exact());
  std::vector<mpz_class> c = doubled.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!mpz_divisible_ui_p(c[i].get_mpz_t(), 2)) {
      throw NonIntegral("B_" + std::to_string(k) + " for p=" + std::to_string(p) +
                        " has half-integer coefficient at q^" + std::to_string(i));
    }
    mpz_divexact_ui(c[i].get_mpz_t(), c[i].get_mpz_t(), 2);
  }
  return TruncatedSeries::from_integers(ring, c);
}

TruncatedSeries eta_quotient(const EtaQuotientSpec& spec, std::size_t order, CoefficientRing ring) {
  if (order < 1) throw InvalidArgument("order must be positive");
  const EtaQuotientSpec n = spec.normalized();
  if (n.qpower >= order) return TruncatedSeries::zero(ring, order);
  const std::size_t core_order = order - n.qpower;

  TruncatedSeries core = TruncatedSeries::one(ring, core_order);
  if (ring.is_exact() || core_order <= kDenseEtaOrder) {
    // Sparse passes: each f_k has O(sqrt(order/k)) nonzero terms.
    for (const auto& f : n.factors) {
      const TruncatedSeries fk = euler_f(f.subscript, core_order, ring);
      for (long long i = 0; i < (f.exponent < 0 ? -f.exponent : f.exponent); ++i) {
        core = f.exponent > 0 ? mul(core, fk) : divide(core, fk);
      }
    }
  } else {
    for (const auto& f : n.factors) {
      const TruncatedSeries base = f.exponent > 0 ? euler_f(f.subscript, core_order, ring)
                                                  : euler_f_inverse(f.subscript, core_order, ring);
      core = mul(core, pow(base, f.exponent > 0 ? f.exponent : -f.exponent));
    }
  }
  if (n.scalar != 1) core = scalar_mul(n.scalar, core);
  return mul_qpower(core, n.qpower);
}

// --- arithmetic helpers ----------------------------------------------------

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

long long euler_exceptional_index(std::uint64_t p) {
  if (!is_prime(p) || p < 5) throw InvalidArgument("needs a prime p >= 5");
  const long long pp = static_cast<long long>(p);
  return p % 6 == 1 ? (pp - 1) / 6 : (-pp - 1) / 6;
}

bool psi_dissection_residues_avoid_center(std::uint64_t p) {
  if (!is_prime(p) || p < 3) throw InvalidArgument("needs an odd prime");
  const std::uint64_t center = ((p * p - 1) / 8) % p;
  for (std::uint64_t m = 0; m + 3 <= p; ++m) {
    if (m > (p - 3) / 2) break;
    if (((m * m + m) / 2) % p == center) return false;
  }
  return true;
}

}  // namespace qseries

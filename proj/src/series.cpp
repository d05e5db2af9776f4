#include "qseries/series.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <utility>

#include "ntt.hpp"

namespace qseries {

namespace {

using ExactCoeffs = TruncatedSeries::ExactCoeffs;
using ResidueCoeffs = TruncatedSeries::ResidueCoeffs;

// Below this many nonzero terms in the sparser operand a schoolbook product
// beats the transform.
constexpr std::size_t kSparseProductLimit = 48;

std::uint64_t reduce_signed(long long v, std::uint64_t m) {
  const long long r = v % static_cast<long long>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(m) : r);
}

std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), m);
  return r.get_ui();
}

void require_same_ring(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.ring() != b.ring()) {
    throw RingMismatch("ring mismatch: " + a.ring().describe() + " vs " + b.ring().describe());
  }
}

template <class T>
std::vector<std::size_t> nonzero_positions(const std::vector<T>& v, std::size_t limit) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < std::min(limit, v.size()); ++i) {
    if (v[i] != 0) out.push_back(i);
  }
  return out;
}

ExactCoeffs exact_product(const ExactCoeffs& a, const ExactCoeffs& b, std::size_t n) {
  ExactCoeffs c(n);
  auto na = nonzero_positions(a, n);
  auto nb = nonzero_positions(b, n);
  const ExactCoeffs& sparse = na.size() <= nb.size() ? a : b;
  const ExactCoeffs& dense = na.size() <= nb.size() ? b : a;
  for (std::size_t i : (na.size() <= nb.size() ? na : nb)) {
    const mpz_class& x = sparse[i];
    for (std::size_t j = 0; i + j < n; ++j) {
      if (dense[j] != 0) mpz_addmul(c[i + j].get_mpz_t(), x.get_mpz_t(), dense[j].get_mpz_t());
    }
  }
  return c;
}

ResidueCoeffs residue_product(const ResidueCoeffs& a, const ResidueCoeffs& b, std::size_t n,
                              std::uint64_t m) {
  auto na = nonzero_positions(a, n);
  auto nb = nonzero_positions(b, n);
  if (std::min(na.size(), nb.size()) > kSparseProductLimit) {
    return detail::ntt_convolve(std::span(a).first(n), std::span(b).first(n), n, m);
  }
  const bool a_sparse = na.size() <= nb.size();
  const ResidueCoeffs& sparse = a_sparse ? a : b;
  const ResidueCoeffs& dense = a_sparse ? b : a;
  std::vector<unsigned __int128> acc(n, 0);
  for (std::size_t i : (a_sparse ? na : nb)) {
    const std::uint64_t x = sparse[i];
    for (std::size_t j = 0; i + j < n; ++j) acc[i + j] += static_cast<unsigned __int128>(x) * dense[j];
  }
  ResidueCoeffs c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint64_t>(acc[i] % m);
  return c;
}

// Solves d * out = num for out, with d's constant term a unit.
ExactCoeffs exact_quotient(const ExactCoeffs& num, const ExactCoeffs& d, std::size_t n) {
  const int c0 = d[0] == 1 ? 1 : (d[0] == -1 ? -1 : 0);
  if (c0 == 0) throw NonUnit("constant term " + d[0].get_str() + " is not a unit");
  auto tail = nonzero_positions(d, n);
  std::erase(tail, std::size_t{0});
  ExactCoeffs out(n);
  mpz_class s;
  for (std::size_t k = 0; k < n; ++k) {
    s = num[k];
    for (std::size_t j : tail) {
      if (j > k) break;
      mpz_submul(s.get_mpz_t(), d[j].get_mpz_t(), out[k - j].get_mpz_t());
    }
    if (c0 < 0) s = -s;
    out[k] = s;
  }
  return out;
}

ResidueCoeffs residue_quotient(const ResidueCoeffs& num, const ResidueCoeffs& d, std::size_t n,
                               std::uint64_t m) {
  if (std::gcd(d[0], m) != 1) {
    throw NonUnit("constant term " + std::to_string(d[0]) + " is not a unit mod " +
                  std::to_string(m));
  }
  const std::uint64_t c0_inv = detail::inverse_mod(d[0], m);
  auto tail = nonzero_positions(d, n);
  std::erase(tail, std::size_t{0});
  ResidueCoeffs out(n);
  for (std::size_t k = 0; k < n; ++k) {
    unsigned __int128 s = num[k];
    // Subtract by adding the additive inverse to stay unsigned.
    for (std::size_t j : tail) {
      if (j > k) break;
      s += static_cast<unsigned __int128>(m - d[j]) * out[k - j];
    }
    out[k] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(s % m) * c0_inv % m);
  }
  return out;
}

}  // namespace

class SeriesAccess {
 public:
  static TruncatedSeries build(CoefficientRing ring, ExactCoeffs c) {
    return TruncatedSeries(ring, std::move(c));
  }
  static TruncatedSeries build(CoefficientRing ring, ResidueCoeffs c) {
    return TruncatedSeries(ring, std::move(c));
  }
};

namespace {

TruncatedSeries build(CoefficientRing ring, ExactCoeffs c) {
  return SeriesAccess::build(ring, std::move(c));
}
TruncatedSeries build(CoefficientRing ring, ResidueCoeffs c) {
  return SeriesAccess::build(ring, std::move(c));
}

}  // namespace

// --- CoefficientRing -------------------------------------------------------

CoefficientRing CoefficientRing::modular(std::uint64_t modulus) {
  if (modulus < 2) throw InvalidArgument("modulus must be at least 2");
  if (modulus > kMaxModulus) throw InvalidArgument("modulus exceeds 2^31-1");
  return CoefficientRing(modulus);
}

CoefficientRing CoefficientRing::parse(std::string_view text) {
  if (text == "exact" || text == "Z") return exact();
  std::string_view digits = text;
  if (digits.starts_with("mod:")) {
    digits.remove_prefix(4);
  } else if (digits.starts_with("mod")) {
    digits.remove_prefix(3);
  }
  std::uint64_t m = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
    throw InvalidArgument("unrecognized ring '" + std::string(text) + "'");
  }
  return modular(m);
}

std::string CoefficientRing::describe() const {
  return is_exact() ? "exact" : "mod " + std::to_string(modulus_);
}

// --- TruncatedSeries -------------------------------------------------------

TruncatedSeries::TruncatedSeries(CoefficientRing ring, std::variant<ExactCoeffs, ResidueCoeffs> data)
    : ring_(ring), data_(std::move(data)) {
  if (order() == 0) throw InvalidArgument("series must have at least one coefficient");
}

TruncatedSeries TruncatedSeries::make(CoefficientRing ring, std::span<const long long> coeffs) {
  if (coeffs.empty()) throw InvalidArgument("empty coefficient list");
  if (ring.is_exact()) {
    ExactCoeffs c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = static_cast<long>(coeffs[i]);
    return build(ring, std::move(c));
  }
  ResidueCoeffs c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = reduce_signed(coeffs[i], ring.modulus());
  return build(ring, std::move(c));
}

TruncatedSeries TruncatedSeries::make(CoefficientRing ring, std::initializer_list<long long> coeffs) {
  return make(ring, std::span<const long long>(coeffs.begin(), coeffs.size()));
}

TruncatedSeries TruncatedSeries::from_integers(CoefficientRing ring, std::span<const mpz_class> coeffs) {
  if (coeffs.empty()) throw InvalidArgument("empty coefficient list");
  if (ring.is_exact()) return build(ring, ExactCoeffs(coeffs.begin(), coeffs.end()));
  ResidueCoeffs c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = reduce_mpz(coeffs[i], ring.modulus());
  return build(ring, std::move(c));
}

TruncatedSeries TruncatedSeries::from_residues(CoefficientRing ring, ResidueCoeffs residues) {
  if (ring.is_exact()) throw InvalidArgument("from_residues needs a modular ring");
  for (auto& r : residues) r %= ring.modulus();
  return build(ring, std::move(residues));
}

TruncatedSeries TruncatedSeries::from_exact(ExactCoeffs coeffs) {
  return build(CoefficientRing::exact(), std::move(coeffs));
}

TruncatedSeries TruncatedSeries::zero(CoefficientRing ring, std::size_t order) {
  if (ring.is_exact()) return build(ring, ExactCoeffs(order));
  return build(ring, ResidueCoeffs(order, 0));
}

TruncatedSeries TruncatedSeries::one(CoefficientRing ring, std::size_t order) {
  return monomial(ring, order, 0, 1);
}

TruncatedSeries TruncatedSeries::monomial(CoefficientRing ring, std::size_t order,
                                          std::size_t exponent, long long scalar) {
  if (ring.is_exact()) {
    ExactCoeffs c(order);
    if (exponent < order) c[exponent] = static_cast<long>(scalar);
    return build(ring, std::move(c));
  }
  ResidueCoeffs c(order, 0);
  if (exponent < order) c[exponent] = reduce_signed(scalar, ring.modulus());
  return build(ring, std::move(c));
}

std::size_t TruncatedSeries::order() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, data_);
}

mpz_class TruncatedSeries::coefficient(std::size_t n) const {
  if (n >= order()) throw OrderTooSmall(n + 1, order());
  if (ring_.is_exact()) return std::get<ExactCoeffs>(data_)[n];
  return mpz_class(static_cast<unsigned long>(std::get<ResidueCoeffs>(data_)[n]));
}

bool TruncatedSeries::is_zero_at(std::size_t n) const {
  if (n >= order()) throw OrderTooSmall(n + 1, order());
  return std::visit([n](const auto& v) { return v[n] == 0; }, data_);
}

std::vector<mpz_class> TruncatedSeries::coefficients() const {
  std::vector<mpz_class> out(order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coefficient(i);
  return out;
}

std::size_t TruncatedSeries::nonzero_count() const {
  return std::visit(
      [](const auto& v) {
        return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const auto& x) { return x != 0; }));
      },
      data_);
}

const ExactCoeffs& TruncatedSeries::exact_coeffs() const {
  if (!ring_.is_exact()) throw RingMismatch("series is not over the exact ring");
  return std::get<ExactCoeffs>(data_);
}

const ResidueCoeffs& TruncatedSeries::residues() const {
  if (ring_.is_exact()) throw RingMismatch("series is not over a modular ring");
  return std::get<ResidueCoeffs>(data_);
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.ring_ == b.ring_ && a.data_ == b.data_;
}

// --- operations ------------------------------------------------------------

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_ring(a, b);
  const std::size_t n = std::min(a.order(), b.order());
  if (a.ring().is_exact()) {
    ExactCoeffs c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = a.exact_coeffs()[i] + b.exact_coeffs()[i];
    return build(a.ring(), std::move(c));
  }
  const std::uint64_t m = a.ring().modulus();
  ResidueCoeffs c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = (a.residues()[i] + b.residues()[i]) % m;
  return build(a.ring(), std::move(c));
}

TruncatedSeries negate(const TruncatedSeries& a) {
  if (a.ring().is_exact()) {
    ExactCoeffs c = a.exact_coeffs();
    for (auto& x : c) x = -x;
    return build(a.ring(), std::move(c));
  }
  const std::uint64_t m = a.ring().modulus();
  ResidueCoeffs c = a.residues();
  for (auto& x : c) x = (m - x) % m;
  return build(a.ring(), std::move(c));
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_ring(a, b);
  return add(a, negate(b));
}

TruncatedSeries scalar_mul(const mpz_class& s, const TruncatedSeries& a) {
  if (a.ring().is_exact()) {
    ExactCoeffs c = a.exact_coeffs();
    for (auto& x : c) x *= s;
    return build(a.ring(), std::move(c));
  }
  const std::uint64_t m = a.ring().modulus();
  const std::uint64_t r = reduce_mpz(s, m);
  ResidueCoeffs c = a.residues();
  for (auto& x : c) x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * r % m);
  return build(a.ring(), std::move(c));
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_ring(a, b);
  const std::size_t n = std::min(a.order(), b.order());
  if (a.ring().is_exact()) return build(a.ring(), exact_product(a.exact_coeffs(), b.exact_coeffs(), n));
  return build(a.ring(), residue_product(a.residues(), b.residues(), n, a.ring().modulus()));
}

TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_ring(a, b);
  const std::size_t n = std::min(a.order(), b.order());
  if (a.ring().is_exact()) return build(a.ring(), exact_quotient(a.exact_coeffs(), b.exact_coeffs(), n));
  return build(a.ring(), residue_quotient(a.residues(), b.residues(), n, a.ring().modulus()));
}

TruncatedSeries invert(const TruncatedSeries& a) {
  return divide(TruncatedSeries::one(a.ring(), a.order()), a);
}

TruncatedSeries pow(const TruncatedSeries& a, long long e) {
  if (e == 0) return TruncatedSeries::one(a.ring(), a.order());
  TruncatedSeries base = e < 0 ? invert(a) : a;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  std::optional<TruncatedSeries> result;
  while (true) {
    if (k & 1) result = result ? mul(*result, base) : base;
    k >>= 1;
    if (k == 0) break;
    base = mul(base, base);
  }
  return *result;
}

TruncatedSeries substitute_power(const TruncatedSeries& a, std::size_t k) {
  if (k < 1) throw InvalidArgument("substitute_power needs k >= 1");
  if (k == 1) return a;
  const std::size_t n = a.order() * k;
  if (a.ring().is_exact()) {
    ExactCoeffs c(n);
    for (std::size_t j = 0; j < a.order(); ++j) c[j * k] = a.exact_coeffs()[j];
    return build(a.ring(), std::move(c));
  }
  ResidueCoeffs c(n, 0);
  for (std::size_t j = 0; j < a.order(); ++j) c[j * k] = a.residues()[j];
  return build(a.ring(), std::move(c));
}

TruncatedSeries substitute_neg(const TruncatedSeries& a) {
  if (a.ring().is_exact()) {
    ExactCoeffs c = a.exact_coeffs();
    for (std::size_t j = 1; j < c.size(); j += 2) c[j] = -c[j];
    return build(a.ring(), std::move(c));
  }
  const std::uint64_t m = a.ring().modulus();
  ResidueCoeffs c = a.residues();
  for (std::size_t j = 1; j < c.size(); j += 2) c[j] = (m - c[j]) % m;
  return build(a.ring(), std::move(c));
}

TruncatedSeries mul_qpower(const TruncatedSeries& a, std::size_t j) {
  if (j == 0) return a;
  const std::size_t n = a.order() + j;
  if (a.ring().is_exact()) {
    ExactCoeffs c(n);
    std::copy(a.exact_coeffs().begin(), a.exact_coeffs().end(), c.begin() + static_cast<std::ptrdiff_t>(j));
    return build(a.ring(), std::move(c));
  }
  ResidueCoeffs c(n, 0);
  std::copy(a.residues().begin(), a.residues().end(), c.begin() + static_cast<std::ptrdiff_t>(j));
  return build(a.ring(), std::move(c));
}

TruncatedSeries extract_dissection(const TruncatedSeries& a, std::size_t m, std::size_t r) {
  if (m < 1) throw InvalidArgument("dissection modulus must be positive");
  if (r >= m) throw InvalidArgument("residue " + std::to_string(r) + " not below modulus " + std::to_string(m));
  if (r >= a.order()) throw OrderTooSmall(r + 1, a.order());
  const std::size_t n = (a.order() - r + m - 1) / m;
  if (a.ring().is_exact()) {
    ExactCoeffs c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = a.exact_coeffs()[m * i + r];
    return build(a.ring(), std::move(c));
  }
  ResidueCoeffs c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a.residues()[m * i + r];
  return build(a.ring(), std::move(c));
}

TruncatedSeries reduce_mod(const TruncatedSeries& a, std::uint64_t m) {
  const CoefficientRing target = CoefficientRing::modular(m);
  if (a.ring().is_exact()) {
    ResidueCoeffs c(a.order());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = reduce_mpz(a.exact_coeffs()[i], m);
    return build(target, std::move(c));
  }
  if (a.ring().modulus() % m != 0) {
    throw RingMismatch("cannot reduce " + a.ring().describe() + " to mod " + std::to_string(m));
  }
  ResidueCoeffs c = a.residues();
  for (auto& x : c) x %= m;
  return build(target, std::move(c));
}

TruncatedSeries truncate(const TruncatedSeries& a, std::size_t order) {
  if (order > a.order()) throw OrderTooSmall(order, a.order());
  if (order == a.order()) return a;
  if (a.ring().is_exact()) {
    return build(a.ring(), ExactCoeffs(a.exact_coeffs().begin(), a.exact_coeffs().begin() + static_cast<std::ptrdiff_t>(order)));
  }
  return build(a.ring(), ResidueCoeffs(a.residues().begin(), a.residues().begin() + static_cast<std::ptrdiff_t>(order)));
}

std::optional<std::size_t> first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_ring(a, b);
  const std::size_t n = std::min(a.order(), b.order());
  for (std::size_t i = 0; i < n; ++i) {
    const bool same = a.ring().is_exact() ? a.exact_coeffs()[i] == b.exact_coeffs()[i]
                                          : a.residues()[i] == b.residues()[i];
    if (!same) return i;
  }
  return std::nullopt;
}

std::string to_string(const TruncatedSeries& a, std::size_t max_terms) {
  std::ostringstream os;
  bool first = true;
  std::size_t shown = 0;
  for (std::size_t i = 0; i < a.order() && shown < max_terms; ++i) {
    if (a.is_zero_at(i)) continue;
    const mpz_class c = a.coefficient(i);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const mpz_class mag = abs(c);
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << "q";
    if (i >= 2) os << "^" << i;
    first = false;
    ++shown;
  }
  if (first) os << "0";
  os << " + O(q^" << a.order() << ")";
  if (!a.ring().is_exact()) os << " [" << a.ring().describe() << "]";
  return os.str();
}

}  // namespace qseries

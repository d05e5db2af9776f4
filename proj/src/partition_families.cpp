#include "qseries/partition_families.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

namespace qseries {

namespace {

// Counts partitions of n by memoized recursion on (remaining sum, largest
// allowed part). A part p used c times contributes weight(p, c); weight 0
// forbids that multiplicity.
class PartitionCounter {
 public:
  using Weight = std::function<unsigned(unsigned part, unsigned multiplicity)>;

  PartitionCounter(unsigned n, Weight weight) : n_(n), weight_(std::move(weight)), memo_((n + 1) * (n + 1)) {}

  mpz_class count() { return count(n_, n_); }

 private:
  mpz_class count(unsigned rem, unsigned max_part) {
    if (rem == 0) return 1;
    if (max_part == 0) return 0;
    auto& slot = memo_[static_cast<std::size_t>(rem) * (n_ + 1) + max_part];
    if (slot) return *slot;
    mpz_class total = count(rem, max_part - 1);
    for (unsigned c = 1; c * max_part <= rem; ++c) {
      const unsigned w = weight_(max_part, c);
      if (w != 0) total += w * count(rem - c * max_part, max_part - 1);
    }
    slot = total;
    return total;
  }

  unsigned n_;
  Weight weight_;
  std::vector<std::optional<mpz_class>> memo_;
};

void require_schur_t(unsigned t) {
  if (t < 3 || t % 2 == 0) throw InvalidArgument("t must be an odd integer >= 3, got " + std::to_string(t));
}

}  // namespace

// --- FamilySpec --------------------------------------------------------------

FamilySpec FamilySpec::from_parts(std::string_view name, const std::vector<long long>& params) {
  auto arg = [&](std::size_t i) -> unsigned {
    if (i >= params.size()) throw InvalidArgument("family '" + std::string(name) + "' needs more parameters");
    if (params[i] < 0) throw InvalidArgument("family parameters must be nonnegative");
    return static_cast<unsigned>(params[i]);
  };
  auto expect = [&](std::size_t count) {
    if (params.size() != count) {
      throw InvalidArgument("family '" + std::string(name) + "' takes " + std::to_string(count) + " parameter(s)");
    }
  };
  FamilySpec spec;
  if (name == "overpartition") {
    expect(0);
    spec = overpartition();
  } else if (name == "tschur") {
    expect(1);
    spec = tschur(arg(0));
  } else if (name == "tschur-over") {
    expect(1);
    spec = tschur_over(arg(0));
  } else if (name == "tschur-over-tuple") {
    expect(2);
    spec = tschur_over_tuple(arg(0), arg(1));
  } else {
    throw InvalidArgument("unknown family '" + std::string(name) + "'");
  }
  spec.validate();
  return spec;
}

FamilySpec FamilySpec::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  std::string_view name = text;
  std::string_view args;
  if (auto open = text.find('('); open != std::string_view::npos) {
    if (text.back() != ')') throw InvalidArgument("unbalanced family text '" + std::string(text) + "'");
    name = trim(text.substr(0, open));
    args = text.substr(open + 1, text.size() - open - 2);
  }
  std::vector<long long> params;
  while (!trim(args).empty()) {
    const auto comma = args.find(',');
    const std::string_view piece = trim(args.substr(0, comma));
    long long v = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw InvalidArgument("bad family parameter '" + std::string(piece) + "'");
    }
    params.push_back(v);
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return from_parts(name, params);
}

void FamilySpec::validate() const {
  switch (kind) {
    case FamilyKind::Overpartition:
      return;
    case FamilyKind::TSchur:
    case FamilyKind::TSchurOver:
      require_schur_t(t);
      return;
    case FamilyKind::TSchurOverTuple:
      require_schur_t(t);
      if (r < 1) throw InvalidArgument("tuple count r must be >= 1");
      return;
  }
}

EtaQuotientSpec FamilySpec::eta() const {
  validate();
  const std::uint64_t tt = t;
  switch (kind) {
    case FamilyKind::Overpartition:
      return EtaQuotientSpec{{{1, -2}, {2, 1}}}.normalized();
    case FamilyKind::TSchur:
      return EtaQuotientSpec{{{2, 1}, {tt, 1}, {1, -1}, {2 * tt, -1}}}.normalized();
    case FamilyKind::TSchurOver:
    case FamilyKind::TSchurOverTuple: {
      const long long rr = kind == FamilyKind::TSchurOver ? 1 : r;
      return EtaQuotientSpec{{{2, 3 * rr}, {tt, 2 * rr}, {4 * tt, rr}, {1, -2 * rr}, {4, -rr}, {2 * tt, -3 * rr}}}
          .normalized();
    }
  }
  return {};
}

std::string FamilySpec::to_string() const {
  switch (kind) {
    case FamilyKind::Overpartition:
      return "overpartition";
    case FamilyKind::TSchur:
      return "tschur(" + std::to_string(t) + ")";
    case FamilyKind::TSchurOver:
      return "tschur-over(" + std::to_string(t) + ")";
    case FamilyKind::TSchurOverTuple:
      return "tschur-over-tuple(" + std::to_string(t) + "," + std::to_string(r) + ")";
  }
  return {};
}

TruncatedSeries family_gf(const FamilySpec& spec, std::size_t order, CoefficientRing ring) {
  if (spec.kind == FamilyKind::TSchurOverTuple && spec.r > 1 && !ring.is_exact()) {
    // The r-th power of the base series costs O(log r) products instead of
    // r-fold exponents on every factor.
    return pow(family_gf(FamilySpec::tschur_over(spec.t), order, ring), spec.r);
  }
  return eta_quotient(spec.eta(), order, ring);
}

// --- oracles -----------------------------------------------------------------

mpz_class enumerate_overpartitions(unsigned n, const std::function<bool(unsigned)>& allowed_part) {
  // Only the first occurrence of a part may be overlined: 2 choices per distinct part.
  return PartitionCounter(n, [&](unsigned p, unsigned) { return allowed_part(p) ? 2u : 0u; }).count();
}

mpz_class oracle_t_schur(unsigned t, unsigned n) {
  require_schur_t(t);
  return PartitionCounter(n, [t](unsigned p, unsigned c) { return (p % t != 0 && c == 1) ? 1u : 0u; }).count();
}

mpz_class oracle_t_schur_regular(unsigned t, unsigned n) {
  require_schur_t(t);
  return PartitionCounter(n, [t](unsigned p, unsigned c) { return (p % 2 == 1 && c < t) ? 1u : 0u; }).count();
}

mpz_class oracle_t_schur_residue_classes(unsigned t, unsigned n) {
  const auto residues = schur_residues(t);
  return PartitionCounter(n, [&](unsigned p, unsigned) {
           return std::ranges::find(residues, p % (2 * t)) != residues.end() ? 1u : 0u;
         }).count();
}

mpz_class oracle_t_schur_over(unsigned t, unsigned n) {
  require_schur_t(t);
  return PartitionCounter(2 * n, [t](unsigned p, unsigned c) {
           if (p % t == 0) return 0u;
           return (p % 2 == 1 ? c == 2 : c == 1) ? 1u : 0u;
         }).count();
}

mpz_class oracle_t_schur_over_direct(unsigned t, unsigned n) {
  require_schur_t(t);
  return enumerate_overpartitions(n, [t](unsigned p) { return p % 2 == 1 && p % t != 0; });
}

std::vector<unsigned> schur_residues(unsigned t) {
  require_schur_t(t);
  std::vector<unsigned> out;
  for (unsigned i = 1; i < 2 * t; i += 2) {
    if (i != t) out.push_back(i);
  }
  return out;
}

}  // namespace qseries

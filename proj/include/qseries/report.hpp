#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/manifest.hpp"

namespace qseries {

enum class Status { Verified, Counterexample, ConfigError, OrderTooSmall, IllFormed };

std::string_view to_string(Status status);

struct Counterexample {
  std::size_t index = 0;  // coefficient index (identities) or family argument (congruences)
  std::string where;      // loop bindings, e.g. "n=3, alpha=1"
  std::string lhs;
  std::string rhs;
};

// What was checked for one prime of a prime-family claim.
struct PrimeNote {
  std::uint64_t p = 0;
  std::size_t instances = 0;
  std::vector<std::pair<std::string, bool>> recorded;  // non-gating side conditions
};

struct ClaimReport {
  std::string id;
  ClaimKind kind = ClaimKind::Identity;
  Status status = Status::Verified;
  std::size_t order = 0;  // coefficients examined
  std::string ring;
  std::string detail;
  std::string expect = "verified";
  double runtime_ms = 0;
  std::optional<Counterexample> counterexample;
  std::size_t needed = 0;  // for OrderTooSmall
  std::size_t had = 0;
  std::vector<PrimeNote> primes;

  // True when the outcome matches the claim's `expect` field.
  bool as_expected() const;
};

bool all_verified(const std::vector<ClaimReport>& reports);

struct RenderOptions {
  bool runtime = true;
  bool pretty = true;
};

// {"schema": "1", "claims": [{id, status, order, detail, runtime_ms, ...}]}
std::string render_json(const std::vector<ClaimReport>& reports, RenderOptions options = {});
std::string render_tsv(const std::vector<ClaimReport>& reports, RenderOptions options = {});

}  // namespace qseries

#pragma once

#include <cstddef>
#include <optional>

#include "qseries/manifest.hpp"
#include "qseries/report.hpp"

namespace qseries {

struct VerifyOptions {
  // Replaces every claim's own order when set.
  std::optional<std::size_t> order_override;
  std::size_t default_order = 400;
};

// $QSERIES_DEFAULT_ORDER if set to a positive integer, else 400.
std::size_t default_order_from_env();

// lhs and rhs expanded to the claim order; first differing coefficient is a counterexample.
ClaimReport verify_identity(const Claim& claim, const VerifyOptions& options = {});

// Class r mod m of the source compared with the result.
ClaimReport verify_dissection(const Claim& claim, const VerifyOptions& options = {});

}  // namespace qseries

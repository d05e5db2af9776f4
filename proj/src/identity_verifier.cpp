#include "qseries/identity_verifier.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cstring>

#include "guarded.hpp"

namespace qseries {

namespace {

std::size_t claim_order(const Claim& claim, const VerifyOptions& options) {
  if (options.order_override) return *options.order_override;
  return claim.order.value_or(options.default_order);
}

void compare(ClaimReport& report, const TruncatedSeries& lhs, const TruncatedSeries& rhs) {
  const std::size_t n = std::min(lhs.order(), rhs.order());
  report.order = n;
  if (auto bad = first_mismatch(lhs, rhs)) {
    report.status = Status::Counterexample;
    report.counterexample = Counterexample{*bad, "", lhs.coefficient(*bad).get_str(), rhs.coefficient(*bad).get_str()};
    report.detail = "coefficients of q^" + std::to_string(*bad) + " differ: " + report.counterexample->lhs +
                    " vs " + report.counterexample->rhs;
  } else {
    report.status = Status::Verified;
    report.detail = "equal through q^" + std::to_string(n - 1);
  }
}

}  // namespace

std::size_t default_order_from_env() {
  const char* env = std::getenv("QSERIES_DEFAULT_ORDER");
  if (!env || !*env) return 400;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
  if (ec != std::errc{} || *ptr != '\0' || v == 0) {
    throw ConfigError(std::string("QSERIES_DEFAULT_ORDER must be a positive integer, got '") + env + "'");
  }
  return v;
}

ClaimReport verify_identity(const Claim& claim, const VerifyOptions& options) {
  return detail::guarded(claim, [&](ClaimReport& report) {
    if (claim.kind != ClaimKind::Identity) throw ConfigError("claim '" + claim.id + "' is not an identity");
    const std::size_t n = claim_order(claim, options);
    compare(report, evaluate(claim.lhs, n, claim.ring, claim.vars), evaluate(claim.rhs, n, claim.ring, claim.vars));
  });
}

ClaimReport verify_dissection(const Claim& claim, const VerifyOptions& options) {
  return detail::guarded(claim, [&](ClaimReport& report) {
    if (claim.kind != ClaimKind::Dissection) throw ConfigError("claim '" + claim.id + "' is not a dissection");
    const std::size_t n = claim_order(claim, options);
    const TruncatedSeries source = evaluate(claim.lhs, claim.m * (n - 1) + claim.r + 1, claim.ring, claim.vars);
    compare(report, extract_dissection(source, claim.m, claim.r), evaluate(claim.rhs, n, claim.ring, claim.vars));
    report.detail += " (class " + std::to_string(claim.r) + " mod " + std::to_string(claim.m) + ")";
  });
}

}  // namespace qseries

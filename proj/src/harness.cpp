#include "qseries/harness.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace qseries {

bool matches_filters(const Claim& claim, const std::vector<std::string>& filters) {
  if (filters.empty()) return true;
  for (const auto& f : filters) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw ConfigError("filter '" + f + "' should look like id=... or kind=...");
    const std::string key = f.substr(0, eq);
    const std::string value = f.substr(eq + 1);
    if (key == "id") {
      if (!value.empty() && value.back() == '*') {
        if (claim.id.starts_with(value.substr(0, value.size() - 1))) return true;
      } else if (claim.id == value) {
        return true;
      }
    } else if (key == "kind") {
      if (to_string(claim.kind) == value) return true;
    } else {
      throw ConfigError("unknown filter key '" + key + "'");
    }
  }
  return false;
}

ClaimReport run_claim(const Claim& claim, SeriesCache& cache, const RunOptions& options) {
  switch (claim.kind) {
    case ClaimKind::Identity:
      return verify_identity(claim, options.verify);
    case ClaimKind::Dissection:
      return verify_dissection(claim, options.verify);
    case ClaimKind::Congruence:
      return check_progression(claim, cache, options.congruence);
    case ClaimKind::PrimeFamily:
      return check_prime_family(claim, cache, options.congruence);
  }
  return {};
}

std::vector<ClaimReport> run_claims(const std::vector<Claim>& claims, const RunOptions& options) {
  std::vector<const Claim*> selected;
  for (const auto& c : claims) {
    if (matches_filters(c, options.filters)) selected.push_back(&c);
  }

  // Reserve every family expansion at its deepest use so that each one is
  // computed once. Errors here resurface when the claim itself runs.
  SeriesCache cache;
  for (const Claim* c : selected) {
    if (c->kind != ClaimKind::Congruence && c->kind != ClaimKind::PrimeFamily) continue;
    try {
      for (const auto& [family, depth] : required_depths(*c, options.congruence)) {
        if (depth <= options.congruence.max_depth) cache.reserve(family, c->ring, depth);
      }
    } catch (const Error&) {
    }
  }

  std::vector<ClaimReport> reports(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      reports[i] = run_claim(*selected[i], cache, options);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(selected.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return reports;
}

std::vector<ClaimReport> run_claims(const Manifest& manifest, const RunOptions& options) {
  return run_claims(manifest.claims, options);
}

}  // namespace qseries

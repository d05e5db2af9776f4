#pragma once

#include <string>
#include <vector>

#include "qseries/congruence_engine.hpp"
#include "qseries/identity_verifier.hpp"
#include "qseries/manifest.hpp"
#include "qseries/report.hpp"

namespace qseries {

struct RunOptions {
  VerifyOptions verify;
  CongruenceOptions congruence;
  unsigned jobs = 1;
  // "id=<name>", "id=<prefix>*" or "kind=<kind>"; a claim runs if any filter matches.
  std::vector<std::string> filters;
};

bool matches_filters(const Claim& claim, const std::vector<std::string>& filters);

ClaimReport run_claim(const Claim& claim, SeriesCache& cache, const RunOptions& options = {});

// Reports come back in manifest order whatever the job count.
std::vector<ClaimReport> run_claims(const Manifest& manifest, const RunOptions& options = {});
std::vector<ClaimReport> run_claims(const std::vector<Claim>& claims, const RunOptions& options = {});

}  // namespace qseries

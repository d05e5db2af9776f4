#pragma once

#include <chrono>
#include <new>

#include "qseries/report.hpp"

namespace qseries::detail {

// Runs one claim check, timing it and turning library errors into statuses.
// Nothing here lets an exception pass as a verification.
template <class Body>
ClaimReport guarded(const Claim& claim, Body&& body) {
  ClaimReport report;
  report.id = claim.id;
  report.kind = claim.kind;
  report.expect = claim.expect;
  report.ring = claim.ring.describe();
  const auto start = std::chrono::steady_clock::now();
  try {
    body(report);
  } catch (const OrderTooSmall& e) {
    report.status = Status::OrderTooSmall;
    report.needed = e.needed();
    report.had = e.had();
    report.detail = e.what();
  } catch (const ConfigError& e) {
    report.status = Status::ConfigError;
    report.detail = e.what();
  } catch (const Error& e) {
    report.status = Status::IllFormed;
    report.detail = e.what();
  } catch (const std::bad_alloc&) {
    report.status = Status::IllFormed;
    report.detail = "out of memory";
  }
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace qseries::detail

#pragma once

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qseries/manifest.hpp"
#include "qseries/report.hpp"

namespace qseries {

// Legendre symbol (a/p) by Euler's criterion.
int legendre(long long a, std::uint64_t p);

struct CongruenceOptions {
  std::optional<std::size_t> n_max_override;
  std::size_t default_n_max = 200;
  std::size_t default_prime_n_max = 50;
  // Deepest coefficient the engine will expand to; deeper claims report order-too-small.
  std::size_t max_depth = 1'000'000;
};

// Family expansions shared between claims and threads. Each (family, ring)
// is expanded once, to the largest depth reserved or requested so far.
class SeriesCache {
 public:
  using Ptr = std::shared_ptr<const TruncatedSeries>;

  void reserve(const FamilySpec& family, CoefficientRing ring, std::size_t order);
  Ptr get(const FamilySpec& family, CoefficientRing ring, std::size_t order);

 private:
  struct Entry {
    std::size_t order = 0;
    std::shared_future<Ptr> value;
  };
  std::mutex mutex_;
  std::map<std::string, Entry> entries_;
  std::map<std::string, std::size_t> reserved_;
};

// The smallest primes (>= claim.min_prime) satisfying every gate, or the
// listed primes after checking each one. Throws ConfigError on a bad list.
std::vector<std::uint64_t> select_primes(const Claim& claim);

// Coefficients needed (deepest index + 1) per family for a congruence or
// prime-family claim.
std::vector<std::pair<FamilySpec, std::size_t>> required_depths(const Claim& claim,
                                                                 const CongruenceOptions& options = {});

ClaimReport check_progression(const Claim& claim, SeriesCache& cache, const CongruenceOptions& options = {});
ClaimReport check_prime_family(const Claim& claim, SeriesCache& cache, const CongruenceOptions& options = {});

// All B < A with coefficient(A*n + B) = 0 (mod m) for every n <= n_max.
// The result is a conjecture, never a verification.
std::vector<std::size_t> scan_progressions(const FamilySpec& family, std::size_t A, std::uint64_t m,
                                           std::size_t n_max, SeriesCache* cache = nullptr);

}  // namespace qseries

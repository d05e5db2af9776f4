#include "qseries/congruence_engine.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "guarded.hpp"

namespace qseries {

namespace {

std::string cache_key(const FamilySpec& family, CoefficientRing ring) {
  return family.to_string() + "|" + ring.describe();
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  unsigned __int128 result = 1 % m;
  unsigned __int128 b = base % m;
  while (exp) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

// Calls visit(env) for every assignment of the claim's loop variables, the
// innermost loop being n = 0..n_max.
void for_each_instance(const Claim& claim, Bindings env, std::size_t n_max,
                       const std::function<void(const Bindings&)>& visit) {
  std::function<void(std::size_t)> loop = [&](std::size_t depth) {
    if (depth == claim.loops.size()) {
      for (std::size_t n = 0; n <= n_max; ++n) {
        env["n"] = static_cast<long long>(n);
        visit(env);
      }
      env.erase("n");
      return;
    }
    const LoopRange& r = claim.loops[depth];
    const long long lo = evaluate_index(r.lo, env);
    const long long hi = evaluate_index(r.hi, env);
    for (long long v = lo; v <= hi; ++v) {
      env[r.var] = v;
      loop(depth + 1);
    }
    env.erase(r.var);
  };
  loop(0);
}

std::size_t effective_n_max(const Claim& claim, const CongruenceOptions& options) {
  if (options.n_max_override) return *options.n_max_override;
  if (claim.n_max) return *claim.n_max;
  return claim.kind == ClaimKind::PrimeFamily ? options.default_prime_n_max : options.default_n_max;
}

std::size_t argument(const Expr& e, const Bindings& env) {
  const long long v = evaluate_index(e, env);
  if (v < 0) throw InvalidArgument("negative family argument " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

std::string describe_bindings(const Bindings& env) {
  // n first, then the remaining variables alphabetically.
  std::string out;
  if (auto it = env.find("n"); it != env.end()) out = "n=" + std::to_string(it->second);
  for (const auto& [k, v] : env) {
    if (k == "n") continue;
    out += (out.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  }
  return out;
}

FamilySpec rhs_family_of(const Claim& claim) { return claim.rhs_family.value_or(*claim.family); }

// Environments that seed the instance loops: one per prime for prime families.
std::vector<Bindings> seeds(const Claim& claim) {
  std::vector<Bindings> out;
  if (claim.kind == ClaimKind::PrimeFamily) {
    for (std::uint64_t p : select_primes(claim)) {
      Bindings env = claim.vars;
      env["p"] = static_cast<long long>(p);
      out.push_back(std::move(env));
    }
  } else {
    out.push_back(claim.vars);
  }
  return out;
}

mpz_class value_at(const TruncatedSeries& s, std::size_t i) { return s.coefficient(i); }

ClaimReport check_claim(const Claim& claim, SeriesCache& cache, const CongruenceOptions& options) {
  return detail::guarded(claim, [&](ClaimReport& report) {
    if (!claim.family) throw ConfigError("claim '" + claim.id + "' has no family");
    const std::size_t n_max = effective_n_max(claim, options);
    const auto depths = required_depths(claim, options);
    std::size_t deepest = 0;
    for (const auto& [family, depth] : depths) {
      if (depth > options.max_depth) throw OrderTooSmall(depth, options.max_depth);
      deepest = std::max(deepest, depth);
    }
    auto depth_of = [&](const FamilySpec& f) {
      for (const auto& [family, depth] : depths) {
        if (family == f) return depth;
      }
      return std::size_t{1};
    };
    const auto lhs_series = cache.get(*claim.family, claim.ring, depth_of(*claim.family));
    const bool two_sided = claim.form != CongruenceForm::Vanishing;
    const auto rhs_series = two_sided ? cache.get(rhs_family_of(claim), claim.ring, depth_of(rhs_family_of(claim)))
                                      : lhs_series;
    const bool exact = claim.ring.is_exact();
    const mpz_class m = exact ? mpz_class(0) : mpz_class(static_cast<unsigned long>(claim.modulus));

    std::size_t instances = 0;
    for (Bindings seed : seeds(claim)) {
      PrimeNote note;
      if (claim.kind == ClaimKind::PrimeFamily) {
        note.p = static_cast<std::uint64_t>(seed.at("p"));
        for (const auto& c : claim.recorded) note.recorded.emplace_back(c.to_string(), c.holds(note.p));
      }
      for_each_instance(claim, seed, n_max, [&](const Bindings& env) {
        if (report.counterexample) return;
        ++instances;
        ++note.instances;
        const std::size_t li = argument(claim.index, env);
        const mpz_class a = value_at(*lhs_series, li);
        mpz_class b = 0;
        if (two_sided) {
          const long long sign = claim.sign ? evaluate_index(claim.sign, env) : 1;
          b = value_at(*rhs_series, argument(claim.rhs_index, env)) * static_cast<long>(sign) *
              static_cast<long>(claim.factor);
        }
        mpz_class diff = a - b;
        if (!exact) {
          mpz_mod(diff.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
          mpz_mod(b.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
        }
        if (diff != 0) report.counterexample = Counterexample{li, describe_bindings(env), a.get_str(), b.get_str()};
      });
      if (claim.kind == ClaimKind::PrimeFamily) report.primes.push_back(std::move(note));
      if (report.counterexample) break;
    }

    report.order = deepest;
    std::ostringstream os;
    if (report.counterexample) {
      const auto& ce = *report.counterexample;
      report.status = Status::Counterexample;
      os << "fails at " << ce.where << ": coefficient " << ce.index << " gives " << ce.lhs << " vs " << ce.rhs;
      if (!exact) os << " (mod " << claim.modulus << ")";
    } else {
      report.status = Status::Verified;
      os << instances << " instances, n <= " << n_max << ", deepest coefficient " << (deepest ? deepest - 1 : 0);
    }
    if (!report.primes.empty()) {
      os << "; primes";
      for (const auto& p : report.primes) {
        os << " " << p.p;
        for (const auto& [cond, holds] : p.recorded) os << " [" << cond << (holds ? " holds" : " fails") << "]";
      }
    }
    report.detail = os.str();
  });
}

}  // namespace

int legendre(long long a, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("legendre needs an odd prime, got " + std::to_string(p));
  const long long pp = static_cast<long long>(p);
  const auto r = static_cast<std::uint64_t>(((a % pp) + pp) % pp);
  if (r == 0) return 0;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

void SeriesCache::reserve(const FamilySpec& family, CoefficientRing ring, std::size_t order) {
  std::lock_guard lock(mutex_);
  auto& r = reserved_[cache_key(family, ring)];
  r = std::max(r, order);
}

SeriesCache::Ptr SeriesCache::get(const FamilySpec& family, CoefficientRing ring, std::size_t order) {
  const std::string key = cache_key(family, ring);
  std::shared_future<Ptr> future;
  std::promise<Ptr> promise;
  std::size_t target = 0;
  {
    std::lock_guard lock(mutex_);
    Entry& e = entries_[key];
    if (e.value.valid() && e.order >= order) {
      future = e.value;
    } else {
      target = std::max(order, reserved_[key]);
      e.order = target;
      e.value = promise.get_future().share();
      future = e.value;
    }
  }
  if (target != 0) {
    try {
      promise.set_value(std::make_shared<const TruncatedSeries>(family_gf(family, target, ring)));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

std::vector<std::uint64_t> select_primes(const Claim& claim) {
  auto qualifies = [&](std::uint64_t p, std::string* why) {
    if (!is_prime(p) || p < 3) {
      if (why) *why = std::to_string(p) + " is not an odd prime";
      return false;
    }
    if (p < claim.min_prime) {
      if (why) *why = std::to_string(p) + " is below the minimum " + std::to_string(claim.min_prime);
      return false;
    }
    for (const auto& c : claim.conditions) {
      if (!c.holds(p)) {
        if (why) *why = "p=" + std::to_string(p) + " violates " + c.to_string();
        return false;
      }
    }
    return true;
  };
  std::vector<std::uint64_t> out;
  if (claim.primes.auto_count) {
    for (std::uint64_t p = std::max<std::uint64_t>(3, claim.min_prime); out.size() < *claim.primes.auto_count; ++p) {
      if (p > 1'000'000) throw ConfigError("claim '" + claim.id + "': too few primes satisfy the side conditions");
      if (qualifies(p, nullptr)) out.push_back(p);
    }
    return out;
  }
  for (std::uint64_t p : claim.primes.listed) {
    std::string why;
    if (!qualifies(p, &why)) throw ConfigError("claim '" + claim.id + "': " + why);
    out.push_back(p);
  }
  return out;
}

std::vector<std::pair<FamilySpec, std::size_t>> required_depths(const Claim& claim,
                                                                 const CongruenceOptions& options) {
  if (!claim.family) throw ConfigError("claim '" + claim.id + "' has no family");
  const std::size_t n_max = effective_n_max(claim, options);
  std::size_t lhs = 0, rhs = 0;
  const bool two_sided = claim.form != CongruenceForm::Vanishing;
  for (const Bindings& seed : seeds(claim)) {
    for_each_instance(claim, seed, n_max, [&](const Bindings& env) {
      lhs = std::max(lhs, argument(claim.index, env) + 1);
      if (two_sided) rhs = std::max(rhs, argument(claim.rhs_index, env) + 1);
    });
  }
  std::vector<std::pair<FamilySpec, std::size_t>> out{{*claim.family, lhs}};
  if (two_sided) {
    const FamilySpec other = rhs_family_of(claim);
    if (other == *claim.family) {
      out[0].second = std::max(lhs, rhs);
    } else {
      out.emplace_back(other, rhs);
    }
  }
  return out;
}

ClaimReport check_progression(const Claim& claim, SeriesCache& cache, const CongruenceOptions& options) {
  if (claim.kind != ClaimKind::Congruence) {
    return detail::guarded(claim, [&](ClaimReport&) {
      throw ConfigError("claim '" + claim.id + "' is not a congruence");
    });
  }
  return check_claim(claim, cache, options);
}

ClaimReport check_prime_family(const Claim& claim, SeriesCache& cache, const CongruenceOptions& options) {
  if (claim.kind != ClaimKind::PrimeFamily) {
    return detail::guarded(claim, [&](ClaimReport&) {
      throw ConfigError("claim '" + claim.id + "' is not a prime family");
    });
  }
  return check_claim(claim, cache, options);
}

std::vector<std::size_t> scan_progressions(const FamilySpec& family, std::size_t A, std::uint64_t m,
                                           std::size_t n_max, SeriesCache* cache) {
  if (A < 1) throw InvalidArgument("progression step A must be positive");
  if (m < 1) throw InvalidArgument("modulus must be positive");
  std::vector<std::size_t> out;
  if (m == 1) {
    for (std::size_t b = 0; b < A; ++b) out.push_back(b);
    return out;
  }
  const CoefficientRing ring = CoefficientRing::modular(m);
  const std::size_t depth = A * (n_max + 1);
  SeriesCache local;
  const auto series = (cache ? *cache : local).get(family, ring, depth);
  const auto& c = series->residues();
  for (std::size_t b = 0; b < A; ++b) {
    bool all_zero = true;
    for (std::size_t n = 0; n <= n_max && all_zero; ++n) all_zero = c[A * n + b] == 0;
    if (all_zero) out.push_back(b);
  }
  return out;
}

}  // namespace qseries

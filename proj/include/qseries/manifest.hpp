#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/expression.hpp"
#include "qseries/partition_families.hpp"

namespace qseries {

enum class ClaimKind { Identity, Dissection, Congruence, PrimeFamily };
enum class CongruenceForm { Vanishing, Relation, ExactEquality };

std::string_view to_string(ClaimKind kind);

// var = lo..hi; bounds may refer to outer loop variables and to p.
struct LoopRange {
  std::string var;
  Expr lo;
  Expr hi;
};

// legendre(a) = value, or residue(c mod d).
struct PrimeCondition {
  enum class Kind { Legendre, Residue };
  Kind kind = Kind::Legendre;
  long long a = 0;
  int value = -1;
  long long residue = 0;
  long long modulus = 0;

  bool holds(std::uint64_t p) const;
  std::string to_string() const;
};

struct PrimeSelection {
  std::optional<std::size_t> auto_count;  // auto(k): the k smallest qualifying primes
  std::vector<std::uint64_t> listed;
};

struct Claim {
  std::string id;
  ClaimKind kind = ClaimKind::Identity;
  std::string cite;
  // "verified", or "counterexample" / "ill-formed" for a claim kept to
  // document a misprinted statement.
  std::string expect = "verified";
  int line = 0;

  CoefficientRing ring = CoefficientRing::exact();
  std::optional<std::size_t> order;
  Bindings vars;

  // identity: lhs = rhs.  dissection: lhs is the source, rhs the result.
  Expr lhs;
  Expr rhs;
  std::size_t m = 1;
  std::size_t r = 0;

  // congruence and prime-family
  std::optional<FamilySpec> family;
  std::optional<FamilySpec> rhs_family;
  CongruenceForm form = CongruenceForm::Vanishing;
  std::uint64_t modulus = 0;  // 0 for exact equalities
  Expr index;                 // argument of the family, in n and loop variables
  Expr rhs_index;
  Expr sign;                  // relation sign, e.g. (-1)^alpha
  long long factor = 1;
  std::vector<LoopRange> loops;
  std::optional<std::size_t> n_max;

  std::vector<PrimeCondition> conditions;  // gates every prime
  std::vector<PrimeCondition> recorded;    // reported per prime, never gating
  PrimeSelection primes;
  std::uint64_t min_prime = 5;
};

struct Manifest {
  std::string source;
  std::vector<Claim> claims;

  const Claim* find(std::string_view id) const;
};

// Stanzas of `key: value` lines separated by blank lines; `#` starts a
// comment line; indented lines continue the previous value.
Manifest parse_manifest(std::string_view text, std::string source_name = "<inline>");
Manifest load_manifest(const std::string& path);

// Directory holding the shipped manifests: $QSERIES_MANIFEST_DIR or the
// source-tree default baked in at build time.
std::string default_manifest_dir();

}  // namespace qseries

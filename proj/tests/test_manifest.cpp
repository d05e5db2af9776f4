#include <doctest.h>

#include <set>

#include "qseries/congruence_engine.hpp"
#include "qseries/error.hpp"
#include "qseries/manifest.hpp"

using namespace qseries;

namespace {

std::string error_of(std::string_view text) {
  try {
    parse_manifest(text, "m.qsm");
  } catch (const ConfigError& e) {
    return e.what();
  } catch (const ParseError& e) {
    return std::string("parse: ") + e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("stanzas, comments and continuations") {
  const auto m = parse_manifest(R"(# leading comment
id: a
kind: identity
cite: 2-dissection of f1^2
lhs: f1^2
rhs: f2*f8^5/(f4^2*f16^2)
    - 2*q*f2*f16^2/f8

id: b
kind: dissection
source: gf(tschur-over, 9)
m: 2
r: 1
order: 50
result: 2*f2*f6^2*f18/(f1^2*f9^2)
)");
  REQUIRE(m.claims.size() == 2);
  CHECK(m.claims[0].id == "a");
  CHECK(m.claims[0].kind == ClaimKind::Identity);
  CHECK(m.claims[0].cite == "2-dissection of f1^2");
  CHECK(m.claims[0].line == 2);
  CHECK(m.claims[1].m == 2);
  CHECK(m.claims[1].r == 1);
  CHECK(m.claims[1].order == 50u);
  CHECK(m.find("b") == &m.claims[1]);
  CHECK(m.find("c") == nullptr);
}

TEST_CASE("congruence stanzas") {
  const auto m = parse_manifest(R"(id: s9-24n23
kind: congruence
family: tschur-over(9)
A: 24
B: 23
mod: 32
n-max: 400

id: rel
kind: congruence
family: tschur-over(9)
form: relation
index: 3^alpha*(6*n+3)
rhs-index: 6*n+3
sign: (-1)^alpha
for: alpha=1..2
mod: 16

id: eq
kind: congruence
family: tschur-over-tuple(3,2)
form: exact-equality
index: 2*n+1
rhs-family: tschur-over(3)
rhs-index: 4*n+2
factor: 2
)");
  const auto& a = m.claims[0];
  CHECK(a.ring == CoefficientRing::modular(32));
  CHECK(a.n_max == 400u);
  CHECK(evaluate_index(a.index, {{"n", 2}}) == 71);
  const auto& r = m.claims[1];
  CHECK(r.form == CongruenceForm::Relation);
  REQUIRE(r.loops.size() == 1);
  CHECK(r.loops[0].var == "alpha");
  const auto& e = m.claims[2];
  CHECK(e.form == CongruenceForm::ExactEquality);
  CHECK(e.ring.is_exact());
  CHECK(e.factor == 2);
  CHECK(*e.rhs_family == FamilySpec::tschur_over(3));
}

TEST_CASE("prime family stanzas") {
  const auto m = parse_manifest(R"(id: pf
kind: prime-family
family: tschur-over(9)
index: 6*p^(2*alpha+2)*n + (6*i+p)*p^(2*alpha+1)
mod: 3
condition: legendre(-3) = -1 and residue(5 mod 6)
record: legendre(-12) = -1
primes: auto(2)
alpha-max: 1
for: i=1..p-1
)");
  const auto& c = m.claims[0];
  REQUIRE(c.conditions.size() == 2);
  CHECK(c.conditions[0].to_string() == "(-3/p) = -1");
  CHECK(c.conditions[1].to_string() == "p = 5 (mod 6)");
  CHECK(c.primes.auto_count == 2u);
  REQUIRE(c.loops.size() == 2);
  CHECK(c.loops[0].var == "alpha");
  CHECK(c.loops[1].var == "i");
  CHECK(select_primes(c) == std::vector<std::uint64_t>{5, 11});
}

TEST_CASE("prime conditions") {
  PrimeCondition leg{PrimeCondition::Kind::Legendre, -3, -1};
  CHECK(leg.holds(5));
  CHECK_FALSE(leg.holds(7));
  PrimeCondition res{PrimeCondition::Kind::Residue, 0, -1, 5, 6};
  CHECK(res.holds(11));
  CHECK_FALSE(res.holds(13));
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(-1, 7) == -1);
  CHECK(legendre(14, 7) == 0);
  CHECK_THROWS_AS(legendre(1, 9), InvalidArgument);
}

TEST_CASE("configuration errors name the line") {
  CHECK(error_of("id: a\nkind: identity\nlhs: f1\n").find("m.qsm:") == 0);
  CHECK(error_of("id: a\nkind: identity\nlhs: f1\n").find("rhs") != std::string::npos);
  CHECK(error_of("id: a\nkind: identity\nlhs: f1\nrhs: f1\nmod: 3\n").find("m.qsm:5") == 0);
  CHECK(error_of("id: a\nkind: widget\n").find("unknown kind") != std::string::npos);
  CHECK(error_of("id: a\nkind: identity\nlhs: f1\nrhs: f1\n\nid: a\nkind: identity\nlhs: f1\nrhs: f1\n")
            .find("duplicate") != std::string::npos);
  CHECK(error_of("id: a\nkind: congruence\nfamily: tschur-over(9)\nA: 2\nB: 1\n").find("mod") != std::string::npos);
  CHECK(error_of("id: a\nkind: congruence\nfamily: tschur-over(8)\nA: 2\nB: 1\nmod: 2\n") != "");
  CHECK(error_of("id: a\nkind: dissection\nsource: f1\nm: 2\nr: 2\nresult: f1\n").find("below") != std::string::npos);
  CHECK(error_of("id: a\nkind: identity\nexpect: maybe\nlhs: f1\nrhs: f1\n").find("expect") != std::string::npos);
  CHECK(error_of("  continuation\n").find("continuation") != std::string::npos);
  CHECK(error_of("id: a\nkind: identity\nlhs: f0\nrhs: f1\n").find("zero subscript") != std::string::npos);
}

TEST_CASE("listed primes are checked") {
  const auto m = parse_manifest(R"(id: pf
kind: prime-family
family: tschur-over(9)
index: 6*p^2*n + (6*i+p)*p
mod: 3
condition: legendre(-3) = -1
primes: 5, 7
for: i=1..p-1
)");
  CHECK_THROWS_AS(select_primes(m.claims[0]), ConfigError);
}

TEST_CASE("shipped manifests") {
  const auto paper = load_manifest(default_manifest_dir() + "/paper.qsm");
  CHECK(paper.claims.size() >= 35);
  std::set<ClaimKind> kinds;
  for (const auto& c : paper.claims) {
    kinds.insert(c.kind);
    CHECK(c.expect == "verified");
    CHECK_FALSE(c.cite.empty());
  }
  CHECK(kinds.size() == 4);
  const auto printed = load_manifest(default_manifest_dir() + "/printed_forms.qsm");
  for (const auto& c : printed.claims) CHECK(c.expect != "verified");
  CHECK_THROWS_AS(load_manifest("/nonexistent/x.qsm"), ConfigError);
}

#include <doctest.h>

#include <cstdlib>

#include "qseries/identity_verifier.hpp"
#include "qseries/manifest.hpp"
#include "qseries/report.hpp"

using namespace qseries;

namespace {

Claim single(std::string_view text) { return parse_manifest(text).claims.at(0); }

}  // namespace

TEST_CASE("a true identity verifies to the claim order") {
  const auto c = single("id: x\nkind: identity\norder: 120\nlhs: f1^2\nrhs: f2*f8^5/(f4^2*f16^2) - 2*q*f2*f16^2/f8\n");
  const auto r = verify_identity(c);
  CHECK(r.status == Status::Verified);
  CHECK(r.order == 120);
  CHECK(r.detail == "equal through q^119");
  CHECK(r.as_expected());
}

TEST_CASE("a false identity yields a reproducible counterexample") {
  const auto c = single("id: x\nkind: identity\nlhs: f1^2\nrhs: f2*f8^5/(f4^2*f16^2) + 2*q*f2*f16^2/f8\n");
  const auto r1 = verify_identity(c);
  const auto r2 = verify_identity(c);
  REQUIRE(r1.status == Status::Counterexample);
  REQUIRE(r1.counterexample);
  CHECK(r1.counterexample->index == 1);
  CHECK(r1.counterexample->lhs == "-2");
  CHECK(r1.counterexample->rhs == "2");
  CHECK(r1.detail == r2.detail);
  CHECK(r1.detail == "coefficients of q^1 differ: -2 vs 2");
}

TEST_CASE("order override and default order") {
  const auto c = single("id: x\nkind: identity\norder: 50\nlhs: psi\nrhs: theta(1,1,1,3)\n");
  VerifyOptions o;
  o.order_override = 77;
  CHECK(verify_identity(c, o).order == 77);
  const auto d = single("id: x\nkind: identity\nlhs: psi\nrhs: theta(1,1,1,3)\n");
  o = {};
  o.default_order = 33;
  CHECK(verify_identity(d, o).order == 33);
}

TEST_CASE("QSERIES_DEFAULT_ORDER") {
  ::setenv("QSERIES_DEFAULT_ORDER", "123", 1);
  CHECK(default_order_from_env() == 123);
  ::setenv("QSERIES_DEFAULT_ORDER", "12x", 1);
  CHECK_THROWS_AS(default_order_from_env(), ConfigError);
  ::unsetenv("QSERIES_DEFAULT_ORDER");
  CHECK(default_order_from_env() == 400);
}

TEST_CASE("dissections") {
  const auto c = single(
      "id: x\nkind: dissection\norder: 100\nsource: gf(tschur-over, 9)\nm: 6\nr: 5\n"
      "result: 8*f2^4*f6^4/(f1^6*f3^2)\n");
  const auto r = verify_dissection(c);
  CHECK(r.status == Status::Verified);
  CHECK(r.detail == "equal through q^99 (class 5 mod 6)");
  const auto bad = single(
      "id: x\nkind: dissection\nsource: gf(tschur-over, 9)\nm: 2\nr: 1\nresult: f2*f6^2*f18/(f1^2*f9^2)\n");
  const auto rb = verify_dissection(bad);
  CHECK(rb.status == Status::Counterexample);
  CHECK(rb.counterexample->index == 0);
}

TEST_CASE("statuses other than verified") {
  const auto half = single("id: x\nkind: identity\nexpect: ill-formed\nlhs: f1^3\nrhs: Bk(5, 0)\n");
  const auto r = verify_identity(half);
  CHECK(r.status == Status::IllFormed);
  CHECK(r.as_expected());
  const auto nonunit = single("id: x\nkind: identity\nlhs: 1/(2*f1)\nrhs: f1\n");
  CHECK(verify_identity(nonunit).status == Status::IllFormed);
  const auto unbound = single("id: x\nkind: identity\nlhs: f{p}\nrhs: f1\n");
  CHECK(verify_identity(unbound).status == Status::IllFormed);
  // Kind mismatch is a configuration problem, not a verification.
  CHECK(verify_dissection(nonunit).status == Status::ConfigError);
}

TEST_CASE("modular identities") {
  const auto c = single("id: x\nkind: identity\nring: mod:8\nlhs: f1^8\nrhs: f2^4\n");
  const auto r = verify_identity(c);
  CHECK(r.status == Status::Verified);
  CHECK(r.ring == "mod 8");
  const auto wrong = single("id: x\nkind: identity\nring: mod:16\nlhs: f1^8\nrhs: f2^4\n");
  CHECK(verify_identity(wrong).status == Status::Counterexample);
}

#include <doctest.h>

#include "oracles.hpp"
#include "qseries/error.hpp"
#include "qseries/partition_families.hpp"

using namespace qseries;

namespace {

std::vector<std::string> prefix(const TruncatedSeries& s) { return oracle::strings(s); }

// Frozen from oracle::odd_overpartitions (factor-by-factor products).
const std::vector<std::string> kS3{"1",  "2",  "2",  "2",  "2",  "4",  "6",   "8",   "10",  "10",  "12",  "16",  "22",
                                   "28", "32", "36", "42", "52", "66", "80",  "92",  "104", "120", "144", "174", "206"};
const std::vector<std::string> kS5{"1",  "2",  "2",  "4",   "6",   "6",   "8",   "12",  "14",  "18",  "26",  "32",  "40",
                                   "52", "64", "76", "94",  "116", "138", "168", "206", "248", "296", "356", "424", "498"};
const std::vector<std::string> kS9{"1",  "2",  "2",   "4",   "6",   "8",   "12",  "16",  "22",  "28",  "36",  "48",  "60",
                                   "76", "96", "120", "150", "184", "228", "280", "340", "416", "504", "608", "732", "878"};

}  // namespace

TEST_CASE("frozen prefixes") {
  CHECK(prefix(family_gf(FamilySpec::overpartition(), 6)) ==
        std::vector<std::string>{"1", "2", "4", "8", "14", "24"});
  CHECK(prefix(family_gf(FamilySpec::tschur_over(3), 26)) == kS3);
  CHECK(prefix(family_gf(FamilySpec::tschur_over(5), 26)) == kS5);
  CHECK(prefix(family_gf(FamilySpec::tschur_over(9), 26)) == kS9);
  CHECK(family_gf(FamilySpec::tschur_over(5), 7).coefficient(6) == 8);
  CHECK(prefix(family_gf(FamilySpec::tschur(3), 12)) ==
        std::vector<std::string>{"1", "1", "1", "1", "1", "2", "2", "3", "3", "3", "4", "5"});
  CHECK(prefix(family_gf(FamilySpec::tschur_over_tuple(3, 2), 12)) ==
        std::vector<std::string>{"1", "4", "8", "12", "16", "24", "40", "64", "96", "132", "176", "240"});
}

TEST_CASE("frozen prefixes agree with the factor-by-factor oracle") {
  CHECK(oracle::strings(oracle::odd_overpartitions(3, 26)) == kS3);
  CHECK(oracle::strings(oracle::odd_overpartitions(5, 26)) == kS5);
  CHECK(oracle::strings(oracle::odd_overpartitions(9, 26)) == kS9);
}

TEST_CASE("S-bar_5(6) = 8 three ways") {
  CHECK(family_gf(FamilySpec::tschur_over(5), 7).coefficient(6) == 8);
  CHECK(oracle_t_schur_over(5, 6) == 8);
  CHECK(oracle_t_schur_over_direct(5, 6) == 8);
}

TEST_CASE("enumeration oracles match the series") {
  for (unsigned t : {3u, 5u, 9u}) {
    const auto s = family_gf(FamilySpec::tschur_over(t), 26);
    for (unsigned n = 0; n <= 25; ++n) {
      CAPTURE(t);
      CAPTURE(n);
      CHECK(oracle_t_schur_over(t, n) == s.coefficient(n));
      CHECK(oracle_t_schur_over_direct(t, n) == s.coefficient(n));
    }
  }
  for (unsigned t : {3u, 5u}) {
    const auto s = family_gf(FamilySpec::tschur(t), 26);
    for (unsigned n = 0; n <= 25; ++n) {
      CAPTURE(t);
      CAPTURE(n);
      CHECK(oracle_t_schur(t, n) == s.coefficient(n));
      CHECK(oracle_t_schur_regular(t, n) == s.coefficient(n));
      CHECK(oracle_t_schur_residue_classes(t, n) == s.coefficient(n));
    }
  }
  const auto over = family_gf(FamilySpec::overpartition(), 20);
  for (unsigned n = 0; n < 20; ++n) CHECK(enumerate_overpartitions(n, [](unsigned) { return true; }) == over.coefficient(n));
}

TEST_CASE("tuple families are powers") {
  const auto base = family_gf(FamilySpec::tschur_over(3), 60);
  CHECK(family_gf(FamilySpec::tschur_over_tuple(3, 5), 60) == pow(base, 5));
  CHECK(family_gf(FamilySpec::tschur_over_tuple(3, 1), 60) == base);
  const auto ring = CoefficientRing::modular(32);
  CHECK(family_gf(FamilySpec::tschur_over_tuple(9, 17), 200, ring) ==
        reduce_mod(family_gf(FamilySpec::tschur_over_tuple(9, 17), 200), 32));
}

TEST_CASE("family names") {
  CHECK(FamilySpec::parse("tschur-over(9)") == FamilySpec::tschur_over(9));
  CHECK(FamilySpec::parse("tschur-over-tuple(3, 17)") == FamilySpec::tschur_over_tuple(3, 17));
  CHECK(FamilySpec::parse("overpartition") == FamilySpec::overpartition());
  CHECK(FamilySpec::parse("tschur(5)") == FamilySpec::tschur(5));
  CHECK(FamilySpec::tschur_over_tuple(3, 17).to_string() == "tschur-over-tuple(3,17)");
  CHECK(FamilySpec::from_parts("tschur-over", {5}) == FamilySpec::tschur_over(5));
  CHECK_THROWS_AS(FamilySpec::parse("tschur-over(4)"), InvalidArgument);
  CHECK_THROWS_AS(FamilySpec::parse("tschur-over(1)"), InvalidArgument);
  CHECK_THROWS_AS(FamilySpec::parse("tschur-over-tuple(3,0)"), InvalidArgument);
  CHECK_THROWS_AS(FamilySpec::parse("schur(3)"), InvalidArgument);
  CHECK_THROWS_AS(FamilySpec::from_parts("tschur", {}), InvalidArgument);
}

TEST_CASE("eta quotient forms") {
  CHECK(FamilySpec::overpartition().eta().to_string() == "f2/f1^2");
  CHECK(FamilySpec::tschur(3).eta().to_string() == "f2*f3/(f1*f6)");
  CHECK(FamilySpec::tschur_over(3).eta().to_string() == "f2^3*f3^2*f12/(f1^2*f4*f6^3)");
}

TEST_CASE("Schur residues") {
  CHECK(schur_residues(3) == std::vector<unsigned>{1, 5});
  CHECK(schur_residues(5) == std::vector<unsigned>{1, 3, 7, 9});
}

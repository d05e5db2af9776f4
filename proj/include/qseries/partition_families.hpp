#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/series.hpp"
#include "qseries/special_functions.hpp"

namespace qseries {

enum class FamilyKind { Overpartition, TSchur, TSchurOver, TSchurOverTuple };

// One of the counting functions p̄(n), S_t(n), S̄_t(n) or S̄_t^r(n).
struct FamilySpec {
  FamilyKind kind = FamilyKind::Overpartition;
  unsigned t = 0;  // odd, >= 3 for the Schur families
  unsigned r = 1;  // tuple count for TSchurOverTuple

  static FamilySpec overpartition() { return {FamilyKind::Overpartition, 0, 1}; }
  static FamilySpec tschur(unsigned t) { return {FamilyKind::TSchur, t, 1}; }
  static FamilySpec tschur_over(unsigned t) { return {FamilyKind::TSchurOver, t, 1}; }
  static FamilySpec tschur_over_tuple(unsigned t, unsigned r) { return {FamilyKind::TSchurOverTuple, t, r}; }

  // Accepts "overpartition", "tschur(5)", "tschur-over(9)", "tschur-over-tuple(3,17)";
  // the parenthesised arguments may also be given as name plus a parameter list.
  static FamilySpec parse(std::string_view text);
  static FamilySpec from_parts(std::string_view name, const std::vector<long long>& params);

  void validate() const;
  EtaQuotientSpec eta() const;
  std::string to_string() const;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

TruncatedSeries family_gf(const FamilySpec& spec, std::size_t order,
                          CoefficientRing ring = CoefficientRing::exact());

// Number of overpartitions of n whose parts satisfy `allowed_part`.
mpz_class enumerate_overpartitions(unsigned n, const std::function<bool(unsigned)>& allowed_part);

// S_t(n) as partitions into distinct parts not divisible by t.
mpz_class oracle_t_schur(unsigned t, unsigned n);
// S_t(n) as partitions into odd parts, each occurring fewer than t times.
mpz_class oracle_t_schur_regular(unsigned t, unsigned n);
// S_t(n) by definition: parts congruent mod 2t to an element of I(t).
mpz_class oracle_t_schur_residue_classes(unsigned t, unsigned n);

// S̄_t(n) as partitions of 2n into parts not divisible by t, odd parts
// occurring exactly twice and even parts distinct.
mpz_class oracle_t_schur_over(unsigned t, unsigned n);
// S̄_t(n) as overpartitions into odd parts not divisible by t.
mpz_class oracle_t_schur_over_direct(unsigned t, unsigned n);

// I(t) = {1, 3, ..., 2t-1} \ {t}.
std::vector<unsigned> schur_residues(unsigned t);

}  // namespace qseries

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/series.hpp"
#include "qseries/special_functions.hpp"

namespace qseries {

// Series-valued and index-valued nodes share one tree. Index positions
// (exponents, subscripts, call arguments, braces) evaluate to integers.
enum class ExprKind {
  Integer,   // value
  Variable,  // name
  QPower,    // q^args[0]
  Eta,       // f_{args[0]}
  Add,
  Sub,
  Mul,
  Div,
  Mod,       // index-only
  Pow,       // args[0]^args[1]
  Neg,
  Call,      // name(args...); `binder` holds the family name for gf and the variable for sum
  Index,     // {args[0]}: an index expression used as a series scalar
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind = ExprKind::Integer;
  long long value = 0;
  std::string name;
  std::string binder;
  std::vector<Expr> args;
  // For sum(): the indices listed in except(...), kept apart from args.
  std::vector<Expr> excluded;
  int line = 0;
  int column = 0;
};

using Bindings = std::map<std::string, long long, std::less<>>;

// Structural equality; source positions are ignored.
bool same_tree(const Expr& a, const Expr& b);

// `line`/`column` locate the first character of `text` inside a larger file
// so that errors point at the manifest rather than at the substring.
Expr parse_expression(std::string_view text, int line = 1, int column = 1);
Expr parse_index_expression(std::string_view text, int line = 1, int column = 1);

// Canonical text; parse_expression(print_expression(e)) is same_tree to e.
std::string print_expression(const Expr& e);
std::string print_index_expression(const Expr& e);

long long evaluate_index(const Expr& e, const Bindings& env = {});

// Expands a series-valued expression to exactly `order` coefficients.
TruncatedSeries evaluate(const Expr& e, std::size_t order, CoefficientRing ring = CoefficientRing::exact(),
                         const Bindings& env = {});

// The tree as a single scalar * q^j * prod f_k^e, if it is one.
std::optional<EtaQuotientSpec> as_eta_monomial(const Expr& e, const Bindings& env = {});

// Number of nodes of a kind (structural, before any evaluation).
std::size_t count_kind(const Expr& e, ExprKind kind);

// Number of sign sites: binary +/- and unary minus nodes, plus one for the
// whole expression. flip_sign(e, k) toggles site k (k == count - 1 negates
// the whole expression).
std::size_t sign_sites(const Expr& e);
Expr flip_sign(const Expr& e, std::size_t site);

}  // namespace qseries

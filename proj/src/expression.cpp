#include "qseries/expression.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

#include "qseries/partition_families.hpp"

namespace qseries {

namespace {

// --- lexer -------------------------------------------------------------------

enum class Tok { Int, Ident, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long value = 0;
  int line = 0;
  int column = 0;
  bool space_before = false;
};

std::vector<Token> lex(std::string_view text, int line, int column) {
  std::vector<Token> out;
  std::size_t i = 0;
  bool space = false;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      space = true;
      continue;
    }
    Token t;
    t.line = line;
    t.column = column;
    t.space_before = space;
    space = false;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Tok::Int;
      t.text = std::string(text.substr(i, j - i));
      long long v = 0;
      for (char d : t.text) {
        if (__builtin_mul_overflow(v, 10LL, &v) || __builtin_add_overflow(v, static_cast<long long>(d - '0'), &v)) {
          throw ParseError("integer literal too large", t.line, t.column);
        }
      }
      t.value = v;
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::string_view("+-*/%^(){},").find(c) != std::string_view::npos) {
      t.kind = Tok::Symbol;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

// --- node helpers --------------------------------------------------------------

std::shared_ptr<ExprNode> node(ExprKind kind, const Token& at) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->line = at.line;
  n->column = at.column;
  return n;
}

Expr integer_node(long long v, const Token& at) {
  auto n = node(ExprKind::Integer, at);
  n->value = v;
  return n;
}

Expr binary(ExprKind kind, Expr a, Expr b, const Token& at) {
  auto n = node(kind, at);
  n->args = {std::move(a), std::move(b)};
  return n;
}

// Argument types of the built-in calls: 'S' series, 'I' index.
struct Signature {
  std::string_view name;
  std::vector<std::string_view> arities;  // accepted argument patterns
};

const std::vector<Signature>& series_calls() {
  static const std::vector<Signature> table = {
      {"theta", {"IIII"}},   {"Bk", {"II"}},   {"twoBk", {"II"}}, {"poch", {"III", "IIII"}},
      {"subst", {"SI"}},     {"neg", {"S"}},   {"dissect", {"SII"}},
  };
  return table;
}

const Signature* find_series_call(std::string_view name) {
  for (const auto& s : series_calls()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool is_index_call(std::string_view name) { return name == "exceptional"; }

bool is_eta_ident(std::string_view s) {
  return s.size() >= 2 && s[0] == 'f' &&
         std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// --- parser ------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Expr parse_series_root() {
    Expr e = series_expr();
    expect_end();
    return e;
  }

  Expr parse_index_root() {
    Expr e = index_expr();
    expect_end();
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  bool at_symbol(char c, std::size_t k = 0) const {
    return peek(k).kind == Tok::Symbol && peek(k).text[0] == c;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw ParseError(msg, at.line, at.column); }

  [[noreturn]] void unexpected(const Token& t) const {
    if (t.kind == Tok::End) fail("unexpected end of input", t);
    fail("unexpected '" + t.text + "'", t);
  }

  const Token& expect(char c) {
    if (!at_symbol(c)) {
      const Token& t = peek();
      if (t.kind == Tok::End) fail(std::string("expected '") + c + "' before end of input", t);
      fail(std::string("expected '") + c + "', found '" + t.text + "'", t);
    }
    return take();
  }

  void expect_end() {
    if (peek().kind != Tok::End) unexpected(peek());
  }

  // series grammar ------------------------------------------------------------

  Expr series_expr() {
    Expr lhs = series_term();
    while (at_symbol('+') || at_symbol('-')) {
      const Token& op = take();
      Expr rhs = series_term();
      lhs = binary(op.text[0] == '+' ? ExprKind::Add : ExprKind::Sub, lhs, rhs, op);
    }
    return lhs;
  }

  Expr series_term() {
    Expr lhs = series_factor();
    while (at_symbol('*') || at_symbol('/')) {
      const Token& op = take();
      Expr rhs = series_factor();
      lhs = binary(op.text[0] == '*' ? ExprKind::Mul : ExprKind::Div, lhs, rhs, op);
    }
    return lhs;
  }

  Expr series_factor() {
    if (at_symbol('-')) {
      const Token& op = take();
      auto n = node(ExprKind::Neg, op);
      n->args = {series_factor()};
      return n;
    }
    Expr base = series_base();
    if (at_symbol('^')) {
      const Token& op = take();
      return binary(ExprKind::Pow, base, exponent(), op);
    }
    return base;
  }

  // '^' INT | '^' '-' INT | '^' '{' index '}'
  Expr exponent() {
    if (at_symbol('{')) return braced_index();
    if (at_symbol('-')) {
      const Token& op = take();
      if (peek().kind != Tok::Int) fail("expected an integer exponent", peek());
      auto n = node(ExprKind::Neg, op);
      n->args = {integer_node(take().value, op)};
      return n;
    }
    if (peek().kind != Tok::Int) fail("expected an integer exponent or {index}", peek());
    const Token& t = take();
    return integer_node(t.value, t);
  }

  Expr braced_index() {
    expect('{');
    Expr e = index_expr();
    expect('}');
    return e;
  }

  Expr series_base() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      take();
      return integer_node(t.value, t);
    }
    if (at_symbol('(')) {
      take();
      Expr e = series_expr();
      expect(')');
      return e;
    }
    if (at_symbol('{')) {
      auto n = node(ExprKind::Index, t);
      n->args = {braced_index()};
      return n;
    }
    if (t.kind != Tok::Ident) unexpected(t);
    take();
    if (t.text == "q") {
      auto n = node(ExprKind::QPower, t);
      if (at_symbol('^')) {
        take();
        n->args = {exponent()};
      } else {
        n->args = {integer_node(1, t)};
      }
      return n;
    }
    if (t.text == "f" && at_symbol('{')) {
      auto n = node(ExprKind::Eta, t);
      n->args = {braced_index()};
      return n;
    }
    if (is_eta_ident(t.text)) {
      const std::string digits = t.text.substr(1);
      if (digits.find_first_not_of('0') == std::string::npos) fail("zero subscript in '" + t.text + "'", t);
      if (digits.size() > 18) fail("subscript too large", t);
      auto n = node(ExprKind::Eta, t);
      n->args = {integer_node(std::stoll(digits), t)};
      return n;
    }
    if (t.text == "phi" || t.text == "psi") {
      auto n = node(ExprKind::Call, t);
      n->name = t.text;
      return n;
    }
    if (t.text == "gf") return gf_call(t);
    if (t.text == "sum") return sum_call(t);
    if (const Signature* sig = find_series_call(t.text)) return call(t, *sig);
    fail("unknown atom '" + t.text + "'", t);
  }

  Expr call(const Token& name, const Signature& sig) {
    auto n = node(ExprKind::Call, name);
    n->name = name.text;
    expect('(');
    std::string pattern;
    while (true) {
      // Decide the type of the next argument from the patterns still viable.
      const std::size_t k = pattern.size();
      char type = 0;
      for (auto p : sig.arities) {
        if (p.size() > k && p.substr(0, k) == pattern) type = p[k];
      }
      if (type == 0) fail("too many arguments to " + name.text, peek());
      n->args.push_back(type == 'S' ? series_expr() : index_expr());
      pattern.push_back(type);
      if (at_symbol(',')) {
        take();
        continue;
      }
      break;
    }
    expect(')');
    if (std::find(sig.arities.begin(), sig.arities.end(), pattern) == sig.arities.end()) {
      fail("wrong number of arguments to " + name.text, name);
    }
    return n;
  }

  Expr gf_call(const Token& name) {
    auto n = node(ExprKind::Call, name);
    n->name = "gf";
    expect('(');
    if (peek().kind != Tok::Ident) fail("expected a family name", peek());
    std::string family = take().text;
    // Family names are hyphenated identifiers such as tschur-over-tuple.
    while (at_symbol('-') && peek(1).kind == Tok::Ident && !peek().space_before && !peek(1).space_before) {
      take();
      family += "-" + take().text;
    }
    n->binder = family;
    while (at_symbol(',')) {
      take();
      n->args.push_back(index_expr());
    }
    expect(')');
    return n;
  }

  // sum(k, lo, hi, [except(i, ...),] body)
  Expr sum_call(const Token& name) {
    auto n = node(ExprKind::Call, name);
    n->name = "sum";
    expect('(');
    if (peek().kind != Tok::Ident) fail("expected a summation variable", peek());
    n->binder = take().text;
    expect(',');
    n->args.push_back(index_expr());
    expect(',');
    n->args.push_back(index_expr());
    expect(',');
    if (peek().kind == Tok::Ident && peek().text == "except" && at_symbol('(', 1)) {
      take();
      take();
      n->excluded.push_back(index_expr());
      while (at_symbol(',')) {
        take();
        n->excluded.push_back(index_expr());
      }
      expect(')');
      expect(',');
    }
    n->args.push_back(series_expr());
    expect(')');
    return n;
  }

  // index grammar -------------------------------------------------------------

  Expr index_expr() {
    Expr lhs = index_term();
    while (at_symbol('+') || at_symbol('-')) {
      const Token& op = take();
      Expr rhs = index_term();
      lhs = binary(op.text[0] == '+' ? ExprKind::Add : ExprKind::Sub, lhs, rhs, op);
    }
    return lhs;
  }

  Expr index_term() {
    Expr lhs = index_factor();
    while (at_symbol('*') || at_symbol('/') || at_symbol('%')) {
      const Token& op = take();
      Expr rhs = index_factor();
      const ExprKind kind =
          op.text[0] == '*' ? ExprKind::Mul : (op.text[0] == '/' ? ExprKind::Div : ExprKind::Mod);
      lhs = binary(kind, lhs, rhs, op);
    }
    return lhs;
  }

  Expr index_factor() {
    if (at_symbol('-')) {
      const Token& op = take();
      auto n = node(ExprKind::Neg, op);
      n->args = {index_factor()};
      return n;
    }
    Expr base = index_atom();
    if (at_symbol('^')) {
      const Token& op = take();
      return binary(ExprKind::Pow, base, index_atom(), op);
    }
    return base;
  }

  Expr index_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      take();
      return integer_node(t.value, t);
    }
    if (at_symbol('(') || at_symbol('{')) {
      const char close = take().text[0] == '(' ? ')' : '}';
      Expr e = index_expr();
      expect(close);
      return e;
    }
    if (t.kind != Tok::Ident) unexpected(t);
    take();
    if (at_symbol('(')) {
      if (!is_index_call(t.text)) fail("unknown index function '" + t.text + "'", t);
      auto n = node(ExprKind::Call, t);
      n->name = t.text;
      take();
      n->args.push_back(index_expr());
      expect(')');
      return n;
    }
    auto n = node(ExprKind::Variable, t);
    n->name = t.text;
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// --- printing ------------------------------------------------------------------

int precedence(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
    case ExprKind::Mod:
      return 2;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string print_index(const Expr& e);
std::string print_series(const Expr& e);

std::string binary_text(const Expr& e, std::string (*printer)(const Expr&)) {
  const int p = precedence(e);
  auto side = [&](const Expr& x, bool right) {
    const bool paren = right ? precedence(x) <= p : precedence(x) < p;
    return paren ? "(" + printer(x) + ")" : printer(x);
  };
  std::string op;
  switch (e->kind) {
    case ExprKind::Add: op = " + "; break;
    case ExprKind::Sub: op = " - "; break;
    case ExprKind::Mul: op = "*"; break;
    case ExprKind::Div: op = "/"; break;
    case ExprKind::Mod: op = "%"; break;
    default: break;
  }
  return side(e->args[0], false) + op + side(e->args[1], true);
}

std::string print_index(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Integer:
      return std::to_string(e->value);
    case ExprKind::Variable:
      return e->name;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
    case ExprKind::Mod:
      return binary_text(e, &print_index);
    case ExprKind::Neg: {
      const auto& x = e->args[0];
      return "-" + (precedence(x) < 3 ? "(" + print_index(x) + ")" : print_index(x));
    }
    case ExprKind::Pow: {
      auto atom = [](const Expr& x) { return precedence(x) < 5 ? "(" + print_index(x) + ")" : print_index(x); };
      return atom(e->args[0]) + "^" + atom(e->args[1]);
    }
    case ExprKind::Call:
      return e->name + "(" + print_index(e->args[0]) + ")";
    default:
      throw InvalidArgument("series node in index position");
  }
}

// Text after '^' or after an f / q atom: a bare literal when possible.
std::string print_exponent(const Expr& e) {
  if (e->kind == ExprKind::Integer) return std::to_string(e->value);
  if (e->kind == ExprKind::Neg && e->args[0]->kind == ExprKind::Integer) {
    return "-" + std::to_string(e->args[0]->value);
  }
  return "{" + print_index(e) + "}";
}

std::string print_series(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Integer:
      return std::to_string(e->value);
    case ExprKind::Index:
      return "{" + print_index(e->args[0]) + "}";
    case ExprKind::QPower: {
      const Expr& x = e->args[0];
      if (x->kind == ExprKind::Integer && x->value == 1) return "q";
      return "q^" + print_exponent(x);
    }
    case ExprKind::Eta: {
      const Expr& x = e->args[0];
      if (x->kind == ExprKind::Integer) return "f" + std::to_string(x->value);
      return "f{" + print_index(x) + "}";
    }
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
      return binary_text(e, &print_series);
    case ExprKind::Neg: {
      const auto& x = e->args[0];
      return "-" + (precedence(x) < 3 ? "(" + print_series(x) + ")" : print_series(x));
    }
    case ExprKind::Pow: {
      const Expr& base = e->args[0];
      bool paren = precedence(base) < 5;
      if (base->kind == ExprKind::QPower) {
        const Expr& x = base->args[0];
        paren = !(x->kind == ExprKind::Integer && x->value == 1);
      }
      const std::string b = print_series(base);
      return (paren ? "(" + b + ")" : b) + "^" + print_exponent(e->args[1]);
    }
    case ExprKind::Call: {
      if (e->name == "phi" || e->name == "psi") return e->name;
      std::string out = e->name + "(";
      std::vector<std::string> parts;
      if (e->name == "gf") {
        parts.push_back(e->binder);
        for (const auto& a : e->args) parts.push_back(print_index(a));
      } else if (e->name == "sum") {
        parts.push_back(e->binder);
        parts.push_back(print_index(e->args[0]));
        parts.push_back(print_index(e->args[1]));
        if (!e->excluded.empty()) {
          std::string ex = "except(";
          for (std::size_t i = 0; i < e->excluded.size(); ++i) ex += (i ? ", " : "") + print_index(e->excluded[i]);
          parts.push_back(ex + ")");
        }
        parts.push_back(print_series(e->args[2]));
      } else {
        const Signature* sig = find_series_call(e->name);
        if (!sig) throw InvalidArgument("unknown call '" + e->name + "'");
        // All patterns of one call agree on the types of shared positions.
        std::string_view pattern = sig->arities.back();
        for (std::size_t i = 0; i < e->args.size(); ++i) {
          parts.push_back(pattern[i] == 'S' ? print_series(e->args[i]) : print_index(e->args[i]));
        }
      }
      for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
      return out + ")";
    }
    default:
      throw InvalidArgument("index node in series position");
  }
}

// --- evaluation ----------------------------------------------------------------

long long checked(long long a, long long b, char op) {
  long long r = 0;
  bool overflow = false;
  switch (op) {
    case '+': overflow = __builtin_add_overflow(a, b, &r); break;
    case '-': overflow = __builtin_sub_overflow(a, b, &r); break;
    case '*': overflow = __builtin_mul_overflow(a, b, &r); break;
    default: break;
  }
  if (overflow) throw InvalidArgument("index arithmetic overflow");
  return r;
}

std::size_t nonnegative(long long v, const char* what) {
  if (v < 0) throw InvalidArgument(std::string(what) + " must be nonnegative, got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

std::size_t positive(long long v, const char* what) {
  if (v < 1) throw InvalidArgument(std::string(what) + " must be positive, got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

int unit_sign(long long v) {
  if (v != 1 && v != -1) throw InvalidArgument("theta/pochhammer sign must be 1 or -1, got " + std::to_string(v));
  return static_cast<int>(v);
}

TruncatedSeries evaluate_call(const ExprNode& e, std::size_t order, CoefficientRing ring, const Bindings& env) {
  auto idx = [&](std::size_t i) { return evaluate_index(e.args[i], env); };
  const std::string& f = e.name;
  if (f == "phi") return phi(order, ring);
  if (f == "psi") return psi(order, ring);
  if (f == "theta") {
    ThetaMonomialPair pair{unit_sign(idx(0)), nonnegative(idx(1), "theta exponent"), unit_sign(idx(2)),
                           nonnegative(idx(3), "theta exponent")};
    return theta_f(pair, order, ring);
  }
  if (f == "Bk" || f == "twoBk") {
    const long long p = idx(0);
    if (p < 3) throw InvalidArgument("B_k needs an odd prime p");
    const auto pp = static_cast<std::uint64_t>(p);
    return f == "Bk" ? b_k_series(pp, idx(1), order, ring) : doubled_b_k(pp, idx(1), order, ring);
  }
  if (f == "poch") {
    std::optional<std::size_t> n;
    if (e.args.size() == 4) n = nonnegative(idx(3), "pochhammer length");
    return pochhammer(unit_sign(idx(0)), nonnegative(idx(1), "pochhammer exponent"), positive(idx(2), "q step"), n,
                      order, ring);
  }
  if (f == "subst") {
    const std::size_t k = positive(idx(1), "substitution power");
    const TruncatedSeries inner = evaluate(e.args[0], (order + k - 1) / k, ring, env);
    return truncate(substitute_power(inner, k), order);
  }
  if (f == "neg") return substitute_neg(evaluate(e.args[0], order, ring, env));
  if (f == "dissect") {
    const std::size_t m = positive(idx(1), "dissection modulus");
    const std::size_t r = nonnegative(idx(2), "dissection residue");
    if (r >= m) throw InvalidArgument("dissection residue must be below the modulus");
    return extract_dissection(evaluate(e.args[0], m * (order - 1) + r + 1, ring, env), m, r);
  }
  if (f == "gf") {
    std::vector<long long> params;
    for (std::size_t i = 0; i < e.args.size(); ++i) params.push_back(idx(i));
    return family_gf(FamilySpec::from_parts(e.binder, params), order, ring);
  }
  if (f == "sum") {
    const long long lo = idx(0);
    const long long hi = idx(1);
    std::set<long long> skip;
    for (const auto& x : e.excluded) skip.insert(evaluate_index(x, env));
    TruncatedSeries total = TruncatedSeries::zero(ring, order);
    Bindings inner = env;
    for (long long k = lo; k <= hi; ++k) {
      if (skip.count(k)) continue;
      inner[e.binder] = k;
      total = add(total, evaluate(e.args[2], order, ring, inner));
    }
    return total;
  }
  throw InvalidArgument("unknown call '" + f + "'");
}

void collect_sign_sites(const Expr& e, bool series, std::vector<const ExprNode*>& out);

void visit_children(const Expr& e, bool series, std::vector<const ExprNode*>& out) {
  switch (e->kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
    case ExprKind::Mod:
    case ExprKind::Neg:
      for (const auto& a : e->args) collect_sign_sites(a, series, out);
      return;
    case ExprKind::Pow:
      collect_sign_sites(e->args[0], series, out);
      return;
    case ExprKind::Call: {
      if (e->name == "sum") {
        collect_sign_sites(e->args[2], true, out);
      } else if (e->name == "subst" || e->name == "neg" || e->name == "dissect") {
        collect_sign_sites(e->args[0], true, out);
      }
      return;
    }
    default:
      return;
  }
}

void collect_sign_sites(const Expr& e, bool series, std::vector<const ExprNode*>& out) {
  if (!series) return;
  if (e->kind == ExprKind::Add || e->kind == ExprKind::Sub || e->kind == ExprKind::Neg) out.push_back(e.get());
  visit_children(e, series, out);
}

Expr rebuild_flipped(const Expr& e, const ExprNode* target) {
  if (e.get() == target) {
    if (e->kind == ExprKind::Neg) return e->args[0];
    auto copy = std::make_shared<ExprNode>(*e);
    copy->kind = e->kind == ExprKind::Add ? ExprKind::Sub : ExprKind::Add;
    return copy;
  }
  bool changed = false;
  std::vector<Expr> args;
  for (const auto& a : e->args) {
    args.push_back(rebuild_flipped(a, target));
    changed = changed || args.back() != a;
  }
  if (!changed) return e;
  auto copy = std::make_shared<ExprNode>(*e);
  copy->args = std::move(args);
  return copy;
}

}  // namespace

// --- public API ----------------------------------------------------------------

bool same_tree(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->value != b->value || a->name != b->name || a->binder != b->binder ||
      a->args.size() != b->args.size() || a->excluded.size() != b->excluded.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!same_tree(a->args[i], b->args[i])) return false;
  }
  for (std::size_t i = 0; i < a->excluded.size(); ++i) {
    if (!same_tree(a->excluded[i], b->excluded[i])) return false;
  }
  return true;
}

Expr parse_expression(std::string_view text, int line, int column) {
  return Parser(lex(text, line, column)).parse_series_root();
}

Expr parse_index_expression(std::string_view text, int line, int column) {
  return Parser(lex(text, line, column)).parse_index_root();
}

std::string print_expression(const Expr& e) { return print_series(e); }

std::string print_index_expression(const Expr& e) { return print_index(e); }

long long evaluate_index(const Expr& e, const Bindings& env) {
  auto arg = [&](std::size_t i) { return evaluate_index(e->args[i], env); };
  switch (e->kind) {
    case ExprKind::Integer:
      return e->value;
    case ExprKind::Variable: {
      auto it = env.find(e->name);
      if (it == env.end()) throw InvalidArgument("unbound variable '" + e->name + "'");
      return it->second;
    }
    case ExprKind::Add:
      return checked(arg(0), arg(1), '+');
    case ExprKind::Sub:
      return checked(arg(0), arg(1), '-');
    case ExprKind::Mul:
      return checked(arg(0), arg(1), '*');
    case ExprKind::Div: {
      const long long a = arg(0), b = arg(1);
      if (b == 0) throw InvalidArgument("division by zero in index expression");
      if (a % b != 0) {
        throw InvalidArgument("inexact division " + std::to_string(a) + "/" + std::to_string(b) +
                              " in index expression");
      }
      return a / b;
    }
    case ExprKind::Mod: {
      const long long a = arg(0), b = arg(1);
      if (b <= 0) throw InvalidArgument("modulus must be positive in index expression");
      return ((a % b) + b) % b;
    }
    case ExprKind::Pow: {
      const long long base = arg(0), exp = arg(1);
      if (exp < 0) throw InvalidArgument("negative exponent in index expression");
      long long r = 1;
      for (long long i = 0; i < exp; ++i) r = checked(r, base, '*');
      return r;
    }
    case ExprKind::Neg:
      return checked(0, arg(0), '-');
    case ExprKind::Call:
      if (e->name == "exceptional") {
        const long long p = arg(0);
        if (p < 0) throw InvalidArgument("exceptional() needs a prime");
        return euler_exceptional_index(static_cast<std::uint64_t>(p));
      }
      break;
    default:
      break;
  }
  throw InvalidArgument("not an index expression");
}

std::optional<EtaQuotientSpec> as_eta_monomial(const Expr& e, const Bindings& env) {
  auto unit_free = [](const EtaQuotientSpec& s) { return s.qpower == 0 && abs(s.scalar) == 1; };
  switch (e->kind) {
    case ExprKind::Integer:
    case ExprKind::Index: {
      const long long v = e->kind == ExprKind::Integer ? e->value : evaluate_index(e->args[0], env);
      if (v == 0) return std::nullopt;
      EtaQuotientSpec s;
      s.scalar = static_cast<long>(v);
      return s;
    }
    case ExprKind::QPower: {
      EtaQuotientSpec s;
      s.qpower = nonnegative(evaluate_index(e->args[0], env), "q exponent");
      return s;
    }
    case ExprKind::Eta: {
      EtaQuotientSpec s;
      s.factors.push_back({static_cast<std::uint64_t>(positive(evaluate_index(e->args[0], env), "subscript")), 1});
      return s;
    }
    case ExprKind::Mul: {
      auto a = as_eta_monomial(e->args[0], env);
      if (!a) return std::nullopt;
      auto b = as_eta_monomial(e->args[1], env);
      if (!b) return std::nullopt;
      return a->times(*b);
    }
    case ExprKind::Div: {
      auto a = as_eta_monomial(e->args[0], env);
      if (!a) return std::nullopt;
      auto b = as_eta_monomial(e->args[1], env);
      if (!b || !unit_free(*b)) return std::nullopt;
      return a->times(b->power(-1));
    }
    case ExprKind::Pow: {
      auto a = as_eta_monomial(e->args[0], env);
      if (!a) return std::nullopt;
      const long long k = evaluate_index(e->args[1], env);
      if (k < 0 && !unit_free(*a)) return std::nullopt;
      return a->power(k);
    }
    case ExprKind::Neg: {
      auto a = as_eta_monomial(e->args[0], env);
      if (!a) return std::nullopt;
      a->scalar = -a->scalar;
      return a;
    }
    default:
      return std::nullopt;
  }
}

TruncatedSeries evaluate(const Expr& e, std::size_t order, CoefficientRing ring, const Bindings& env) {
  if (order < 1) throw InvalidArgument("order must be positive");
  if (auto mono = as_eta_monomial(e, env)) return eta_quotient(*mono, order, ring);
  switch (e->kind) {
    case ExprKind::Integer:
      return TruncatedSeries::monomial(ring, order, 0, e->value);
    case ExprKind::Index:
      return TruncatedSeries::monomial(ring, order, 0, evaluate_index(e->args[0], env));
    case ExprKind::Add:
      return add(evaluate(e->args[0], order, ring, env), evaluate(e->args[1], order, ring, env));
    case ExprKind::Sub:
      return sub(evaluate(e->args[0], order, ring, env), evaluate(e->args[1], order, ring, env));
    case ExprKind::Mul:
      return mul(evaluate(e->args[0], order, ring, env), evaluate(e->args[1], order, ring, env));
    case ExprKind::Div:
      return divide(evaluate(e->args[0], order, ring, env), evaluate(e->args[1], order, ring, env));
    case ExprKind::Pow:
      return pow(evaluate(e->args[0], order, ring, env), evaluate_index(e->args[1], env));
    case ExprKind::Neg:
      return negate(evaluate(e->args[0], order, ring, env));
    case ExprKind::Call:
      return evaluate_call(*e, order, ring, env);
    default:
      throw InvalidArgument("index expression used as a series");
  }
}

std::size_t count_kind(const Expr& e, ExprKind kind) {
  std::size_t n = e->kind == kind ? 1 : 0;
  for (const auto& a : e->args) n += count_kind(a, kind);
  for (const auto& a : e->excluded) n += count_kind(a, kind);
  return n;
}

std::size_t sign_sites(const Expr& e) {
  std::vector<const ExprNode*> sites;
  collect_sign_sites(e, true, sites);
  return sites.size() + 1;
}

Expr flip_sign(const Expr& e, std::size_t site) {
  std::vector<const ExprNode*> sites;
  collect_sign_sites(e, true, sites);
  if (site > sites.size()) throw InvalidArgument("sign site out of range");
  if (site == sites.size()) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Neg;
    n->line = e->line;
    n->column = e->column;
    n->args = {e};
    return n;
  }
  return rebuild_flipped(e, sites[site]);
}

}  // namespace qseries

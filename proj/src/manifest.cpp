#include "qseries/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qseries/congruence_engine.hpp"

#ifndef QSERIES_MANIFEST_DIR
#define QSERIES_MANIFEST_DIR "manifests"
#endif

namespace qseries {

namespace {

struct Value {
  std::string text;
  int line = 0;
  int column = 0;
};

struct Stanza {
  int line = 0;
  std::map<std::string, Value> fields;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class StanzaReader {
 public:
  StanzaReader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  std::vector<Stanza> read() {
    std::vector<Stanza> out;
    Stanza current;
    std::string last_key;
    int line_no = 0;
    std::size_t pos = 0;
    auto flush = [&] {
      if (!current.fields.empty()) out.push_back(std::move(current));
      current = Stanza{};
      last_key.clear();
    };
    while (pos <= text_.size()) {
      const std::size_t eol = std::min(text_.find('\n', pos), text_.size());
      std::string_view line = text_.substr(pos, eol - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      pos = eol + 1;
      ++line_no;
      const std::string_view body = trim(line);
      if (body.empty()) {
        flush();
        if (eol == text_.size()) break;
        continue;
      }
      if (body.front() == '#') continue;
      if (std::isspace(static_cast<unsigned char>(line.front()))) {
        if (last_key.empty()) fail(line_no, "continuation line outside a field");
        current.fields[last_key].text += "\n" + std::string(line);
        continue;
      }
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) fail(line_no, "expected 'key: value'");
      const std::string key(trim(line.substr(0, colon)));
      if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) {
            return std::islower(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
                   std::isdigit(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c));
          })) {
        fail(line_no, "bad key '" + key + "'");
      }
      if (current.fields.empty()) current.line = line_no;
      if (current.fields.count(key)) fail(line_no, "duplicate key '" + key + "'");
      std::size_t start = colon + 1;
      while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
      current.fields[key] = Value{std::string(line.substr(start)), line_no, static_cast<int>(start) + 1};
      last_key = key;
      if (eol == text_.size()) break;
    }
    flush();
    return out;
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(source_ + ":" + std::to_string(line) + ": " + msg);
  }

 private:
  std::string_view text_;
  std::string source_;
};

class ClaimBuilder {
 public:
  ClaimBuilder(const Stanza& stanza, const std::string& source) : st_(stanza), source_(source) {}

  Claim build() {
    Claim c;
    c.line = st_.line;
    c.id = std::string(trim(required("id").text));
    if (c.id.empty()) fail(st_.line, "empty id");
    const std::string kind(trim(required("kind").text));
    if (kind == "identity") {
      c.kind = ClaimKind::Identity;
    } else if (kind == "dissection") {
      c.kind = ClaimKind::Dissection;
    } else if (kind == "congruence") {
      c.kind = ClaimKind::Congruence;
    } else if (kind == "prime-family") {
      c.kind = ClaimKind::PrimeFamily;
    } else {
      fail(field_line("kind"), "unknown kind '" + kind + "'");
    }
    if (auto v = optional("cite")) c.cite = std::string(trim(v->text));
    if (auto v = optional("expect")) {
      c.expect = std::string(trim(v->text));
      if (c.expect != "verified" && c.expect != "counterexample" && c.expect != "ill-formed") {
        fail(v->line, "expect must be 'verified', 'counterexample' or 'ill-formed'");
      }
    }
    if (auto v = optional("vars")) c.vars = parse_vars(*v);
    if (auto v = optional("order")) c.order = positive(*v);

    switch (c.kind) {
      case ClaimKind::Identity:
        if (auto v = optional("ring")) c.ring = parse_ring(*v);
        c.lhs = expr(required("lhs"));
        c.rhs = expr(required("rhs"));
        break;
      case ClaimKind::Dissection:
        if (auto v = optional("ring")) c.ring = parse_ring(*v);
        c.lhs = expr(required("source"));
        c.rhs = expr(required("result"));
        c.m = positive(required("m"));
        c.r = nonnegative(required("r"));
        if (c.r >= c.m) fail(field_line("r"), "residue r must be below m");
        break;
      case ClaimKind::Congruence:
        build_congruence(c);
        break;
      case ClaimKind::PrimeFamily:
        build_prime_family(c);
        break;
    }
    for (const auto& [key, value] : st_.fields) {
      if (!used_.count(key)) fail(value.line, "unknown or inapplicable key '" + key + "' for kind " + kind);
    }
    return c;
  }

 private:
  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(source_ + ":" + std::to_string(line) + ": " + msg);
  }

  int field_line(const std::string& key) const {
    auto it = st_.fields.find(key);
    return it == st_.fields.end() ? st_.line : it->second.line;
  }

  const Value& required(const std::string& key) {
    auto it = st_.fields.find(key);
    if (it == st_.fields.end()) fail(st_.line, "missing '" + key + "'");
    used_.insert(key);
    return it->second;
  }

  const Value* optional(const std::string& key) {
    auto it = st_.fields.find(key);
    if (it == st_.fields.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  long long integer(const Value& v) const {
    const std::string_view s = trim(v.text);
    long long out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail(v.line, "expected an integer, got '" + v.text + "'");
    return out;
  }

  std::size_t positive(const Value& v) const {
    const long long x = integer(v);
    if (x < 1) fail(v.line, "expected a positive integer");
    return static_cast<std::size_t>(x);
  }

  std::size_t nonnegative(const Value& v) const {
    const long long x = integer(v);
    if (x < 0) fail(v.line, "expected a nonnegative integer");
    return static_cast<std::size_t>(x);
  }

  CoefficientRing parse_ring(const Value& v) const {
    try {
      return CoefficientRing::parse(trim(v.text));
    } catch (const Error& e) {
      fail(v.line, e.what());
    }
  }

  Expr expr(const Value& v) const { return parse_expression(v.text, v.line, v.column); }
  Expr index_expr(const Value& v) const { return parse_index_expression(v.text, v.line, v.column); }

  // Splits at top-level commas, keeping the column of each piece.
  std::vector<Value> split_list(const Value& v) const {
    std::vector<Value> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= v.text.size(); ++i) {
      const char c = i < v.text.size() ? v.text[i] : ',';
      if (c == '(' || c == '{') ++depth;
      if (c == ')' || c == '}') --depth;
      if (c == ',' && depth == 0) {
        out.push_back(Value{v.text.substr(start, i - start), v.line, v.column + static_cast<int>(start)});
        start = i + 1;
      }
    }
    return out;
  }

  Bindings parse_vars(const Value& v) const {
    Bindings out;
    for (const Value& piece : split_list(v)) {
      const auto eq = piece.text.find('=');
      if (eq == std::string::npos) fail(v.line, "vars entries look like name=value");
      const std::string name(trim(std::string_view(piece.text).substr(0, eq)));
      Value rhs{piece.text.substr(eq + 1), v.line, piece.column + static_cast<int>(eq) + 1};
      out[name] = integer(rhs);
    }
    return out;
  }

  std::vector<LoopRange> parse_loops(const Value& v) const {
    std::vector<LoopRange> out;
    for (const Value& piece : split_list(v)) {
      const auto eq = piece.text.find('=');
      const auto dots = piece.text.find("..");
      if (eq == std::string::npos || dots == std::string::npos || dots < eq) {
        fail(v.line, "loop entries look like var=lo..hi");
      }
      LoopRange r;
      r.var = std::string(trim(std::string_view(piece.text).substr(0, eq)));
      r.lo = parse_index_expression(piece.text.substr(eq + 1, dots - eq - 1), v.line,
                                    piece.column + static_cast<int>(eq) + 1);
      r.hi = parse_index_expression(piece.text.substr(dots + 2), v.line, piece.column + static_cast<int>(dots) + 2);
      out.push_back(std::move(r));
    }
    return out;
  }

  FamilySpec family(const Value& v) const {
    try {
      return FamilySpec::parse(v.text);
    } catch (const Error& e) {
      fail(v.line, e.what());
    }
  }

  void build_common_progression(Claim& c) {
    c.family = family(required("family"));
    if (auto v = optional("index")) {
      c.index = index_expr(*v);
    } else {
      const Value& a = required("A");
      const Value& b = required("B");
      c.index = parse_index_expression(std::to_string(positive(a)) + "*n + " + std::to_string(nonnegative(b)),
                                       a.line, a.column);
    }
    if (auto v = optional("for")) c.loops = parse_loops(*v);
    if (auto v = optional("n-max")) c.n_max = nonnegative(*v);
  }

  void build_congruence(Claim& c) {
    build_common_progression(c);
    std::string form = "vanishing";
    if (auto v = optional("form")) form = std::string(trim(v->text));
    if (form == "vanishing") {
      c.form = CongruenceForm::Vanishing;
    } else if (form == "relation") {
      c.form = CongruenceForm::Relation;
    } else if (form == "exact-equality") {
      c.form = CongruenceForm::ExactEquality;
    } else {
      fail(field_line("form"), "unknown form '" + form + "'");
    }
    if (c.form != CongruenceForm::Vanishing) {
      c.rhs_index = index_expr(required("rhs-index"));
      if (auto v = optional("rhs-family")) c.rhs_family = family(*v);
      if (auto v = optional("sign")) c.sign = index_expr(*v);
      if (auto v = optional("factor")) c.factor = integer(*v);
    }
    if (c.form == CongruenceForm::ExactEquality) {
      if (optional("mod")) fail(field_line("mod"), "exact equalities take no modulus");
      c.modulus = 0;
      c.ring = CoefficientRing::exact();
    } else {
      c.modulus = positive(required("mod"));
      if (c.modulus < 2 || c.modulus > CoefficientRing::kMaxModulus) fail(field_line("mod"), "modulus out of range");
      c.ring = CoefficientRing::modular(c.modulus);
    }
  }

  PrimeCondition condition(std::string_view text, int line) const {
    text = trim(text);
    PrimeCondition pc;
    auto inner = [&](std::string_view head) -> std::string_view {
      const auto open = text.find('(');
      const auto close = text.find(')');
      if (text.substr(0, open) != head || close == std::string_view::npos || close < open) {
        fail(line, "bad prime condition '" + std::string(text) + "'");
      }
      return text.substr(open + 1, close - open - 1);
    };
    auto to_ll = [&](std::string_view s) {
      s = trim(s);
      long long out = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc{} || ptr != s.data() + s.size()) fail(line, "bad number '" + std::string(s) + "'");
      return out;
    };
    if (text.starts_with("legendre")) {
      pc.kind = PrimeCondition::Kind::Legendre;
      pc.a = to_ll(inner("legendre"));
      const auto eq = text.find('=');
      pc.value = eq == std::string_view::npos ? -1 : static_cast<int>(to_ll(text.substr(eq + 1)));
      if (pc.value != -1 && pc.value != 1) fail(line, "legendre condition must compare with 1 or -1");
    } else if (text.starts_with("residue")) {
      pc.kind = PrimeCondition::Kind::Residue;
      const std::string_view body = inner("residue");
      const auto mod = body.find("mod");
      if (mod == std::string_view::npos) fail(line, "residue condition looks like residue(c mod d)");
      pc.residue = to_ll(body.substr(0, mod));
      pc.modulus = to_ll(body.substr(mod + 3));
      if (pc.modulus < 2) fail(line, "residue modulus must be at least 2");
    } else {
      fail(line, "unknown prime condition '" + std::string(text) + "'");
    }
    return pc;
  }

  std::vector<PrimeCondition> conditions(const Value& v) const {
    std::vector<PrimeCondition> out;
    std::string_view rest = v.text;
    while (true) {
      const auto pos = rest.find(" and ");
      out.push_back(condition(rest.substr(0, pos), v.line));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 5);
    }
    return out;
  }

  void build_prime_family(Claim& c) {
    build_common_progression(c);
    c.form = CongruenceForm::Vanishing;
    c.modulus = positive(required("mod"));
    if (c.modulus < 2 || c.modulus > CoefficientRing::kMaxModulus) fail(field_line("mod"), "modulus out of range");
    c.ring = CoefficientRing::modular(c.modulus);
    c.conditions = conditions(required("condition"));
    if (auto v = optional("record")) c.recorded = conditions(*v);
    if (auto v = optional("min-prime")) c.min_prime = positive(*v);
    if (auto v = optional("alpha-max")) {
      const std::size_t amax = nonnegative(*v);
      if (std::any_of(c.loops.begin(), c.loops.end(), [](const LoopRange& r) { return r.var == "alpha"; })) {
        fail(v->line, "alpha given both in 'for' and 'alpha-max'");
      }
      LoopRange r;
      r.var = "alpha";
      r.lo = parse_index_expression("0");
      r.hi = parse_index_expression(std::to_string(amax));
      c.loops.insert(c.loops.begin(), std::move(r));
    }
    const Value& primes = required("primes");
    const std::string_view text = trim(primes.text);
    if (text.starts_with("auto")) {
      const auto open = text.find('(');
      const auto close = text.rfind(')');
      if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        fail(primes.line, "primes: auto(k) or a list");
      }
      Value k{std::string(text.substr(open + 1, close - open - 1)), primes.line, primes.column};
      c.primes.auto_count = positive(k);
    } else {
      for (const Value& piece : split_list(primes)) c.primes.listed.push_back(positive(piece));
      if (c.primes.listed.empty()) fail(primes.line, "empty prime list");
    }
  }

  const Stanza& st_;
  const std::string& source_;
  std::set<std::string> used_;
};

}  // namespace

std::string_view to_string(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::Identity:
      return "identity";
    case ClaimKind::Dissection:
      return "dissection";
    case ClaimKind::Congruence:
      return "congruence";
    case ClaimKind::PrimeFamily:
      return "prime-family";
  }
  return "?";
}

bool PrimeCondition::holds(std::uint64_t p) const {
  if (kind == Kind::Residue) {
    const long long r = static_cast<long long>(p % static_cast<std::uint64_t>(modulus));
    return r == ((residue % modulus) + modulus) % modulus;
  }
  return legendre(a, p) == value;
}

std::string PrimeCondition::to_string() const {
  if (kind == Kind::Residue) return "p = " + std::to_string(residue) + " (mod " + std::to_string(modulus) + ")";
  return "(" + std::to_string(a) + "/p) = " + std::to_string(value);
}

const Claim* Manifest::find(std::string_view id) const {
  for (const auto& c : claims) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

Manifest parse_manifest(std::string_view text, std::string source_name) {
  Manifest out;
  out.source = source_name;
  std::set<std::string> seen;
  for (const Stanza& st : StanzaReader(text, source_name).read()) {
    Claim c = ClaimBuilder(st, source_name).build();
    if (!seen.insert(c.id).second) {
      throw ConfigError(source_name + ":" + std::to_string(st.line) + ": duplicate claim id '" + c.id + "'");
    }
    out.claims.push_back(std::move(c));
  }
  return out;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path);
}

std::string default_manifest_dir() {
  if (const char* env = std::getenv("QSERIES_MANIFEST_DIR"); env && *env) return env;
  return QSERIES_MANIFEST_DIR;
}

}  // namespace qseries

// Command-line front end: expand | verify | oracle | scan.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qseries/harness.hpp"
#include "qseries/partition_families.hpp"

namespace {

using namespace qseries;

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2 };

struct Globals {
  std::optional<std::size_t> order;
  std::string ring = "exact";
  unsigned jobs = 1;
  std::string format = "tsv";
};

Bindings parse_bindings(const std::vector<std::string>& items) {
  Bindings env;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--var expects name=value, got '" + item + "'");
    env[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
  }
  return env;
}

int cmd_expand(const Globals& g, const std::string& text, const std::vector<std::string>& vars) {
  const std::size_t order = g.order.value_or(default_order_from_env());
  const CoefficientRing ring = CoefficientRing::parse(g.ring);
  const TruncatedSeries s = evaluate(parse_expression(text), order, ring, parse_bindings(vars));
  if (g.format == "json") {
    nlohmann::ordered_json out;
    out["expression"] = text;
    out["ring"] = ring.describe();
    out["order"] = order;
    auto coeffs = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < s.order(); ++n) coeffs.push_back(s.coefficient(n).get_str());
    out["coefficients"] = coeffs;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "n\tcoefficient\n";
    for (std::size_t n = 0; n < s.order(); ++n) std::cout << n << '\t' << s.coefficient(n).get_str() << '\n';
  }
  return kOk;
}

int cmd_verify(const Globals& g, const std::string& path, const std::vector<std::string>& filters,
               std::optional<std::size_t> n_max, std::size_t max_depth, const std::string& report_path,
               bool honour_expect) {
  const Manifest manifest = load_manifest(path);
  RunOptions options;
  options.verify.default_order = default_order_from_env();
  options.verify.order_override = g.order;
  options.congruence.n_max_override = n_max;
  options.congruence.max_depth = max_depth;
  options.jobs = g.jobs;
  options.filters = filters;
  const auto reports = run_claims(manifest, options);
  if (filters.size() && reports.empty()) {
    std::cerr << "no claim matches the given filters\n";
    return kUsage;
  }
  const std::string json = render_json(reports);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw ConfigError("cannot write report '" + report_path + "'");
    out << json;
  }
  std::cout << (g.format == "json" ? json : render_tsv(reports));
  if (honour_expect) {
    return std::all_of(reports.begin(), reports.end(), [](const ClaimReport& r) { return r.as_expected(); }) ? kOk
                                                                                                           : kFailed;
  }
  return all_verified(reports) ? kOk : kFailed;
}

FamilySpec family_from(const std::string& name, unsigned t, unsigned r) {
  std::vector<long long> params;
  if (name != "overpartition") params.push_back(t);
  if (name == "tschur-over-tuple") params.push_back(r);
  return FamilySpec::from_parts(name, params);
}

int cmd_oracle(const Globals& g, const std::string& name, unsigned t, std::size_t n_max) {
  const FamilySpec family = family_from(name, t, 1);
  const TruncatedSeries s = family_gf(family, n_max + 1);
  std::vector<std::string> columns;
  std::vector<std::function<mpz_class(unsigned)>> oracles;
  switch (family.kind) {
    case FamilyKind::Overpartition:
      columns = {"enumeration"};
      oracles = {[](unsigned n) { return enumerate_overpartitions(n, [](unsigned) { return true; }); }};
      break;
    case FamilyKind::TSchur:
      columns = {"distinct_not_div_t", "odd_below_t_copies", "residues_mod_2t"};
      oracles = {[t](unsigned n) { return oracle_t_schur(t, n); },
                 [t](unsigned n) { return oracle_t_schur_regular(t, n); },
                 [t](unsigned n) { return oracle_t_schur_residue_classes(t, n); }};
      break;
    case FamilyKind::TSchurOver:
      columns = {"partitions_of_2n", "odd_overpartitions"};
      oracles = {[t](unsigned n) { return oracle_t_schur_over(t, n); },
                 [t](unsigned n) { return oracle_t_schur_over_direct(t, n); }};
      break;
    case FamilyKind::TSchurOverTuple:
      throw ConfigError("no enumeration oracle for tuple families");
  }
  bool all_match = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  if (g.format != "json") {
    std::cout << "n\tseries";
    for (const auto& c : columns) std::cout << '\t' << c;
    std::cout << "\tmatch\n";
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    const mpz_class sv = s.coefficient(n);
    std::vector<mpz_class> ov;
    bool match = true;
    for (const auto& o : oracles) {
      ov.push_back(o(static_cast<unsigned>(n)));
      match = match && ov.back() == sv;
    }
    all_match = all_match && match;
    if (g.format == "json") {
      nlohmann::ordered_json row;
      row["n"] = n;
      row["series"] = sv.get_str();
      for (std::size_t i = 0; i < columns.size(); ++i) row[columns[i]] = ov[i].get_str();
      row["match"] = match;
      rows.push_back(row);
    } else {
      std::cout << n << '\t' << sv.get_str();
      for (const auto& v : ov) std::cout << '\t' << v.get_str();
      std::cout << '\t' << (match ? "yes" : "NO") << '\n';
    }
  }
  if (g.format == "json") {
    nlohmann::ordered_json out;
    out["family"] = family.to_string();
    out["rows"] = rows;
    out["all_match"] = all_match;
    std::cout << out.dump(2) << "\n";
  }
  return all_match ? kOk : kFailed;
}

int cmd_scan(const Globals& g, const std::string& name, unsigned t, unsigned r, std::size_t A, std::uint64_t m,
             std::size_t n_max) {
  const FamilySpec family = family_from(name, t, r);
  const auto candidates = scan_progressions(family, A, m, n_max);
  if (g.format == "json") {
    nlohmann::ordered_json out;
    out["family"] = family.to_string();
    out["A"] = A;
    out["mod"] = m;
    out["n_max"] = n_max;
    out["status"] = "conjectural";
    out["B"] = candidates;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "# conjectural: coefficient(" << A << "n+B) = 0 (mod " << m << ") for n <= " << n_max << " in "
              << family.to_string() << "\n";
    std::cout << "B\tstatus\n";
    for (auto b : candidates) std::cout << b << "\tconjectural\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated q-series engine and claim verifier"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--order", g.order, "Series order / verification order (overrides manifest orders)")
      ->check(CLI::PositiveNumber);
  app.add_option("--ring", g.ring, "Coefficient ring: exact or mod:M");
  app.add_option("--jobs", g.jobs, "Claims verified in parallel")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));

  auto* expand = app.add_subcommand("expand", "Print the coefficients of an expression");
  std::string expr_text;
  std::vector<std::string> vars;
  expand->add_option("expression", expr_text, "e.g. 'f2^3*f9^2*f36/(f1^2*f4*f18^3)'")->required();
  expand->add_option("--var", vars, "Index variable binding name=value");
  expand->fallthrough();

  auto* verify = app.add_subcommand("verify", "Verify the claims of a manifest");
  std::string manifest_path = default_manifest_dir() + "/paper.qsm";
  std::vector<std::string> filters;
  std::optional<std::size_t> n_max;
  std::size_t max_depth = CongruenceOptions{}.max_depth;
  std::string report_path;
  bool honour_expect = false;
  verify->add_option("manifest", manifest_path, "Manifest path (default: shipped paper.qsm)");
  verify->add_option("--filter", filters, "id=<id>, id=<prefix>*, or kind=<kind>");
  verify->add_option("--n-max", n_max, "Override n bound of congruence claims");
  verify->add_option("--max-depth", max_depth, "Deepest coefficient a congruence may need");
  verify->add_option("--report", report_path, "Also write the JSON report to this file");
  verify->add_flag("--expect", honour_expect, "Exit 0 when every claim matches its 'expect' field");
  verify->fallthrough();

  auto* oracle = app.add_subcommand("oracle", "Compare series coefficients with enumeration oracles");
  std::string family_name;
  unsigned t = 3, r = 1;
  std::size_t oracle_n = 10;
  oracle->add_option("family", family_name, "overpartition | tschur | tschur-over")->required();
  oracle->add_option("--t", t, "Odd t >= 3");
  oracle->add_option("--n-max", oracle_n, "Largest n");
  oracle->fallthrough();

  auto* scan = app.add_subcommand("scan", "List progressions A*n+B that vanish mod m (conjectural)");
  std::size_t scan_a = 24, scan_n = 200;
  std::uint64_t scan_m = 2;
  scan->add_option("family", family_name, "overpartition | tschur | tschur-over | tschur-over-tuple")->required();
  scan->add_option("--t", t, "Odd t >= 3");
  scan->add_option("--r", r, "Tuple count");
  scan->add_option("--A", scan_a, "Progression step")->required()->check(CLI::PositiveNumber);
  scan->add_option("--mod", scan_m, "Modulus")->required()->check(CLI::PositiveNumber);
  scan->add_option("--n-max", scan_n, "Largest n");
  scan->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*expand) return cmd_expand(g, expr_text, vars);
    if (*verify) return cmd_verify(g, manifest_path, filters, n_max, max_depth, report_path, honour_expect);
    if (*oracle) return cmd_oracle(g, family_name, t, oracle_n);
    if (*scan) return cmd_scan(g, family_name, t, r, scan_a, scan_m, scan_n);
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return kUsage;
  } catch (const qseries::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

#include "qseries/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace qseries {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Verified:
      return "verified";
    case Status::Counterexample:
      return "counterexample";
    case Status::ConfigError:
      return "config-error";
    case Status::OrderTooSmall:
      return "order-too-small";
    case Status::IllFormed:
      return "ill-formed";
  }
  return "?";
}

bool ClaimReport::as_expected() const {
  return to_string(status) == expect;
}

bool all_verified(const std::vector<ClaimReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const ClaimReport& r) { return r.status == Status::Verified; });
}

std::string render_json(const std::vector<ClaimReport>& reports, RenderOptions options) {
  using nlohmann::ordered_json;
  ordered_json claims = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json c;
    c["id"] = r.id;
    c["kind"] = std::string(to_string(r.kind));
    c["status"] = std::string(to_string(r.status));
    c["order"] = r.order;
    c["ring"] = r.ring;
    c["detail"] = r.detail;
    if (r.expect != "verified") c["expect"] = r.expect;
    if (r.counterexample) {
      ordered_json ce;
      ce["index"] = r.counterexample->index;
      if (!r.counterexample->where.empty()) ce["where"] = r.counterexample->where;
      ce["lhs"] = r.counterexample->lhs;
      ce["rhs"] = r.counterexample->rhs;
      c["counterexample"] = ce;
    }
    if (r.status == Status::OrderTooSmall) {
      c["needed"] = r.needed;
      c["had"] = r.had;
    }
    if (!r.primes.empty()) {
      ordered_json ps = ordered_json::array();
      for (const auto& p : r.primes) {
        ordered_json pj;
        pj["p"] = p.p;
        pj["instances"] = p.instances;
        ordered_json rec = ordered_json::object();
        for (const auto& [cond, holds] : p.recorded) rec[cond] = holds;
        if (!p.recorded.empty()) pj["recorded"] = rec;
        ps.push_back(pj);
      }
      c["primes"] = ps;
    }
    if (options.runtime) c["runtime_ms"] = std::round(r.runtime_ms * 1000.0) / 1000.0;
    claims.push_back(c);
  }
  ordered_json root;
  root["schema"] = "1";
  root["claims"] = claims;
  return root.dump(options.pretty ? 2 : -1) + "\n";
}

std::string render_tsv(const std::vector<ClaimReport>& reports, RenderOptions options) {
  std::ostringstream os;
  os << "id\tkind\tstatus\torder\tring\tdetail";
  if (options.runtime) os << "\truntime_ms";
  os << "\n";
  for (const auto& r : reports) {
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), '\t', ' ');
    std::replace(detail.begin(), detail.end(), '\n', ' ');
    os << r.id << '\t' << to_string(r.kind) << '\t' << to_string(r.status) << '\t' << r.order << '\t' << r.ring
       << '\t' << detail;
    if (options.runtime) os << '\t' << static_cast<long long>(std::llround(r.runtime_ms));
    os << "\n";
  }
  return os.str();
}

}  // namespace qseries

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qseries/harness.hpp"
#include "qseries/partition_families.hpp"

namespace py = pybind11;
using namespace qseries;

namespace {

py::int_ to_py(const mpz_class& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::list coefficients(const TruncatedSeries& s) {
  py::list out;
  for (std::size_t i = 0; i < s.order(); ++i) out.append(to_py(s.coefficient(i)));
  return out;
}

CoefficientRing ring_for(std::uint64_t modulus) {
  return modulus == 0 ? CoefficientRing::exact() : CoefficientRing::modular(modulus);
}

std::string run(const Manifest& manifest, const std::vector<std::string>& filters, unsigned jobs, bool runtime) {
  RunOptions o;
  o.filters = filters;
  o.jobs = std::max(1u, jobs);
  std::vector<ClaimReport> reports;
  {
    py::gil_scoped_release unlocked;
    reports = run_claims(manifest, o);
  }
  return render_json(reports, {runtime, false});
}

}  // namespace

PYBIND11_MODULE(_qseries, m) {
  m.doc() = "Truncated q-series engine and claim verifier";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<OrderTooSmall>(m, "OrderTooSmall", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.def(
      "expand",
      [](const std::string& text, std::size_t order, std::uint64_t modulus, const Bindings& vars) {
        return coefficients(evaluate(parse_expression(text), order, ring_for(modulus), vars));
      },
      py::arg("expr"), py::arg("order"), py::arg("modulus") = 0, py::arg("vars") = Bindings{},
      "Coefficients of q^0..q^(order-1) of an expression; modulus 0 means exact integers.");

  m.def(
      "family_gf",
      [](const std::string& family, std::size_t order, std::uint64_t modulus) {
        return coefficients(family_gf(FamilySpec::parse(family), order, ring_for(modulus)));
      },
      py::arg("family"), py::arg("order"), py::arg("modulus") = 0);

  m.def(
      "eval_index", [](const std::string& text, const Bindings& vars) {
        return evaluate_index(parse_index_expression(text), vars);
      },
      py::arg("expr"), py::arg("vars") = Bindings{});

  m.def("oracle_t_schur_over", [](unsigned t, unsigned n) { return to_py(oracle_t_schur_over(t, n)); },
        "Partitions of 2n counted through the t-Schur overpartition bijection.", py::arg("t"), py::arg("n"));
  m.def("oracle_t_schur_over_direct", [](unsigned t, unsigned n) { return to_py(oracle_t_schur_over_direct(t, n)); },
        "Overpartitions of n into parts not divisible by t.", py::arg("t"), py::arg("n"));
  m.def("oracle_t_schur", [](unsigned t, unsigned n) { return to_py(oracle_t_schur(t, n)); }, py::arg("t"),
        py::arg("n"));

  m.def("default_manifest_dir", &default_manifest_dir);

  m.def(
      "verify_json",
      [](const std::string& path, const std::vector<std::string>& filters, unsigned jobs, bool runtime) {
        return run(load_manifest(path), filters, jobs, runtime);
      },
      py::arg("path"), py::arg("filters") = std::vector<std::string>{}, py::arg("jobs") = 1,
      py::arg("runtime") = true, "Run a manifest file and return the JSON report.");
  m.def(
      "verify_text_json",
      [](const std::string& text, const std::vector<std::string>& filters, unsigned jobs, bool runtime) {
        return run(parse_manifest(text), filters, jobs, runtime);
      },
      py::arg("text"), py::arg("filters") = std::vector<std::string>{}, py::arg("jobs") = 1,
      py::arg("runtime") = true);

  m.def(
      "scan",
      [](const std::string& family, std::size_t A, std::uint64_t modulus, std::size_t n_max) {
        py::gil_scoped_release unlocked;
        return scan_progressions(FamilySpec::parse(family), A, modulus, n_max);
      },
      py::arg("family"), py::arg("A"), py::arg("modulus"), py::arg("n_max"),
      "Residues B with coefficient(A*n+B) = 0 mod m for all n <= n_max. Conjectures only.");
}

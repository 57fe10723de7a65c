// Python bindings: thin JSON-string wrappers over the core operations, so
// the Python side mirrors the CLI surface one to one.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctwist/io.hpp"
#include "ctwist/solver.hpp"
#include "ctwist/twistor.hpp"

namespace py = pybind11;
using namespace ctwist;

namespace {

io::ParsedDocument parse(const std::string& text) {
  return io::parse_model_document_text(text);
}

std::string example_json(const std::string& which,
                         const std::map<std::string, std::string>& parameters,
                         const std::string& stage) {
  std::map<std::string, Rational> params;
  for (const auto& [key, value] : parameters) {
    const auto r = parse_rational(value);
    if (!r) throw Error(Errc::ParseError, "parameter " + key + ": bad rational");
    params[key] = *r;
  }
  io::ExampleId id;
  if (which == "1")
    id = io::ExampleId::Ex1;
  else if (which == "2")
    id = io::ExampleId::Ex2;
  else if (which == "3a")
    id = io::ExampleId::Ex3A;
  else if (which == "3b")
    id = io::ExampleId::Ex3B;
  else
    throw Error(Errc::BadParameter, "which must be 1|2|3a|3b");
  io::Ex2Stage st = io::Ex2Stage::Flat;
  if (stage == "prime")
    st = io::Ex2Stage::Prime;
  else if (stage == "tilde")
    st = io::Ex2Stage::Tilde;
  else if (stage != "flat")
    throw Error(Errc::BadParameter, "stage must be prime|tilde|flat");
  return io::dump(io::example_document(id, params, st));
}

std::string check_json(const std::string& text) {
  const auto doc = parse(text);
  io::Json report = io::make_report(doc);
  report["jacobi_ok"] = check_jacobi(doc.model.algebra).empty();
  if (doc.raw_connection) {
    const auto raw_axioms = verify_axioms(doc.model, *doc.raw_connection);
    const auto repaired = repair_connection(doc.model, *doc.raw_connection);
    report["axioms"] = io::axiom_report_json(raw_axioms);
    report["repair_ledger"] = io::ledger_json(doc.model, repaired.ledger);
    report["axioms_after_repair"] =
        io::axiom_report_json(verify_axioms(doc.model, repaired.table));
    report["pass"] = raw_axioms.all_pass();
  } else {
    report["pass"] = true;
  }
  return io::dump(report);
}

std::string classify_json(const std::string& text) {
  const auto doc = parse(text);
  if (!doc.raw_connection) throw Error(Errc::ParseError, "document has no connection table");
  const auto repaired = repair_connection(doc.model, *doc.raw_connection);
  io::Json report = io::make_report(doc);
  report["repair_ledger"] = io::ledger_json(doc.model, repaired.ledger);
  const CurvatureTensor r = curvature(doc.model, repaired.table);
  report["curvature"] = io::Json::object();
  report["curvature"]["flat"] = r.is_zero();
  report["classification"] = io::classification_json(classify(doc.model, repaired.table));
  return io::dump(report);
}

std::string scan_json_str(const std::string& text, int k, int samples, std::uint64_t seed) {
  const auto doc = parse(text);
  if (!doc.raw_connection) throw Error(Errc::ParseError, "document has no connection table");
  const auto repaired = repair_connection(doc.model, *doc.raw_connection);
  return io::dump(io::scan_json(
      twistor::normality_scan(doc.model, repaired.table, k, samples, seed)));
}

std::string solve_json(const std::string& text, const std::string& objective, int restarts,
                       std::uint64_t seed, long max_denominator, double tolerance) {
  const auto doc = parse(text);
  if (!doc.raw_connection) throw Error(Errc::ParseError, "document has no connection table");
  const auto repaired = repair_connection(doc.model, *doc.raw_connection);
  solver::Objective obj;
  if (objective == "flat")
    obj.kind = solver::ObjectiveKind::Flat;
  else if (objective == "ricci")
    obj.kind = solver::ObjectiveKind::RicciType;
  else if (objective == "reeb")
    obj.kind = solver::ObjectiveKind::ReebFlat;
  else if (objective == "normal")
    obj.kind = solver::ObjectiveKind::Normal;
  else
    throw Error(Errc::BadParameter, "objective must be flat|ricci|reeb|normal");
  solver::SolverOptions options;
  options.restarts = restarts;
  options.seed = seed;
  options.max_denominator = max_denominator;
  options.tolerance = tolerance;
  io::Json out;
  try {
    out = io::solution_json(solver::solve(doc.model, repaired.table, obj, options),
                            2 * doc.model.n);
    out["converged"] = true;
  } catch (const solver::NoConvergence& e) {
    out = io::solution_json(e.best(), 2 * doc.model.n);
    out["converged"] = false;
  }
  return io::dump(out);
}

std::string fiber_json(int n, int samples, std::uint64_t seed) {
  return io::dump(io::siegel_json(fiber::verify_siegel_model(n, samples, seed)));
}

}  // namespace

PYBIND11_MODULE(_ctwist, m) {
  m.doc() = "Exact verification and search for left-invariant contact connections";
  m.attr("__version__") = io::TOOL_VERSION;

  py::register_exception<Error>(m, "CtwistError");

  m.def("example", &example_json, py::arg("which"),
        py::arg("parameters") = std::map<std::string, std::string>{},
        py::arg("stage") = "flat",
        "Built-in example document as a JSON string; which is 1|2|3a|3b.");
  m.def("check", &check_json, py::arg("document"),
        "Axiom report, repair ledger and post-repair status (JSON).");
  m.def("classify", &classify_json, py::arg("document"),
        "Curvature classification of the (repaired) connection (JSON).");
  m.def("scan", &scan_json_str, py::arg("document"), py::arg("k") = 1,
        py::arg("samples") = 25, py::arg("seed") = 0,
        "Monte-Carlo normality scan over fibre points (JSON).");
  m.def("solve", &solve_json, py::arg("document"), py::arg("objective") = "flat",
        py::arg("restarts") = 20, py::arg("seed") = 0, py::arg("max_denominator") = 1000,
        py::arg("tolerance") = 1e-12,
        "Search deformations of the document's connection for a curvature target (JSON).");
  m.def("fiber_diagnostics", &fiber_json, py::arg("n") = 2, py::arg("samples") = 100,
        py::arg("seed") = 0, "Upper half-space model diagnostics (JSON).");
}

#include "ctwist/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

#include "ctwist/io.hpp"

namespace ctwist::cli {

namespace {

using io::Json;

struct CommonOpts {
  std::string input;
  std::string report_path;
};

void emit_report(const Json& report, const std::string& path) {
  if (path.empty())
    std::cout << io::dump(report);
  else
    io::write_file(path, report);
}

// Loads, repairs when a connection is present, and reports the ledger.
struct LoadedModel {
  io::ParsedDocument doc;
  std::optional<RepairResult> repair;
};

LoadedModel load(const std::string& path) {
  LoadedModel out{io::parse_model_document(io::load_file(path)), std::nullopt};
  if (out.doc.raw_connection)
    out.repair = repair_connection(out.doc.model, *out.doc.raw_connection);
  return out;
}

int cmd_check(const CommonOpts& opts) {
  const LoadedModel lm = load(opts.input);
  Json report = io::make_report(lm.doc);
  report["jacobi_ok"] = check_jacobi(lm.doc.model.algebra).empty();
  report["contact_volume"] = rational_string(
      contact_volume(lm.doc.model.algebra, lm.doc.model.alpha));
  bool ok = true;
  if (lm.doc.raw_connection) {
    const AxiomReport raw_axioms = verify_axioms(lm.doc.model, *lm.doc.raw_connection);
    report["axioms"] = io::axiom_report_json(raw_axioms);
    report["repair_ledger"] = io::ledger_json(lm.doc.model, lm.repair->ledger);
    report["axioms_after_repair"] =
        io::axiom_report_json(verify_axioms(lm.doc.model, lm.repair->table));
    ok = raw_axioms.all_pass();
  }
  report["pass"] = ok;
  emit_report(report, opts.report_path);
  return ok ? 0 : 1;
}

Json curvature_section(const ContactModel& model, const ConnectionTable& gamma) {
  const CurvatureTensor r = curvature(model, gamma);
  const auto reeb = reeb_curvature(model, r);
  const auto rt = is_ricci_type(rd_tensor_frame(model, r));
  Json out = Json::object();
  out["flat"] = r.is_zero();
  out["reeb_flat"] = reeb.zero;
  out["ricci_type"] = rt.ricci_type;
  out["ricci_type_residual_norm"] = io::decimal_string(rt.residual_norm);
  out["ricci_type_residual_rational"] = rational_string(rt.residual_norm);
  out["exact"] = true;
  if (rt.witness) {
    Json w = Json::array();
    for (auto i : *rt.witness) w.push_back(i + 1);
    out["ricci_type_witness"] = w;
  }
  return out;
}

int cmd_curvature(const CommonOpts& opts) {
  const LoadedModel lm = load(opts.input);
  if (!lm.doc.raw_connection)
    throw Error(Errc::ParseError, "document has no connection table");
  Json report = io::make_report(lm.doc);
  report["repair_ledger"] = io::ledger_json(lm.doc.model, lm.repair->ledger);
  report["curvature"] = curvature_section(lm.doc.model, lm.repair->table);
  report["pass"] = true;
  emit_report(report, opts.report_path);
  return 0;
}

int cmd_classify(const CommonOpts& opts) {
  const LoadedModel lm = load(opts.input);
  if (!lm.doc.raw_connection)
    throw Error(Errc::ParseError, "document has no connection table");
  Json report = io::make_report(lm.doc);
  report["repair_ledger"] = io::ledger_json(lm.doc.model, lm.repair->ledger);
  report["curvature"] = curvature_section(lm.doc.model, lm.repair->table);
  report["classification"] =
      io::classification_json(classify(lm.doc.model, lm.repair->table));
  report["pass"] = true;
  emit_report(report, opts.report_path);
  return 0;
}

int cmd_scan(const CommonOpts& opts, int k, int samples, std::uint64_t seed, double t) {
  (void)t;
  const LoadedModel lm = load(opts.input);
  if (!lm.doc.raw_connection)
    throw Error(Errc::ParseError, "document has no connection table");
  const auto scan = twistor::normality_scan(lm.doc.model, lm.repair->table, k, samples, seed);
  Json report = io::make_report(lm.doc);
  report["repair_ledger"] = io::ledger_json(lm.doc.model, lm.repair->ledger);
  report["scan"] = io::scan_json(scan);
  report["pass"] = scan.agrees;
  emit_report(report, opts.report_path);
  return scan.agrees ? 0 : 1;
}

int cmd_solve(const CommonOpts& opts, const std::string& objective_name, int restarts,
              std::uint64_t seed, long max_den, double tol, bool progress) {
  const LoadedModel lm = load(opts.input);
  if (!lm.doc.raw_connection)
    throw Error(Errc::ParseError, "document has no connection table");
  solver::Objective objective;
  if (objective_name == "flat")
    objective.kind = solver::ObjectiveKind::Flat;
  else if (objective_name == "ricci")
    objective.kind = solver::ObjectiveKind::RicciType;
  else if (objective_name == "reeb")
    objective.kind = solver::ObjectiveKind::ReebFlat;
  else if (objective_name == "normal")
    objective.kind = solver::ObjectiveKind::Normal;
  else
    throw Error(Errc::BadParameter, "objective must be flat|ricci|reeb|normal");
  solver::SolverOptions options;
  options.restarts = restarts;
  options.seed = seed;
  options.max_denominator = max_den;
  options.tolerance = tol;

  if (progress)
    options.progress = [](int restart, int iteration, double residual) {
      Json event = Json::object();
      event["restart"] = restart;
      event["iteration"] = iteration;
      event["residual"] = residual;
      std::cout << event.dump() << "\n";
    };

  Json report = io::make_report(lm.doc);
  report["repair_ledger"] = io::ledger_json(lm.doc.model, lm.repair->ledger);
  try {
    const auto solution =
        solver::solve(lm.doc.model, lm.repair->table, objective, options);
    report["solver"] = io::solution_json(solution, 2 * lm.doc.model.n);
    report["pass"] = true;
    emit_report(report, opts.report_path);
    return 0;
  } catch (const solver::NoConvergence& e) {
    report["solver"] = io::solution_json(e.best(), 2 * lm.doc.model.n);
    report["pass"] = false;
    report["error"] = e.what();
    emit_report(report, opts.report_path);
    return 3;
  }
}

int cmd_fiber(const std::string& report_path, int n, int samples, std::uint64_t seed) {
  const auto diag = fiber::verify_siegel_model(n, samples, seed);
  Json report = Json::object();
  report["tool_version"] = io::TOOL_VERSION;
  report["siegel"] = io::siegel_json(diag);
  report["pass"] = diag.pass();
  emit_report(report, report_path);
  return diag.pass() ? 0 : 1;
}

int cmd_examples(const std::string& which, const std::string& s,
                 const std::vector<std::string>& params, const std::string& stage_name,
                 const std::string& emit) {
  std::map<std::string, Rational> parameters;
  if (!s.empty()) {
    const auto v = parse_rational(s);
    if (!v) throw Error(Errc::ParseError, "--s: cannot parse rational '" + s + "'");
    parameters["s"] = *v;
  }
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::ParseError, "--param expects name=value, got '" + kv + "'");
    const auto v = parse_rational(kv.substr(eq + 1));
    if (!v) throw Error(Errc::ParseError, "--param " + kv + ": bad rational");
    parameters[kv.substr(0, eq)] = *v;
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
    throw Error(Errc::BadParameter, "--which must be 1|2|3a|3b");
  io::Ex2Stage stage = io::Ex2Stage::Flat;
  if (stage_name == "prime")
    stage = io::Ex2Stage::Prime;
  else if (stage_name == "tilde")
    stage = io::Ex2Stage::Tilde;
  else if (stage_name != "flat")
    throw Error(Errc::BadParameter, "--stage must be prime|tilde|flat");
  const Json doc = io::example_document(id, parameters, stage);
  if (emit.empty())
    std::cout << io::dump(doc);
  else
    io::write_file(emit, doc);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Verification and search toolkit for left-invariant contact connections"};
  app.require_subcommand(1);

  CommonOpts check_opts, curv_opts, classify_opts, scan_opts, solve_opts;
  int scan_k = 1, scan_samples = 25;
  std::uint64_t scan_seed = 0;
  double scan_t = 1.0;
  std::string solve_objective = "flat";
  int solve_restarts = 20;
  std::uint64_t solve_seed = 0;
  long solve_max_den = 1000;
  double solve_tol = 1e-12;
  bool solve_progress = false;
  int fiber_n = 2, fiber_samples = 100;
  std::uint64_t fiber_seed = 0;
  std::string fiber_report;
  std::string ex_which = "2", ex_s, ex_stage = "flat", ex_emit;
  std::vector<std::string> ex_params;

  auto add_common = [](CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("file", opts.input, "model document (JSON)")->required();
    cmd->add_option("--report", opts.report_path, "write the report here instead of stdout");
  };

  auto* check = app.add_subcommand("check", "axioms, nabla omega, and the repair ledger");
  add_common(check, check_opts);
  auto* curv = app.add_subcommand("curvature", "curvature summary of the (repaired) table");
  add_common(curv, curv_opts);
  auto* classify_cmd = app.add_subcommand("classify", "full classification verdicts");
  add_common(classify_cmd, classify_opts);
  auto* scan = app.add_subcommand("scan", "Monte-Carlo normality scan over fibre points");
  add_common(scan, scan_opts);
  scan->add_option("--k", scan_k, "structure index (1 or 2)")->default_val(1);
  scan->add_option("--samples", scan_samples, "fibre samples")->default_val(25);
  scan->add_option("--seed", scan_seed, "sampling seed")->default_val(0);
  scan->add_option("--t", scan_t, "vertical metric scale")->default_val(1.0);
  auto* solve = app.add_subcommand("solve", "search deformations for a curvature target");
  add_common(solve, solve_opts);
  solve->add_option("--objective", solve_objective, "flat|ricci|reeb|normal")
      ->default_val("flat");
  solve->add_option("--restarts", solve_restarts)->default_val(20);
  solve->add_option("--seed", solve_seed)->default_val(0);
  solve->add_option("--max-den", solve_max_den, "rationalization denominator bound")
      ->default_val(1000);
  solve->add_option("--tol", solve_tol)->default_val(1e-12);
  solve->add_flag("--progress", solve_progress, "line-delimited JSON progress");
  auto* fiber_cmd = app.add_subcommand("fiber", "Siegel model diagnostics");
  fiber_cmd->add_option("--n", fiber_n)->default_val(2);
  fiber_cmd->add_option("--samples", fiber_samples)->default_val(100);
  fiber_cmd->add_option("--seed", fiber_seed)->default_val(0);
  fiber_cmd->add_option("--report", fiber_report);
  auto* examples = app.add_subcommand("examples", "emit a built-in example document");
  examples->add_option("--which", ex_which, "1|2|3a|3b")->required();
  examples->add_option("--s", ex_s, "value for the parameter s (rational)");
  examples->add_option("--param", ex_params, "name=value (rational), repeatable");
  examples->add_option("--stage", ex_stage, "for example 2: prime|tilde|flat");
  examples->add_option("--emit", ex_emit, "output path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(check_opts);
    if (curv->parsed()) return cmd_curvature(curv_opts);
    if (classify_cmd->parsed()) return cmd_classify(classify_opts);
    if (scan->parsed()) return cmd_scan(scan_opts, scan_k, scan_samples, scan_seed, scan_t);
    if (solve->parsed())
      return cmd_solve(solve_opts, solve_objective, solve_restarts, solve_seed,
                       solve_max_den, solve_tol, solve_progress);
    if (fiber_cmd->parsed()) return cmd_fiber(fiber_report, fiber_n, fiber_samples, fiber_seed);
    if (examples->parsed())
      return cmd_examples(ex_which, ex_s, ex_params, ex_stage, ex_emit);
  } catch (const solver::NoConvergence&) {
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case Errc::ParseError:
      case Errc::BadParameter:
      case Errc::DimensionMismatch:
        return 2;
      case Errc::NoConvergence:
        return 3;
      default:
        return 1;  // a mathematical property failed
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ctwist::cli

#include "ctwist/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

namespace ctwist::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(Errc::ParseError, path + ": " + what);
}

Rational need_rational(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a rational string \"p\" or \"p/q\"");
  const auto r = parse_rational(j.get<std::string>());
  if (!r) fail(path, "cannot parse rational '" + j.get<std::string>() + "'");
  return *r;
}

std::size_t name_index(const std::vector<std::string>& names, const std::string& name,
                       const std::string& path) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  fail(path, "unknown basis name '" + name + "'");
}

RatVec parse_combination(const Json& j, const std::vector<std::string>& names,
                         const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object of basis name -> rational string");
  RatVec v(names.size(), Rational(0));
  for (const auto& [key, val] : j.items())
    v[name_index(names, key, path + "." + key)] = need_rational(val, path + "." + key);
  return v;
}

Json combination_json(const RatVec& v, const std::vector<std::string>& names) {
  Json out = Json::object();
  for (std::size_t i = 0; i < names.size() && i < v.size(); ++i)
    if (v[i] != 0) out[names[i]] = rational_string(v[i]);
  return out;
}

}  // namespace

std::string decimal_string(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", to_double(r));
  return buf;
}

ParsedDocument parse_model_document(const Json& doc) {
  if (!doc.is_object()) fail("$", "document must be a JSON object");
  ParsedDocument out;
  out.name = doc.value("name", std::string("unnamed"));
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() ||
      doc["dimension"].get<long long>() <= 0)
    fail("dimension", "missing or not a positive integer");
  const std::size_t dim = doc["dimension"].get<std::size_t>();
  if (!doc.contains("basis") || !doc["basis"].is_array() || doc["basis"].size() != dim)
    fail("basis", "must list exactly `dimension` names");
  std::vector<std::string> names;
  for (const auto& b : doc["basis"]) {
    if (!b.is_string()) fail("basis", "names must be strings");
    names.push_back(b.get<std::string>());
  }

  LieAlgebra algebra = LieAlgebra::zero(dim);
  algebra.basis_names = names;
  if (doc.contains("brackets")) {
    if (!doc["brackets"].is_array()) fail("brackets", "must be an array");
    std::vector<bool> seen(dim * dim, false);
    for (std::size_t e = 0; e < doc["brackets"].size(); ++e) {
      const std::string path = "brackets[" + std::to_string(e) + "]";
      const Json& entry = doc["brackets"][e];
      if (!entry.is_object() || !entry.contains("x") || !entry.contains("y") ||
          !entry.contains("result"))
        fail(path, "entries need x, y, result");
      const std::size_t x = name_index(names, entry["x"].get<std::string>(), path + ".x");
      const std::size_t y = name_index(names, entry["y"].get<std::string>(), path + ".y");
      if (x == y) fail(path, "bracket of a vector with itself is zero; remove the entry");
      if (seen[x * dim + y] || seen[y * dim + x]) fail(path, "duplicate bracket pair");
      seen[x * dim + y] = true;
      const RatVec v = parse_combination(entry["result"], names, path + ".result");
      for (std::size_t k = 0; k < dim; ++k) algebra.set_bracket(x, y, k, v[k]);
    }
  }

  if (!doc.contains("alpha")) fail("alpha", "missing contact form");
  ContactForm alpha;
  alpha.coefficients = parse_combination(doc["alpha"], names, "alpha");

  std::map<std::string, Rational> params;
  if (doc.contains("parameters")) {
    if (!doc["parameters"].is_object()) fail("parameters", "must be an object");
    for (const auto& [key, val] : doc["parameters"].items())
      params[key] = need_rational(val, "parameters." + key);
  }

  out.model = build_model(algebra, alpha, params);

  if (doc.contains("connection")) {
    const Json& conn = doc["connection"];
    if (!conn.is_object() || !conn.contains("table"))
      fail("connection", "must be an object with frame and table");
    const std::string frame = conn.value("frame", std::string("adapted"));
    if (frame != "adapted" && frame != "original")
      fail("connection.frame", "must be \"adapted\" or \"original\"");
    out.connection_frame = frame;
    const std::size_t d = dim;
    ConnectionTable raw = ConnectionTable::zero(d);
    std::vector<bool> seen(d * d, false);
    for (std::size_t e = 0; e < conn["table"].size(); ++e) {
      const std::string path = "connection.table[" + std::to_string(e) + "]";
      const Json& entry = conn["table"][e];
      if (!entry.is_object() || !entry.contains("x") || !entry.contains("y") ||
          !entry.contains("result"))
        fail(path, "entries need x, y, result");
      const std::size_t x = name_index(names, entry["x"].get<std::string>(), path + ".x");
      const std::size_t y = name_index(names, entry["y"].get<std::string>(), path + ".y");
      if (seen[x * d + y]) fail(path, "duplicate table slot");
      seen[x * d + y] = true;
      const RatVec v = parse_combination(entry["result"], names, path + ".result");
      raw.set_entry(x, y, v);
      out.document_table.push_back({x, y, v});
    }
    if (frame == "adapted") {
      // The document basis itself must already be an adapted frame.
      if (out.model.frame.basis != linalg::identity(d))
        fail("connection.frame",
             "basis is not an adapted frame; provide the table with frame \"original\"");
    } else {
      // nabla_{A_i}A_j = sum_{p,q} B[p][i] B[q][j] nabla_{b_p} b_q, pushed to
      // frame coordinates.
      const RatMat& basis = out.model.frame.basis;
      ConnectionTable converted = ConnectionTable::zero(d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          RatVec acc(d, Rational(0));
          for (std::size_t p = 0; p < d; ++p) {
            if (basis[p][i] == 0) continue;
            for (std::size_t q = 0; q < d; ++q) {
              if (basis[q][j] == 0) continue;
              const Rational f = basis[p][i] * basis[q][j];
              for (std::size_t k = 0; k < d; ++k)
                if (raw.at(p, q, k) != 0) acc[k] += f * raw.at(p, q, k);
            }
          }
          converted.set_entry(i, j, linalg::mul(out.model.frame.inverse, acc));
        }
      raw = converted;
    }
    out.raw_connection = raw;
  }

  // Canonical echo.
  Json echo = Json::object();
  echo["name"] = out.name;
  echo["dimension"] = dim;
  echo["basis"] = names;
  Json brackets = Json::array();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      RatVec v(dim);
      bool nonzero = false;
      for (std::size_t k = 0; k < dim; ++k) {
        v[k] = algebra.at(i, j, k);
        nonzero = nonzero || v[k] != 0;
      }
      if (!nonzero) continue;
      Json entry = Json::object();
      entry["x"] = names[i];
      entry["y"] = names[j];
      entry["result"] = combination_json(v, names);
      brackets.push_back(entry);
    }
  echo["brackets"] = brackets;
  echo["alpha"] = combination_json(alpha.coefficients, names);
  Json jparams = Json::object();
  for (const auto& [key, val] : params) jparams[key] = rational_string(val);
  echo["parameters"] = jparams;
  if (out.raw_connection) {
    // Echo in the frame the document used, with canonical slot order.
    std::sort(out.document_table.begin(), out.document_table.end(),
              [](const auto& a, const auto& b) {
                return std::pair(std::get<0>(a), std::get<1>(a)) <
                       std::pair(std::get<0>(b), std::get<1>(b));
              });
    Json table = Json::array();
    for (const auto& [i, j, v] : out.document_table) {
      if (linalg::is_zero(v)) continue;
      Json entry = Json::object();
      entry["x"] = names[i];
      entry["y"] = names[j];
      entry["result"] = combination_json(v, names);
      table.push_back(entry);
    }
    Json conn = Json::object();
    conn["frame"] = out.connection_frame;
    conn["table"] = table;
    echo["connection"] = conn;
  }
  out.document = echo;
  return out;
}

ParsedDocument parse_model_document_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    fail("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_model_document(doc);
}

namespace {

Json bracket_entry(const std::string& x, const std::string& y,
                   std::initializer_list<std::pair<std::string, std::string>> result) {
  Json e = Json::object();
  e["x"] = x;
  e["y"] = y;
  Json r = Json::object();
  for (const auto& [k, v] : result) r[k] = v;
  e["result"] = r;
  return e;
}

Rational param_or(const std::map<std::string, Rational>& params, const std::string& key,
                  const Rational& fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

Json example_document(ExampleId which, const std::map<std::string, Rational>& parameters,
                      Ex2Stage stage) {
  Json doc = Json::object();
  if (which == ExampleId::Ex1) {
    doc["name"] = "so3-family";
    doc["dimension"] = 3;
    doc["basis"] = {"E1", "E2", "E3"};
    // Canonical order (x before y in the basis) so that emit -> parse -> emit
    // is byte-identical.
    doc["brackets"] = Json::array({
        bracket_entry("E1", "E2", {{"E3", "1"}}),
        bracket_entry("E1", "E3", {{"E2", "-1"}}),
        bracket_entry("E2", "E3", {{"E1", "1"}}),
    });
    doc["alpha"] = Json::object({{"E3", "-1"}});
    Json params = Json::object();
    const char* keys[] = {"a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"};
    std::map<std::string, Rational> family;
    for (const char* key : keys) {
      const Rational v = param_or(parameters, key, Rational(0));
      family[key] = v;
      params[key] = rational_string(v);
    }
    doc["parameters"] = params;
    Json table = Json::array();
    auto push = [&table](const std::string& x, const std::string& y, const RatVec& v,
                         const std::vector<std::string>& names) {
      Json r = Json::object();
      bool nonzero = false;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) {
          r[names[i]] = rational_string(v[i]);
          nonzero = true;
        }
      if (!nonzero) return;
      Json e = Json::object();
      e["x"] = x;
      e["y"] = y;
      e["result"] = r;
      table.push_back(e);
    };
    const std::vector<std::string> names = {"E1", "E2", "E3"};
    push("E1", "E1", {family["a1"], family["b1"], 0}, names);
    push("E1", "E2", {family["c1"], family["d1"], 0}, names);
    push("E2", "E1", {family["a2"], family["b2"], 0}, names);
    push("E2", "E2", {family["c2"], family["d2"], 0}, names);
    // nabla_{E3} = -nabla_xi since xi = -E3.
    push("E3", "E1", {0, 1, 0}, names);
    push("E3", "E2", {-1, 0, 0}, names);
    Json conn = Json::object();
    conn["frame"] = "original";
    conn["table"] = table;
    doc["connection"] = conn;
    return doc;
  }

  const Rational s = param_or(parameters, "s", Rational(1));
  if (s == 0) throw Error(Errc::BadParameter, "s must be nonzero");
  const std::string s1 = rational_string(s);

  if (which == ExampleId::Ex2) {
    doc["name"] = "solvable5-flat-search";
    doc["dimension"] = 5;
    doc["basis"] = {"A1", "A2", "A3", "A4", "A5"};
    doc["brackets"] = Json::array({
        bracket_entry("A1", "A2", {{"A5", s1}}),
        bracket_entry("A1", "A4", {{"A1", "1"}}),
        bracket_entry("A2", "A4", {{"A2", "-1"}}),
        bracket_entry("A3", "A4", {{"A5", s1}}),
    });
    doc["alpha"] = Json::object({{"A5", "1"}});
    doc["parameters"] = Json::object({{"s", s1}});
    Json table = Json::array();
    switch (stage) {
      case Ex2Stage::Prime:
        table = Json::array({
            bracket_entry("A1", "A4", {{"A1", "1/2"}}),
            bracket_entry("A2", "A4", {{"A2", "-1/2"}}),
            bracket_entry("A4", "A1", {{"A1", "-1/2"}}),
            bracket_entry("A4", "A2", {{"A2", "1/2"}}),
        });
        break;
      case Ex2Stage::Tilde:
        table = Json::array({
            bracket_entry("A1", "A2", {{"A3", "1/3"}}),
            bracket_entry("A1", "A4", {{"A1", "1/3"}}),
            bracket_entry("A2", "A1", {{"A3", "1/3"}}),
            bracket_entry("A2", "A4", {{"A2", "-1/3"}}),
            bracket_entry("A4", "A1", {{"A1", "-2/3"}}),
            bracket_entry("A4", "A2", {{"A2", "2/3"}}),
        });
        break;
      case Ex2Stage::Flat:
        table = Json::array({
            bracket_entry("A4", "A1", {{"A1", "-1"}}),
            bracket_entry("A4", "A2", {{"A2", "1"}}),
        });
        break;
    }
    Json conn = Json::object();
    conn["frame"] = "adapted";
    conn["table"] = table;
    doc["connection"] = conn;
    return doc;
  }

  // Examples 3A / 3B share the model.
  doc["name"] = which == ExampleId::Ex3A ? "solvable5-normal" : "solvable5-cr-only";
  doc["dimension"] = 5;
  doc["basis"] = {"A1", "A2", "A3", "A4", "A5"};
  const std::string inv_s = rational_string(Rational(1) / s);
  const std::string neg_inv_s = rational_string(-Rational(1) / s);
  doc["brackets"] = Json::array({
      bracket_entry("A1", "A2", {{"A4", inv_s}, {"A5", "1"}}),
      bracket_entry("A1", "A3", {{"A1", "-1"}}),
      bracket_entry("A1", "A4", {{"A1", "-1"}}),
      bracket_entry("A1", "A5", {{"A1", inv_s}}),
      bracket_entry("A2", "A4", {{"A2", "1"}}),
      bracket_entry("A2", "A5", {{"A2", neg_inv_s}}),
      bracket_entry("A3", "A4", {{"A4", "1"}, {"A5", s1}}),
  });
  doc["alpha"] = Json::object({{"A5", "1"}});
  doc["parameters"] = Json::object({{"s", s1}});

  Json table;
  if (which == ExampleId::Ex3A) {
    // Raw printed table; the (A3,A1) slot is the published slip.
    table = Json::array({
        bracket_entry("A1", "A2", {{"A4", rational_string(1 / (2 * s))}}),
        bracket_entry("A1", "A3", {{"A1", "-1/2"}}),
        bracket_entry("A2", "A1", {{"A4", rational_string(-1 / (2 * s))}}),
        bracket_entry("A2", "A3", {{"A2", "-1/2"}}),
        bracket_entry("A3", "A1", {{"A1", rational_string(1 / (2 * s))}}),
        bracket_entry("A3", "A2", {{"A2", "-1/2"}}),
        bracket_entry("A3", "A4", {{"A3", "-2"}}),
        bracket_entry("A4", "A1", {{"A1", "1"}}),
        bracket_entry("A4", "A2", {{"A2", "-1"}}),
        bracket_entry("A4", "A3", {{"A3", "-2"}, {"A4", "-1"}}),
        bracket_entry("A4", "A4", {{"A3", "8"}, {"A4", "2"}}),
        bracket_entry("A5", "A1", {{"A1", neg_inv_s}}),
        bracket_entry("A5", "A2", {{"A2", inv_s}}),
    });
  } else {
    // Raw printed table, read literally: the (A1,A2) slot collapses the two
    // printed terms onto A3, and the published symbol slips stay in place for
    // repair_connection to resolve.
    table = Json::array({
        bracket_entry("A1", "A2", {{"A3", rational_string(1 / (3 * s))}}),
        bracket_entry("A1", "A3", {{"A1", "-2/3"}}),
        bracket_entry("A1", "A4", {{"A1", "-1/3"}}),
        bracket_entry("A2", "A1",
                      {{"A3", rational_string(-1 / (3 * s))},
                       {"A4", rational_string(-1 / (3 * s))}}),
        bracket_entry("A2", "A3", {{"A2", "-1/2"}}),
        bracket_entry("A2", "A4", {{"A2", "1/3"}}),
        bracket_entry("A3", "A1", {{"A1", "1/3"}}),
        bracket_entry("A3", "A2", {{"A2", "-1/3"}}),
        bracket_entry("A3", "A3", {{"A3", "-1/3"}}),
        bracket_entry("A3", "A4", {{"A3", "1/3"}}),
        bracket_entry("A4", "A1", {{"A1", "2/3"}}),
        bracket_entry("A4", "A2", {{"A2", "-2/3"}}),
        bracket_entry("A4", "A3", {{"A4", "-2/3"}}),
        bracket_entry("A5", "A1", {{"A1", neg_inv_s}}),
        bracket_entry("A5", "A2", {{"A2", inv_s}}),
    });
  }
  Json conn = Json::object();
  conn["frame"] = "adapted";
  conn["table"] = table;
  doc["connection"] = conn;
  return doc;
}

DeformationTensor example2_deformation(const ContactModel& model) {
  DeformationTensor s = DeformationTensor::zero(2 * model.n);
  auto set = [&s](std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
    s.at(i, j, k) = v;
    s.at(j, i, k) = v;
  };
  set(0, 1, 2, rat(-1, 3));  // S(A1,A2) = -1/3 A3
  set(0, 3, 0, rat(-1, 3));  // S(A1,A4) = -1/3 A1
  set(1, 3, 1, rat(1, 3));   // S(A2,A4) =  1/3 A2
  return s;
}

namespace {

Json check_json(const AxiomCheck& check, const std::vector<std::string>& names) {
  Json out = Json::object();
  out["pass"] = check.pass;
  Json v = Json::array();
  for (const auto& violation : check.violations) {
    Json e = Json::object();
    Json idx = Json::array();
    for (auto i : violation.indices) idx.push_back(names[i]);
    e["indices"] = idx;
    e["residual"] = rational_string(violation.residual);
    v.push_back(e);
  }
  out["violations"] = v;
  return out;
}

std::vector<std::string> frame_names(const ContactModel& model) {
  // Adapted-frame labels: the basis names when the document basis is already
  // adapted, positional labels otherwise.
  std::vector<std::string> names;
  const bool identity = model.frame.basis == linalg::identity(model.dim());
  for (std::size_t i = 0; i < model.dim(); ++i) {
    if (identity)
      names.push_back(model.algebra.basis_names[i]);
    else if (i + 1 < model.dim())
      names.push_back("F" + std::to_string(i + 1));
    else
      names.push_back("xi");
  }
  return names;
}

}  // namespace

Json axiom_report_json(const AxiomReport& report) {
  // Index labels are positional here; callers wanting names use ledger_json.
  std::vector<std::string> names;
  for (std::size_t i = 0; i < 64; ++i) names.push_back(std::to_string(i + 1));
  Json out = Json::object();
  out["distribution"] = check_json(report.distribution, names);
  out["reeb_derivation"] = check_json(report.reeb_derivation, names);
  out["reeb_parallel"] = check_json(report.reeb_parallel, names);
  out["omega_parallel_d"] = check_json(report.omega_parallel_d, names);
  out["torsion"] = check_json(report.torsion, names);
  out["omega_parallel"] = check_json(report.omega_parallel, names);
  out["all_pass"] = report.all_pass();
  return out;
}

Json ledger_json(const ContactModel& model, const std::vector<RepairEntry>& ledger) {
  const auto names = frame_names(model);
  Json out = Json::array();
  for (const auto& entry : ledger) {
    Json e = Json::object();
    e["slot"] = Json::array({names[entry.i], names[entry.j]});
    e["kind"] = entry.kind;
    e["old"] = combination_json(entry.old_value, names);
    e["new"] = combination_json(entry.new_value, names);
    out.push_back(e);
  }
  return out;
}

Json classification_json(const ClassificationReport& report) {
  Json out = Json::object();
  out["flat"] = report.is_flat;
  out["reeb_flat"] = report.reeb_flat;
  out["ricci_type"] = report.ricci_type;
  out["ricci_type_residual_norm"] = decimal_string(report.ricci_type_residual_norm);
  out["ricci_type_residual_rational"] = rational_string(report.ricci_type_residual_norm);
  out["ricci_type_residual_exact"] = true;
  out["normal_phi1"] = report.normal_phi1;
  out["normal_phi2"] = report.normal_phi2;
  out["cr1_integrable"] = report.cr1_integrable;
  out["cr2_integrable"] = report.cr2_integrable;
  out["xi_h_killing"] = report.xi_h_killing;
  return out;
}

Json scan_json(const twistor::ScanReport& report) {
  Json out = Json::object();
  out["k"] = report.k;
  out["samples"] = report.samples;
  out["seed"] = report.seed;
  out["max_dd"] = report.max_dd;
  out["max_xi"] = report.max_xi;
  out["max_mixed"] = report.max_mixed;
  out["max_vv"] = report.max_vv;
  out["witness_dd"] = report.witness_dd;
  out["witness_xi"] = report.witness_xi;
  out["scan_normal"] = report.scan_normal;
  out["scan_cr_integrable"] = report.scan_cr_integrable;
  out["classify_normal"] = report.classify_normal;
  out["classify_cr_integrable"] = report.classify_cr_integrable;
  out["agrees"] = report.agrees;
  return out;
}

Json solution_json(const solver::Solution& solution, std::size_t two_n) {
  Json out = Json::object();
  out["residual_norm"] = solution.residual_norm;
  out["iterations"] = solution.iterations;
  out["restart_index"] = solution.restart_index;
  Json sigma = Json::array();
  for (int i = 0; i < solution.sigma.size(); ++i) sigma.push_back(solution.sigma(i));
  out["sigma"] = sigma;
  out["exact_zero"] = solution.exact_zero;
  if (solution.rationalized) {
    Json r = Json::array();
    for (const auto& ms : sym3_index(two_n)) {
      const Rational& v = solution.rationalized->at(ms[0], ms[1], ms[2]);
      if (v == 0) continue;
      Json e = Json::object();
      e["ijk"] = Json::array({ms[0] + 1, ms[1] + 1, ms[2] + 1});
      e["value"] = rational_string(v);
      r.push_back(e);
    }
    out["rationalized"] = r;
  }
  return out;
}

Json siegel_json(const fiber::SiegelDiagnostics& diag) {
  Json out = Json::object();
  out["n"] = diag.n;
  out["samples"] = diag.samples;
  out["j_at_ii_is_canonical"] = diag.j_at_ii_is_canonical;
  out["max_j_squared_error"] = diag.max_j_squared_error;
  out["max_compatibility_error"] = diag.max_compatibility_error;
  out["min_taming"] = diag.min_taming;
  out["max_tangency_error"] = diag.max_tangency_error;
  out["max_metric_error"] = diag.max_metric_error;
  out["max_holomorphy_error"] = diag.max_holomorphy_error;
  out["holomorphy_sign"] = diag.holomorphy_sign;
  out["pass"] = diag.pass();
  return out;
}

Json make_report(const ParsedDocument& doc) {
  Json out = Json::object();
  out["tool_version"] = TOOL_VERSION;
  Json conventions = Json::object();
  conventions["curvature_sign"] = "R(X,Y) = nabla_[X,Y] - [nabla_X, nabla_Y]";
  conventions["d_eta"] =
      "d eta(X,Y) = X(eta(Y)) - Y(eta(X)) - eta([X,Y]); twice the 1/2-normalized variant";
  conventions["phi2"] =
      "Phi_2 (vertical sign -1) is the never-normal structure; Phi_1 is classified by the "
      "curvature conditions";
  conventions["residual_norm"] = "max absolute component";
  out["conventions"] = conventions;
  out["model"] = doc.document;
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json doc;
  try {
    doc = Json::parse(ss.str());
  } catch (const std::exception& e) {
    throw Error(Errc::ParseError, path + ": invalid JSON: " + e.what());
  }
  return doc;
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out << dump(j);
}

}  // namespace ctwist::io

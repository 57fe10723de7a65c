#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

#include "ctwist/connection.hpp"
#include "ctwist/curvature.hpp"
#include "ctwist/solver.hpp"
#include "ctwist/twistor.hpp"

namespace ctwist::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* TOOL_VERSION = "0.1.0";

// A model document bundles the algebra table, the contact form, substituted
// parameters and optionally a raw connection table. Unlisted brackets are
// zero; antisymmetric completion is automatic; rational values are strings
// "p" or "p/q".
struct ParsedDocument {
  std::string name;
  ContactModel model;
  std::optional<ConnectionTable> raw_connection;  // adapted frame, unrepaired
  std::string connection_frame;                   // frame the document used
  // Document-frame table entries as given, for the canonical echo.
  std::vector<std::tuple<std::size_t, std::size_t, RatVec>> document_table;
  Json document;                                  // canonical echo
};

ParsedDocument parse_model_document(const Json& doc);
ParsedDocument parse_model_document_text(const std::string& text);

enum class ExampleId { Ex1, Ex2, Ex3A, Ex3B };

// Stage of the worked 5-dimensional solvable example to embed as the
// connection table: the half-bracket connection, its corrected contact
// connection, or the final flat one (default).
enum class Ex2Stage { Prime, Tilde, Flat };

// Built-in corpus. Parameters: "s" for Ex2/Ex3 (nonzero, default 1); the
// eight family coefficients a1,b1,c1,d1,a2,b2,c2,d2 for Ex1 (default 0).
Json example_document(ExampleId which, const std::map<std::string, Rational>& parameters = {},
                      Ex2Stage stage = Ex2Stage::Flat);

// The printed deformation taking the corrected Ex2 connection to the flat one.
DeformationTensor example2_deformation(const ContactModel& model);

// Residuals in reports carry both a 12-significant-digit decimal string and
// the exact rational, with an exactness flag.
std::string decimal_string(const Rational& r);

Json axiom_report_json(const AxiomReport& report);
Json ledger_json(const ContactModel& model, const std::vector<RepairEntry>& ledger);
Json classification_json(const ClassificationReport& report);
Json scan_json(const twistor::ScanReport& report);
Json solution_json(const solver::Solution& solution, std::size_t two_n);
Json siegel_json(const fiber::SiegelDiagnostics& diag);

// Full report envelope (tool version + model echo + conventions note).
Json make_report(const ParsedDocument& doc);

std::string dump(const Json& j);
Json load_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace ctwist::io

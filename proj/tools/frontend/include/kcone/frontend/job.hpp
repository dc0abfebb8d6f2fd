#pragma once

// Job descriptions, the document a run produces, and their JSON forms.

#include "kcone/assembler.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace kcone::frontend {

using Json = nlohmann::ordered_json;

struct VarietySpec {
  std::string type;        // plane_curve | veronese | fixture
  std::string polynomial;  // plane_curve
  int ambient_dim = 1;     // veronese
  int degree = 2;          // veronese
  std::string name;        // fixture

  friend bool operator==(const VarietySpec&, const VarietySpec&) = default;
};

struct CheckFlags {
  bool oracle = false;
  bool riemann_roch = true;
  bool torsion_exactness = true;

  friend bool operator==(const CheckFlags&, const CheckFlags&) = default;
};

struct JobConfig {
  VarietySpec variety;
  TransDeg trans_deg = TransDeg::symbolic_r();
  int n_min = -2;
  int n_max = 3;
  std::optional<int> t_max;
  CheckFlags checks;

  friend bool operator==(const JobConfig& a, const JobConfig& b) {
    return a.variety == b.variety && a.trans_deg.symbolic == b.trans_deg.symbolic &&
           (a.trans_deg.symbolic || a.trans_deg.value == b.trans_deg.value) &&
           a.n_min == b.n_min && a.n_max == b.n_max && a.t_max == b.t_max &&
           a.checks == b.checks;
  }
};

// Throws InvalidInput with the offending field on malformed configs.
JobConfig config_from_json(const Json& j);
Json config_to_json(const JobConfig& c);

// One emitted cell. Dimensions are already evaluated when r is numeric, so
// the document stores exactly what is serialized.
struct CellRecord {
  int weight = 0;
  std::optional<BinomialCombination> dim;  // empty for unavailable/not applicable
  std::vector<std::pair<int, BinomialCombination>> by_degree;
  std::string provenance;
  std::string status;
  std::string note;

  friend bool operator==(const CellRecord&, const CellRecord&) = default;
};

struct Section {
  int n = 0;
  std::vector<CellRecord> cells;
  BinomialCombination total;  // reduced K_n over computed and zero cells
  bool complete = true;       // false when some cell is unavailable or not applicable

  friend bool operator==(const Section&, const Section&) = default;
};

struct OutputDocument {
  JobConfig config;
  std::string description;
  int window = 0;
  std::string status;  // ok | check_failed | unstabilized | assumption_violated | invalid_input
  std::string error;
  std::vector<Section> sections;
  std::vector<CheckResult> checks;
  std::vector<OracleEntry> oracle;
  std::vector<std::string> warnings;
  std::string version;
  std::string gmp_release;
  std::optional<double> elapsed_ms;  // only with --timing; breaks byte-identity

  friend bool operator==(const OutputDocument&, const OutputDocument&) = default;
};

Json document_to_json(const OutputDocument& d);
OutputDocument document_from_json(const Json& j);

// Aligned text rendering of a document.
std::string render_table(const OutputDocument& d);

struct RunResult {
  OutputDocument document;
  int exit_code = 0;        // 0 ok, 1 failed check or unstabilized, 2 invalid input
  std::string diagnostic;   // for standard error
};

struct RunOverrides {
  std::optional<int> t_max;
  std::optional<TransDeg> trans_deg;
  bool force_oracle = false;
  std::optional<int> torsion_exponent_cap;
  bool timing = false;
};

// Builds the cone for the variety. Throws ParseError / InvalidInput.
ConeInput build_input(const VarietySpec& v);

RunResult run_job(const JobConfig& config, const RunOverrides& overrides = {});

std::string version_string();

}  // namespace kcone::frontend

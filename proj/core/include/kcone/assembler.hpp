#pragma once

// Assembly of the eigenspace dimension tables dim K_n^{(i)}(R) of a cone,
// one (n, weight) cell at a time, each cell tagged with the formula that
// produced it. All dimensions are kept symbolic in the transcendence degree r.

#include "kcone/binomial_dim.hpp"
#include "kcone/cohomology.hpp"
#include "kcone/forms.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kcone {

enum class Provenance {
  thm_main,
  k_m,
  k12,
  kni_b,
  kbis,
  kunneth_a,
  kunneth_b,
  kunneth_c,
  kunneth_d,
  k02_nabla0,
  hc_conic,
  no_omega,
};

enum class CellStatus { computed, zero_by_theorem, unavailable_hc, not_applicable };

std::string_view to_string(Provenance p);
std::string_view to_string(CellStatus s);
std::optional<Provenance> provenance_from_string(std::string_view s);
std::optional<CellStatus> status_from_string(std::string_view s);

struct WeightCell {
  int n = 0;
  int weight = 0;
  BinomialCombination dim;                         // total over all degrees
  std::map<int, BinomialCombination> by_degree;    // nonzero graded pieces only
  Provenance provenance = Provenance::thm_main;
  CellStatus status = CellStatus::computed;
  std::string note;

  friend bool operator==(const WeightCell&, const WeightCell&) = default;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct OracleEntry {
  int q = 0;
  int m = 0;
  std::size_t closed_form = 0;
  std::size_t oracle = 0;
  bool stabilized = false;
  int exponent = 0;

  friend bool operator==(const OracleEntry&, const OracleEntry&) = default;
};

struct KReport {
  std::string description;
  int window = 0;
  std::vector<WeightCell> cells;  // sorted by (n, weight)
  std::vector<CheckResult> checks;
  std::vector<OracleEntry> oracle;
  std::vector<std::string> warnings;

  bool all_checks_passed() const;
  const WeightCell* find(int n, int weight) const;
  // Sum over weights of the cells of K_n with status computed or zero_by_theorem.
  BinomialCombination reduced_total(int n) const;
};

// What the assembler works on: a validated curve model, or the skew-lines
// fixture for which only the differential side is available.
struct ConeInput {
  std::string description;
  std::shared_ptr<const GradedQuotient> quotient;
  std::optional<CurveModel> model;
  int curve_degree = 2;  // sizes the default window

  static ConeInput from_model(CurveModel model);
  // Q[x1,x2,y1,y2]/(x_i y_j).
  static ConeInput skew_lines();
};

struct AssemblerOptions {
  int window = 0;                // 0: 3 * degree + 3
  std::optional<int> torsion_exponent_cap;  // unset: the window
  bool oracle = false;
  bool riemann_roch = true;
  bool torsion_exactness = true;
};

// dim HC~_m^{(j)} of the conic ring over Q: 1 iff m = 2j - 2 (m >= 2).
std::size_t hc_conic(int m, int j);

// t-component of H^m_cdh(R, Omega^i): h^m(Omega^i(t)) + h^m(Omega^{i-1}(t)).
std::size_t cdh_dims(const CurveModel& c, int i, int m, int t);

class KAssembler {
 public:
  KAssembler(ConeInput input, AssemblerOptions options = {});

  const ConeInput& input() const { return input_; }
  int window() const { return window_; }
  const FormsComplex& forms() const { return *forms_; }

  std::vector<WeightCell> k_negative(int m) const;  // K_{-m}, m >= 1
  std::vector<WeightCell> k0() const;
  std::vector<WeightCell> k1() const;
  std::vector<WeightCell> k2() const;
  std::vector<WeightCell> k_higher(int n) const;    // n >= 2
  std::vector<WeightCell> cells(int n) const;

  // dim K_{-1}(R_Q)_t = h^1(O(t)), t = 1..window.
  std::map<int, long> k_minus1_by_degree() const;
  // dim K_1^{(2)}(R_Q)_t = h^0(Omega^1(t)) + h^0(O(t)) - dim (Omega^1_R)_t
  // + dim (tors Omega^1_R)_t, t = 1..window. Throws AssumptionViolation when
  // a value is negative.
  std::map<int, long> k12_by_degree() const;
  // dim (tors Omega^{m-1} / d tors Omega^{m-2})_t, t = 0..window.
  std::map<int, long> torsion_quotient_by_degree(int m) const;

  KReport report(int n_min, int n_max) const;

 private:
  bool is_curve() const { return input_.model && input_.model->is_curve(); }
  WeightCell not_applicable(int n, int weight, std::string note) const;
  void run_checks(KReport& rep, int n_max) const;

  ConeInput input_;
  AssemblerOptions options_;
  int window_;
  std::unique_ptr<FormsComplex> forms_;
  mutable std::map<int, std::map<int, long>> tq_cache_;
  mutable std::optional<std::map<int, long>> k12_cache_;
};

}  // namespace kcone

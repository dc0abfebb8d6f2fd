#include "kcone/assembler.hpp"

#include "kcone/errors.hpp"

#include <algorithm>
#include <array>

namespace kcone {

namespace {

constexpr std::array<std::pair<Provenance, std::string_view>, 12> kProvenanceNames{{
    {Provenance::thm_main, "thm:main"},
    {Provenance::k_m, "K-m"},
    {Provenance::k12, "K12"},
    {Provenance::kni_b, "Kni-b"},
    {Provenance::kbis, "Kbis"},
    {Provenance::kunneth_a, "Kunneth-a"},
    {Provenance::kunneth_b, "Kunneth-b"},
    {Provenance::kunneth_c, "Kunneth-c"},
    {Provenance::kunneth_d, "Kunneth-d"},
    {Provenance::k02_nabla0, "K02-nabla0"},
    {Provenance::hc_conic, "HC-conic"},
    {Provenance::no_omega, "no-omega"},
}};

constexpr std::array<std::pair<CellStatus, std::string_view>, 4> kStatusNames{{
    {CellStatus::computed, "computed"},
    {CellStatus::zero_by_theorem, "zero_by_theorem"},
    {CellStatus::unavailable_hc, "unavailable_hc"},
    {CellStatus::not_applicable, "not_applicable"},
}};

BinomialCombination total_of(const std::map<int, BinomialCombination>& by_degree) {
  BinomialCombination s;
  for (const auto& [t, v] : by_degree) s += v;
  return s;
}

// binom(r, p) * values, keeping only nonzero degrees.
void add_scaled(std::map<int, BinomialCombination>& into, const std::map<int, long>& values,
                long p) {
  for (const auto& [t, v] : values) {
    if (v == 0) continue;
    into[t] += BinomialCombination::term(p, v);
    if (into[t].is_zero()) into.erase(t);
  }
}

WeightCell make_cell(int n, int weight, std::map<int, BinomialCombination> by_degree,
                     Provenance prov, std::string note = {}) {
  WeightCell c;
  c.n = n;
  c.weight = weight;
  c.by_degree = std::move(by_degree);
  c.dim = total_of(c.by_degree);
  c.provenance = prov;
  c.status = CellStatus::computed;
  c.note = std::move(note);
  return c;
}

WeightCell zero_cell(int n, int weight, Provenance prov, std::string note) {
  WeightCell c;
  c.n = n;
  c.weight = weight;
  c.provenance = prov;
  c.status = CellStatus::zero_by_theorem;
  c.note = std::move(note);
  return c;
}

}  // namespace

std::string_view to_string(Provenance p) {
  for (const auto& [k, v] : kProvenanceNames) {
    if (k == p) return v;
  }
  return "?";
}

std::string_view to_string(CellStatus s) {
  for (const auto& [k, v] : kStatusNames) {
    if (k == s) return v;
  }
  return "?";
}

std::optional<Provenance> provenance_from_string(std::string_view s) {
  for (const auto& [k, v] : kProvenanceNames) {
    if (v == s) return k;
  }
  return std::nullopt;
}

std::optional<CellStatus> status_from_string(std::string_view s) {
  for (const auto& [k, v] : kStatusNames) {
    if (v == s) return k;
  }
  return std::nullopt;
}

bool KReport::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const WeightCell* KReport::find(int n, int weight) const {
  for (const auto& c : cells) {
    if (c.n == n && c.weight == weight) return &c;
  }
  return nullptr;
}

BinomialCombination KReport::reduced_total(int n) const {
  BinomialCombination s;
  for (const auto& c : cells) {
    if (c.n == n &&
        (c.status == CellStatus::computed || c.status == CellStatus::zero_by_theorem)) {
      s += c.dim;
    }
  }
  return s;
}

ConeInput ConeInput::from_model(CurveModel model) {
  ConeInput in;
  in.description = model.description;
  in.quotient = model.quotient;
  in.curve_degree = model.family == Family::plane_curve ? model.plane_degree : model.twist;
  in.model = std::move(model);
  return in;
}

ConeInput ConeInput::skew_lines() {
  auto ring = make_ring({"x1", "x2", "y1", "y2"});
  std::vector<HPoly> gens;
  for (std::size_t i : {0, 1}) {
    for (std::size_t j : {2, 3}) {
      Exponents e(4, 0);
      e[i] = 1;
      e[j] = 1;
      gens.push_back(HPoly::monomial(ring, e));
    }
  }
  ConeInput in;
  in.description = "fixture(skew_lines)";
  in.quotient = std::make_shared<GradedQuotient>(ring, std::move(gens));
  in.curve_degree = 2;
  return in;
}

std::size_t hc_conic(int m, int j) { return m >= 2 && m == 2 * j - 2 ? 1 : 0; }

std::size_t cdh_dims(const CurveModel& c, int i, int m, int t) {
  return h_forms(c, i, m, t) + h_forms(c, i - 1, m, t);
}

KAssembler::KAssembler(ConeInput input, AssemblerOptions options)
    : input_(std::move(input)), options_(options) {
  window_ = options_.window > 0 ? options_.window : 3 * input_.curve_degree + 3;
  const int cap = options_.torsion_exponent_cap.value_or(window_);
  forms_ = std::make_unique<FormsComplex>(*input_.quotient, cap);
}

WeightCell KAssembler::not_applicable(int n, int weight, std::string note) const {
  WeightCell c;
  c.n = n;
  c.weight = weight;
  c.status = CellStatus::not_applicable;
  c.provenance = Provenance::thm_main;
  c.note = std::move(note);
  return c;
}

std::map<int, long> KAssembler::k_minus1_by_degree() const {
  std::map<int, long> out;
  const auto& c = *input_.model;
  for (int t = 1; t <= window_; ++t) {
    out[t] = static_cast<long>(h_line_bundle(c, 1, t).dimension);
  }
  return out;
}

std::map<int, long> KAssembler::k12_by_degree() const {
  if (k12_cache_) return *k12_cache_;
  std::map<int, long> out;
  const auto& c = *input_.model;
  for (int t = 1; t <= window_; ++t) {
    const long v = static_cast<long>(h_twisted_forms(c, 0, t).dimension) +
                   static_cast<long>(h_line_bundle(c, 0, t).dimension) -
                   static_cast<long>(forms_->piece(1, t).dimension) +
                   static_cast<long>(forms_->torsion_piece(1, t).dimension);
    if (v < 0) {
      throw AssumptionViolation("negative cell: dim K_1^(2)_" + std::to_string(t) + " = " +
                                std::to_string(v) + " for " + input_.description +
                                " (projective normality or torsion bookkeeping fails)");
    }
    out[t] = v;
  }
  k12_cache_ = out;
  return out;
}

std::map<int, long> KAssembler::torsion_quotient_by_degree(int m) const {
  auto it = tq_cache_.find(m);
  if (it != tq_cache_.end()) return it->second;
  std::map<int, long> out;
  if (m >= 1) {
    for (int t = 0; t <= window_; ++t) {
      out[t] = static_cast<long>(forms_->torsion_quotient_dim(static_cast<std::size_t>(m - 1), t));
    }
  }
  tq_cache_[m] = out;
  return out;
}

std::vector<WeightCell> KAssembler::k_negative(int m) const {
  const int n = -m;
  if (!input_.model) return {not_applicable(n, 1, "fixture: no curve model")};
  const auto& c = *input_.model;
  const int dim_x = c.ambient_dim;
  if (m > dim_x) {
    return {zero_cell(n, 1, Provenance::thm_main, "K_{-m} = 0 for m > dim X")};
  }
  std::vector<WeightCell> cells;
  if (c.is_curve()) {
    std::map<int, BinomialCombination> by;
    add_scaled(by, k_minus1_by_degree(), 0);
    cells.push_back(make_cell(n, 1, std::move(by), Provenance::k_m,
                              "sum over t >= 1 of h^1(O(t)); no Omega term (no-omega)"));
    return cells;
  }
  // K_{-m}^{(i+1)} = sum_s binom(r, i - s) sum_t h^{m+i}(Omega^s_X(t)).
  for (int i = 0; i <= dim_x - m; ++i) {
    std::map<int, BinomialCombination> by;
    for (int s = 0; s <= std::min(i, dim_x); ++s) {
      std::map<int, long> vals;
      for (int t = 1; t <= window_; ++t) vals[t] = static_cast<long>(h_forms(c, s, m + i, t));
      add_scaled(by, vals, i - s);
    }
    cells.push_back(make_cell(n, i + 1, std::move(by), Provenance::thm_main, "Bott"));
  }
  return cells;
}

std::vector<WeightCell> KAssembler::k0() const {
  if (!input_.model) {
    return {not_applicable(0, 1, "fixture: no curve model"),
            not_applicable(0, 2, "fixture: no curve model")};
  }
  const auto& c = *input_.model;
  std::vector<WeightCell> cells;
  std::map<int, long> pic;
  for (int t = 1; t <= window_; ++t) {
    const long v = static_cast<long>(h_line_bundle(c, 0, t).dimension) -
                   static_cast<long>(input_.quotient->dim(t));
    if (v < 0) {
      throw AssumptionViolation("negative cell: Pic degree " + std::to_string(t) + " for " +
                                input_.description);
    }
    pic[t] = v;
  }
  std::map<int, BinomialCombination> by;
  add_scaled(by, pic, 0);
  cells.push_back(make_cell(0, 1, std::move(by), Provenance::thm_main,
                            "Pic: sum over t of h^0(O(t)) - dim R_t"));
  const Provenance prov = c.is_curve() ? Provenance::k02_nabla0 : Provenance::thm_main;
  for (int i = 1; i <= c.ambient_dim; ++i) {
    std::map<int, BinomialCombination> w;
    for (int s = 0; s <= std::min(i, c.ambient_dim); ++s) {
      std::map<int, long> vals;
      for (int t = 1; t <= window_; ++t) vals[t] = static_cast<long>(h_forms(c, s, i, t));
      add_scaled(w, vals, i - s);
    }
    cells.push_back(make_cell(0, i + 1, std::move(w), prov));
  }
  return cells;
}

std::vector<WeightCell> KAssembler::k1() const {
  std::vector<WeightCell> cells;
  cells.push_back(zero_cell(1, 1, Provenance::kbis, "nil(R) = 0 for reduced R"));
  if (!is_curve()) {
    const std::string why = input_.model ? "Veronese of dimension >= 2" : "fixture: no curve model";
    cells.push_back(not_applicable(1, 2, why));
    cells.push_back(not_applicable(1, 3, why));
    return cells;
  }
  std::map<int, BinomialCombination> w2;
  add_scaled(w2, k12_by_degree(), 0);
  cells.push_back(make_cell(1, 2, std::move(w2), Provenance::k12,
                            "h^0(Omega^1(t)) + h^0(O(t)) - dim (Omega^1_R)_t + dim (tors Omega^1_R)_t"));
  std::map<int, BinomialCombination> w3;
  add_scaled(w3, k_minus1_by_degree(), 2);
  cells.push_back(make_cell(1, 3, std::move(w3), Provenance::kunneth_d));
  return cells;
}

std::vector<WeightCell> KAssembler::k2() const { return k_higher(2); }

std::vector<WeightCell> KAssembler::k_higher(int n) const {
  if (n < 2) throw std::invalid_argument("k_higher needs n >= 2");
  std::vector<WeightCell> cells;
  const bool curve = is_curve();
  const bool fixture = !input_.model;
  const bool conic = curve && input_.model->is_conic();
  const std::string na_reason = fixture ? "fixture: no curve model" : "Veronese of dimension >= 2";

  for (int i = 2; i <= n + 2; ++i) {
    if (i < n) {
      if (conic) {
        // Kunneth-a with the conic HC constants: p runs over Omega^p_k factors.
        BinomialCombination dim;
        for (int p = 0; p <= i; ++p) {
          const int m = n - p - 1;
          if (m < 2) continue;
          dim += BinomialCombination::term(p, static_cast<std::int64_t>(hc_conic(m, i - p - 1)));
        }
        WeightCell c;
        c.n = n;
        c.weight = i;
        c.dim = dim;
        c.provenance = Provenance::hc_conic;
        c.status = CellStatus::computed;
        c.note = "Kunneth-a over the conic HC constants; not graded";
        cells.push_back(std::move(c));
      } else if (curve || fixture) {
        WeightCell c;
        c.n = n;
        c.weight = i;
        c.provenance = Provenance::kunneth_a;
        c.status = CellStatus::unavailable_hc;
        c.note = "needs HC~_" + std::to_string(n - 1) + "^(" + std::to_string(i - 1) +
                 ")(R), known only for the conic; see README, unavailable cells";
        cells.push_back(std::move(c));
      } else {
        cells.push_back(not_applicable(n, i, na_reason));
      }
    } else if (i == n) {
      if (!curve && !fixture) {
        cells.push_back(not_applicable(n, i, na_reason));
        continue;
      }
      std::map<int, BinomialCombination> by;
      for (int p = 0; p <= n - 2; ++p) add_scaled(by, torsion_quotient_by_degree(n - p), p);
      cells.push_back(make_cell(n, i, std::move(by),
                                n == 2 ? Provenance::kbis : Provenance::kunneth_b,
                                "tors Omega^{m-1} / d tors Omega^{m-2} (Kni-b), m = n - p"));
    } else if (i == n + 1) {
      if (!curve) {
        cells.push_back(not_applicable(n, i, na_reason));
        continue;
      }
      std::map<int, BinomialCombination> by;
      add_scaled(by, k12_by_degree(), n - 1);
      cells.push_back(make_cell(n, i, std::move(by), Provenance::kunneth_c,
                                "Q-part zero (K12): Omega^n_X = 0"));
    } else {
      if (!curve) {
        cells.push_back(not_applicable(n, i, na_reason));
        continue;
      }
      std::map<int, BinomialCombination> by;
      add_scaled(by, k_minus1_by_degree(), n + 1);
      cells.push_back(make_cell(n, i, std::move(by), Provenance::kunneth_d));
    }
  }
  return cells;
}

std::vector<WeightCell> KAssembler::cells(int n) const {
  if (n < 0) return k_negative(-n);
  if (n == 0) return k0();
  if (n == 1) return k1();
  return k_higher(n);
}

KReport KAssembler::report(int n_min, int n_max) const {
  if (n_min > n_max) throw InvalidInput("n_min must not exceed n_max");
  KReport rep;
  rep.description = input_.description;
  rep.window = window_;
  for (int n = n_min; n <= n_max; ++n) {
    auto cs = cells(n);
    std::sort(cs.begin(), cs.end(),
              [](const WeightCell& a, const WeightCell& b) { return a.weight < b.weight; });
    for (auto& c : cs) rep.cells.push_back(std::move(c));
  }
  if (!input_.model) {
    rep.warnings.push_back("fixture input: cohomological cells are not applicable");
  } else if (!input_.model->is_curve()) {
    rep.warnings.push_back("Veronese of dimension >= 2: only K_n for n <= 0 is evaluated");
  }
  run_checks(rep, n_max);
  return rep;
}

void KAssembler::run_checks(KReport& rep, int n_max) const {
  const auto& q = *input_.quotient;
  const std::size_t nv = q.num_vars();

  {
    CheckResult c{"nonnegativity", true, "all cells >= 0 for r = 0..6"};
    for (const auto& cell : rep.cells) {
      for (long r = 0; r <= 6; ++r) {
        if (cell.dim.evaluate(r) < 0) {
          c.passed = false;
          c.detail = "K_" + std::to_string(cell.n) + "^(" + std::to_string(cell.weight) +
                     ") negative at r = " + std::to_string(r);
        }
      }
    }
    rep.checks.push_back(c);
  }

  {
    CheckResult c{"trailing_zeros", true, "no graded piece in the last 3 degrees of the window"};
    for (const auto& cell : rep.cells) {
      if (!cell.by_degree.empty() && cell.by_degree.rbegin()->first > window_ - 3) {
        c.passed = false;
        c.detail = "K_" + std::to_string(cell.n) + "^(" + std::to_string(cell.weight) +
                   ") has a piece in degree " + std::to_string(cell.by_degree.rbegin()->first) +
                   "; raise t_max";
      }
    }
    rep.checks.push_back(c);
  }

  {
    CheckResult c{"d_squared_zero", true, ""};
    const std::size_t top = std::min<std::size_t>(nv >= 2 ? nv - 2 : 0, 2);
    for (std::size_t j = 0; j <= top && c.passed; ++j) {
      for (int t = 0; t <= window_; ++t) {
        if (!(forms_->de_rham_matrix(j + 1, t) * forms_->de_rham_matrix(j, t)).is_zero()) {
          c.passed = false;
          c.detail = "d o d != 0 on " + std::to_string(j) + "-forms of degree " + std::to_string(t);
          break;
        }
      }
    }
    if (c.passed) c.detail = "j = 0.." + std::to_string(top) + ", t = 0.." + std::to_string(window_);
    rep.checks.push_back(c);
  }

  if (options_.torsion_exactness) {
    CheckResult c{"torsion_exactness", true, ""};
    const std::size_t top = std::min<std::size_t>(nv, static_cast<std::size_t>(std::max(2, n_max)));
    const std::size_t jmax = std::min<std::size_t>(top, 3);
    for (std::size_t j = 1; j <= jmax && c.passed; ++j) {
      for (int t = 0; t <= window_; ++t) {
        const std::size_t ker = forms_->torsion_piece(j, t).dimension - forms_->torsion_d_rank(j, t);
        const std::size_t img = forms_->torsion_d_rank(j - 1, t);
        if (ker != img) {
          c.passed = false;
          c.detail = "tors de Rham complex not exact at " + std::to_string(j) +
                     "-forms, degree " + std::to_string(t);
          break;
        }
      }
    }
    if (c.passed) c.detail = "j = 1.." + std::to_string(jmax) + ", t = 0.." + std::to_string(window_);
    rep.checks.push_back(c);
  }

  {
    CheckResult c{"hilbert_identity", true, ""};
    int last = -1;
    for (int t = 0; t <= window_; ++t) {
      const std::size_t total = monomial_count(nv, t);
      if (total > 2500) break;
      const std::size_t ideal = rank(q.ideal_degree_piece(t));
      if (ideal + q.dim(t) != total) {
        c.passed = false;
        c.detail = "dim I_t + dim R_t != dim S_t at t = " + std::to_string(t);
        break;
      }
      last = t;
    }
    if (c.passed) c.detail = "t = 0.." + std::to_string(last);
    rep.checks.push_back(c);
  }

  if (!is_curve()) return;
  const auto& model = *input_.model;

  if (options_.riemann_roch) {
    CheckResult c{"riemann_roch", true, "m = -6.." + std::to_string(window_)};
    for (int m = -6; m <= window_; ++m) {
      if (!riemann_roch_check(model, m)) {
        c.passed = false;
        c.detail = "h^0 - h^1 != d m + 1 - g at m = " + std::to_string(m);
        break;
      }
    }
    rep.checks.push_back(c);
  }

  {
    CheckResult c{"serre_duality", true, "m = -6.." + std::to_string(window_)};
    for (int m = -6; m <= window_; ++m) {
      if (h_line_bundle(model, 1, m).dimension != h_twisted_forms(model, 0, -m).dimension) {
        c.passed = false;
        c.detail = "h^1(O(m)) != h^0(Omega^1(-m)) at m = " + std::to_string(m);
        break;
      }
    }
    rep.checks.push_back(c);
  }

  {
    const auto k12 = k12_by_degree();
    const long expected = model.degree + model.genus - 1;
    CheckResult c{"degree1_identity", k12.at(1) == expected,
                  "K_1^(2)_1 = " + std::to_string(k12.at(1)) + ", d + g - 1 = " +
                      std::to_string(expected)};
    rep.checks.push_back(c);
  }

  if (options_.oracle) {
    CheckResult c{"oracle", true, ""};
    for (int q_deg : {0, 1}) {
      for (int m = -6; m <= 8; ++m) {
        const auto closed = h_line_bundle(model, q_deg, m).dimension;
        const auto o = cech_scheduled(model, q_deg, m);
        rep.oracle.push_back({q_deg, m, closed, o.dimension, o.stabilized, o.exponent});
        if (!o.stabilized || o.dimension != closed) {
          c.passed = false;
          c.detail = "h^" + std::to_string(q_deg) + "(O(" + std::to_string(m) + ")): closed form " +
                     std::to_string(closed) + ", Čech " + std::to_string(o.dimension) +
                     (o.stabilized ? "" : " (not stabilized)");
        }
      }
    }
    if (c.passed) c.detail = std::to_string(rep.oracle.size()) + " values agree";
    rep.checks.push_back(c);
  }
}

}  // namespace kcone

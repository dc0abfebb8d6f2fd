#include "kcone/frontend/job.hpp"

#include "kcone/errors.hpp"

#include <gmp.h>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <set>
#include <sstream>

#ifndef KCONE_VERSION
#define KCONE_VERSION "0.0.0"
#endif

namespace kcone::frontend {

namespace {

constexpr const char* kUnavailableDoc = "README.md#unavailable-cells";

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw InvalidInput("config: " + field + ": " + why);
}

void only_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) bad(where + k, "unknown field");
  }
}

int get_int(const Json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) bad(where + key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < -1000000 || x > 1000000) bad(where + key, "out of range");
  return static_cast<int>(x);
}

bool get_bool(const Json& obj, const char* key, bool fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) bad(where + key, "expected true or false");
  return obj.at(key).get<bool>();
}

Json dim_to_json(const BinomialCombination& b, const TransDeg& r) {
  if (!r.symbolic) return b.evaluate(r.value);
  return Json{{"binom_coeffs", b.coeffs()}};
}

BinomialCombination dim_from_json(const Json& j) {
  if (j.is_number_integer()) return BinomialCombination::constant(j.get<std::int64_t>());
  if (j.is_object() && j.contains("binom_coeffs")) {
    return BinomialCombination(j.at("binom_coeffs").get<std::vector<std::int64_t>>());
  }
  throw InvalidInput("document: malformed dimension " + j.dump());
}

std::string dim_text(const std::optional<BinomialCombination>& b) {
  return b ? b->to_string() : "-";
}

}  // namespace

std::string version_string() { return KCONE_VERSION; }

JobConfig config_from_json(const Json& j) {
  if (!j.is_object()) bad("", "expected a JSON object");
  only_keys(j, "", {"variety", "trans_deg", "n_min", "n_max", "t_max", "checks"});
  JobConfig c;

  if (!j.contains("variety") || !j.at("variety").is_object()) bad("variety", "missing object");
  const auto& v = j.at("variety");
  if (!v.contains("type") || !v.at("type").is_string()) bad("variety.type", "missing string");
  c.variety.type = v.at("type").get<std::string>();
  if (c.variety.type == "plane_curve") {
    only_keys(v, "variety.", {"type", "polynomial"});
    if (!v.contains("polynomial") || !v.at("polynomial").is_string()) {
      bad("variety.polynomial", "missing string");
    }
    c.variety.polynomial = v.at("polynomial").get<std::string>();
  } else if (c.variety.type == "veronese") {
    only_keys(v, "variety.", {"type", "ambient_dim", "degree"});
    if (!v.contains("ambient_dim")) bad("variety.ambient_dim", "missing");
    if (!v.contains("degree")) bad("variety.degree", "missing");
    c.variety.ambient_dim = get_int(v, "ambient_dim", "variety.");
    c.variety.degree = get_int(v, "degree", "variety.");
    if (c.variety.ambient_dim < 1) bad("variety.ambient_dim", "must be >= 1");
    if (c.variety.degree < 1) bad("variety.degree", "must be >= 1");
  } else if (c.variety.type == "fixture") {
    only_keys(v, "variety.", {"type", "name"});
    if (!v.contains("name") || !v.at("name").is_string()) bad("variety.name", "missing string");
    c.variety.name = v.at("name").get<std::string>();
    if (c.variety.name != "skew_lines") bad("variety.name", "unknown fixture '" + c.variety.name + "'");
  } else {
    bad("variety.type", "expected plane_curve, veronese or fixture");
  }

  if (j.contains("trans_deg")) {
    const auto& r = j.at("trans_deg");
    if (r.is_string() && r.get<std::string>() == "symbolic") {
      c.trans_deg = TransDeg::symbolic_r();
    } else if (r.is_number_integer() && r.get<long long>() >= 0 && r.get<long long>() <= 1000) {
      c.trans_deg = TransDeg::numeric(static_cast<long>(r.get<long long>()));
    } else {
      bad("trans_deg", "expected \"symbolic\" or an integer in 0..1000");
    }
  }
  if (j.contains("n_min")) c.n_min = get_int(j, "n_min", "");
  if (j.contains("n_max")) c.n_max = get_int(j, "n_max", "");
  if (c.n_min > c.n_max) bad("n_min", "must not exceed n_max");
  if (c.n_max - c.n_min > 64) bad("n_max", "at most 65 values of n per job");
  if (j.contains("t_max") && !j.at("t_max").is_null()) c.t_max = get_int(j, "t_max", "");

  if (j.contains("checks")) {
    const auto& ch = j.at("checks");
    if (!ch.is_object()) bad("checks", "expected an object");
    only_keys(ch, "checks.", {"oracle", "riemann_roch", "torsion_exactness"});
    c.checks.oracle = get_bool(ch, "oracle", c.checks.oracle, "checks.");
    c.checks.riemann_roch = get_bool(ch, "riemann_roch", c.checks.riemann_roch, "checks.");
    c.checks.torsion_exactness =
        get_bool(ch, "torsion_exactness", c.checks.torsion_exactness, "checks.");
  }
  return c;
}

Json config_to_json(const JobConfig& c) {
  Json v;
  v["type"] = c.variety.type;
  if (c.variety.type == "plane_curve") {
    v["polynomial"] = c.variety.polynomial;
  } else if (c.variety.type == "veronese") {
    v["ambient_dim"] = c.variety.ambient_dim;
    v["degree"] = c.variety.degree;
  } else {
    v["name"] = c.variety.name;
  }
  Json j;
  j["variety"] = v;
  if (c.trans_deg.symbolic) {
    j["trans_deg"] = "symbolic";
  } else {
    j["trans_deg"] = c.trans_deg.value;
  }
  j["n_min"] = c.n_min;
  j["n_max"] = c.n_max;
  if (c.t_max) j["t_max"] = *c.t_max;
  j["checks"] = {{"oracle", c.checks.oracle},
                 {"riemann_roch", c.checks.riemann_roch},
                 {"torsion_exactness", c.checks.torsion_exactness}};
  return j;
}

Json document_to_json(const OutputDocument& d) {
  const TransDeg& r = d.config.trans_deg;
  Json j;
  j["config"] = config_to_json(d.config);
  j["versions"] = {{"kcone", d.version}, {"gmp", d.gmp_release}};
  j["status"] = d.status;
  if (!d.error.empty()) j["error"] = d.error;
  j["description"] = d.description;
  j["window"] = d.window;
  Json sections = Json::array();
  for (const auto& s : d.sections) {
    Json cells = Json::array();
    for (const auto& c : s.cells) {
      Json cj;
      cj["weight"] = c.weight;
      cj["dim"] = c.dim ? dim_to_json(*c.dim, r) : Json(nullptr);
      Json deg = Json::array();
      for (const auto& [t, b] : c.by_degree) deg.push_back({{"t", t}, {"dim", dim_to_json(b, r)}});
      cj["by_degree"] = deg;
      cj["provenance"] = c.provenance;
      cj["status"] = c.status;
      if (c.status == "unavailable_hc") cj["doc"] = kUnavailableDoc;
      if (!c.note.empty()) cj["note"] = c.note;
      cells.push_back(cj);
    }
    sections.push_back({{"n", s.n},
                        {"cells", cells},
                        {"total", dim_to_json(s.total, r)},
                        {"complete", s.complete}});
  }
  j["sections"] = sections;
  Json checks = Json::array();
  for (const auto& c : d.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["checks"] = checks;
  Json oracle = Json::array();
  for (const auto& o : d.oracle) {
    oracle.push_back({{"q", o.q},
                      {"m", o.m},
                      {"closed_form", o.closed_form},
                      {"oracle", o.oracle},
                      {"agree", o.closed_form == o.oracle},
                      {"stabilized", o.stabilized},
                      {"exponent", o.exponent}});
  }
  j["oracle"] = oracle;
  j["warnings"] = d.warnings;
  if (d.elapsed_ms) j["timing"] = {{"elapsed_ms", *d.elapsed_ms}};
  return j;
}

OutputDocument document_from_json(const Json& j) {
  OutputDocument d;
  d.config = config_from_json(j.at("config"));
  d.version = j.at("versions").at("kcone").get<std::string>();
  d.gmp_release = j.at("versions").at("gmp").get<std::string>();
  d.status = j.at("status").get<std::string>();
  if (j.contains("error")) d.error = j.at("error").get<std::string>();
  d.description = j.at("description").get<std::string>();
  d.window = j.at("window").get<int>();
  for (const auto& sj : j.at("sections")) {
    Section s;
    s.n = sj.at("n").get<int>();
    s.total = dim_from_json(sj.at("total"));
    s.complete = sj.at("complete").get<bool>();
    for (const auto& cj : sj.at("cells")) {
      CellRecord c;
      c.weight = cj.at("weight").get<int>();
      if (!cj.at("dim").is_null()) c.dim = dim_from_json(cj.at("dim"));
      for (const auto& e : cj.at("by_degree")) {
        c.by_degree.emplace_back(e.at("t").get<int>(), dim_from_json(e.at("dim")));
      }
      c.provenance = cj.at("provenance").get<std::string>();
      if (!provenance_from_string(c.provenance)) {
        throw InvalidInput("document: unknown provenance '" + c.provenance + "'");
      }
      c.status = cj.at("status").get<std::string>();
      if (!status_from_string(c.status)) {
        throw InvalidInput("document: unknown status '" + c.status + "'");
      }
      if (cj.contains("note")) c.note = cj.at("note").get<std::string>();
      s.cells.push_back(std::move(c));
    }
    d.sections.push_back(std::move(s));
  }
  for (const auto& c : j.at("checks")) {
    d.checks.push_back(
        {c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("detail").get<std::string>()});
  }
  for (const auto& o : j.at("oracle")) {
    OracleEntry e;
    e.q = o.at("q").get<int>();
    e.m = o.at("m").get<int>();
    e.closed_form = o.at("closed_form").get<std::size_t>();
    e.oracle = o.at("oracle").get<std::size_t>();
    e.stabilized = o.at("stabilized").get<bool>();
    e.exponent = o.at("exponent").get<int>();
    d.oracle.push_back(e);
  }
  d.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (j.contains("timing")) d.elapsed_ms = j.at("timing").at("elapsed_ms").get<double>();
  return d;
}

std::string render_table(const OutputDocument& d) {
  std::ostringstream out;
  out << d.description << "  (window t <= " << d.window << ", r = "
      << (d.config.trans_deg.symbolic ? std::string("symbolic")
                                      : std::to_string(d.config.trans_deg.value))
      << ")\n";
  out << "status: " << d.status << "\n";
  if (!d.error.empty()) out << "error: " << d.error << "\n";
  for (const auto& s : d.sections) {
    out << "\nK_" << s.n << "   total " << s.total.to_string()
        << (s.complete ? "" : "  (incomplete)") << "\n";
    out << "  " << std::left << std::setw(8) << "weight" << std::setw(36) << "dim"
        << std::setw(12) << "provenance" << "status\n";
    for (const auto& c : s.cells) {
      out << "  " << std::left << std::setw(8) << c.weight << std::setw(36) << dim_text(c.dim)
          << std::setw(12) << c.provenance << c.status;
      if (!c.note.empty()) out << "  [" << c.note << "]";
      out << "\n";
      if (!c.by_degree.empty() && !(c.by_degree.size() == 1 && c.by_degree[0].first == 0)) {
        out << "          by degree:";
        for (const auto& [t, b] : c.by_degree) out << " t=" << t << ":" << b.to_string();
        out << "\n";
      }
    }
  }
  if (!d.checks.empty()) {
    out << "\nchecks\n";
    for (const auto& c : d.checks) {
      out << "  " << (c.passed ? "pass " : "FAIL ") << std::left << std::setw(20) << c.name
          << c.detail << "\n";
    }
  }
  if (!d.oracle.empty()) {
    out << "\noracle   q    m  closed  cech  E\n";
    for (const auto& o : d.oracle) {
      out << "  " << (o.closed_form == o.oracle && o.stabilized ? "ok   " : "DIFF ") << std::right
          << std::setw(4) << o.q << std::setw(5) << o.m << std::setw(8) << o.closed_form
          << std::setw(6) << o.oracle << std::setw(3) << o.exponent << "\n";
    }
  }
  for (const auto& w : d.warnings) out << "warning: " << w << "\n";
  if (d.elapsed_ms) out << "elapsed: " << *d.elapsed_ms << " ms\n";
  return out.str();
}

ConeInput build_input(const VarietySpec& v) {
  if (v.type == "plane_curve") return ConeInput::from_model(CurveModel::plane_curve(v.polynomial));
  if (v.type == "veronese") {
    return ConeInput::from_model(CurveModel::veronese(v.ambient_dim, v.degree));
  }
  if (v.type == "fixture" && v.name == "skew_lines") return ConeInput::skew_lines();
  throw InvalidInput("unsupported variety type '" + v.type + "'");
}

RunResult run_job(const JobConfig& config, const RunOverrides& overrides) {
  const auto start = std::chrono::steady_clock::now();
  RunResult res;
  OutputDocument& doc = res.document;
  doc.config = config;
  if (overrides.t_max) doc.config.t_max = overrides.t_max;
  if (overrides.trans_deg) doc.config.trans_deg = *overrides.trans_deg;
  if (overrides.force_oracle) doc.config.checks.oracle = true;
  doc.version = version_string();
  doc.gmp_release = gmp_version;
  const JobConfig& c = doc.config;

  auto fail = [&](int code, const std::string& status, const std::string& message) {
    res.exit_code = code;
    doc.status = status;
    doc.error = message;
    res.diagnostic = "kcone: " + message;
  };

  try {
    ConeInput input = build_input(c.variety);
    doc.description = input.description;
    if (c.t_max && *c.t_max < input.curve_degree) {
      throw InvalidInput("config: t_max: must be at least the degree " +
                         std::to_string(input.curve_degree));
    }
    AssemblerOptions opts;
    opts.window = c.t_max.value_or(0);
    opts.torsion_exponent_cap = overrides.torsion_exponent_cap;
    opts.oracle = c.checks.oracle;
    opts.riemann_roch = c.checks.riemann_roch;
    opts.torsion_exactness = c.checks.torsion_exactness;
    KAssembler assembler(std::move(input), opts);
    const KReport rep = assembler.report(c.n_min, c.n_max);
    doc.window = rep.window;

    auto fix = [&](const BinomialCombination& b, int n, int w) {
      if (c.trans_deg.symbolic) return b;
      const auto x = b.evaluate(c.trans_deg.value);
      if (x < 0) {
        throw AssumptionViolation("K_" + std::to_string(n) + "^(" + std::to_string(w) +
                                  ") is negative at r = " + std::to_string(c.trans_deg.value));
      }
      return BinomialCombination::constant(x);
    };
    for (int n = c.n_min; n <= c.n_max; ++n) {
      Section s;
      s.n = n;
      for (const auto& cell : rep.cells) {
        if (cell.n != n) continue;
        CellRecord rec;
        rec.weight = cell.weight;
        const bool has_dim =
            cell.status == CellStatus::computed || cell.status == CellStatus::zero_by_theorem;
        if (has_dim) {
          rec.dim = fix(cell.dim, n, cell.weight);
          for (const auto& [t, b] : cell.by_degree) {
            rec.by_degree.emplace_back(t, fix(b, n, cell.weight));
          }
        } else {
          s.complete = false;
        }
        rec.provenance = std::string(to_string(cell.provenance));
        rec.status = std::string(to_string(cell.status));
        rec.note = cell.note;
        s.cells.push_back(std::move(rec));
      }
      s.total = fix(rep.reduced_total(n), n, 0);
      doc.sections.push_back(std::move(s));
    }
    doc.checks = rep.checks;
    doc.oracle = rep.oracle;
    doc.warnings = rep.warnings;
    if (rep.all_checks_passed()) {
      doc.status = "ok";
    } else {
      std::string failed;
      for (const auto& ch : rep.checks) {
        if (!ch.passed) failed += (failed.empty() ? "" : ", ") + ch.name;
      }
      fail(1, "check_failed", "checks failed: " + failed);
    }
  } catch (const ParseError& e) {
    fail(2, "invalid_input", e.what());
  } catch (const InvalidInput& e) {
    fail(2, "invalid_input", e.what());
  } catch (const StabilizationError& e) {
    fail(1, "unstabilized", std::string(e.what()) + "; raise t_max (or --t-max)");
  } catch (const AssumptionViolation& e) {
    fail(1, "assumption_violated", e.what());
  } catch (const std::logic_error& e) {
    fail(1, "assumption_violated", e.what());
  }
  if (overrides.timing) {
    doc.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               start)
                         .count();
  }
  return res;
}

}  // namespace kcone::frontend

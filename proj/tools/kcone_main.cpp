// kcone: K-theory dimension tables of cones over smooth projective curves.

#include "kcone/errors.hpp"
#include "kcone/frontend/job.hpp"
#include "kcone/frontend/selftest.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

using namespace kcone;
using namespace kcone::frontend;

namespace {

struct ComputeArgs {
  std::string config = "-";
  std::string format = "json";
  std::optional<int> t_max;
  std::string r;
  bool timing = false;
};

void add_compute_options(CLI::App* cmd, ComputeArgs& a) {
  cmd->add_option("--config", a.config, "job description (JSON); '-' reads standard input");
  cmd->add_option("--format", a.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--t-max", a.t_max, "summation window for graded pieces");
  cmd->add_option("--r", a.r, "transcendence degree: N or symbolic");
  cmd->add_flag("--timing", a.timing, "add wall-clock time to the output (not reproducible)");
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

int run_compute(const ComputeArgs& a, bool force_oracle) {
  JobConfig config;
  RunOverrides ov;
  try {
    std::string text;
    if (a.config == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream f(a.config);
      if (!f) throw InvalidInput("cannot read config file " + a.config);
      text.assign(std::istreambuf_iterator<char>(f), {});
    }
    const Json j = Json::parse(text);
    config = config_from_json(j);
    if (!a.r.empty()) {
      if (a.r == "symbolic") {
        ov.trans_deg = TransDeg::symbolic_r();
      } else {
        std::size_t used = 0;
        const long r = std::stol(a.r, &used);
        if (used != a.r.size() || r < 0) throw InvalidInput("--r: expected N >= 0 or symbolic");
        ov.trans_deg = TransDeg::numeric(r);
      }
    }
  } catch (const Json::parse_error& e) {
    std::cerr << "kcone: config is not valid JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "kcone: " << e.what() << "\n";
    return 2;
  }
  ov.t_max = a.t_max;
  ov.force_oracle = force_oracle;
  ov.timing = a.timing;
  const RunResult res = run_job(config, ov);
  if (a.format == "table") {
    std::cout << render_table(res.document);
  } else {
    std::cout << document_to_json(res.document).dump(2) << "\n";
  }
  if (!res.diagnostic.empty()) std::cerr << res.diagnostic << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-theory dimension tables of cones over smooth projective curves", "kcone"};
  app.set_version_flag("--version", "kcone " + version_string());
  app.require_subcommand(0, 1);

  ComputeArgs compute_args;
  auto* compute = app.add_subcommand("compute", "assemble the K-theory table of a job (default)");
  add_compute_options(compute, compute_args);

  ComputeArgs oracle_args;
  auto* oracle =
      app.add_subcommand("oracle-check", "compute with the Čech oracle cross-check enabled");
  add_compute_options(oracle, oracle_args);

  std::string allow_red;
  std::string only;
  SelftestOptions st;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--allow-red", allow_red,
                       "comma list of criteria expected to fail; exit 0 iff exactly these fail");
  selftest->add_option("--only", only, "comma list of criteria to run");
  selftest->add_option("--mutate-adjunction", st.adjunction_offset,
                       "shift the plane-curve canonical twist (mutation check)");
  selftest->add_option("--torsion-cap", st.torsion_exponent_cap,
                       "cap on the torsion exponent (mutation check)");

  // No subcommand means compute.
  std::vector<std::string> args(argv + 1, argv + argc);
  const bool has_sub = !args.empty() && (args[0] == "compute" || args[0] == "oracle-check" ||
                                         args[0] == "selftest");
  const bool top_level_flag = !args.empty() && (args[0] == "--help" || args[0] == "-h" ||
                                                args[0] == "--version");
  if (!has_sub && !top_level_flag) args.insert(args.begin(), "compute");
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*oracle) return run_compute(oracle_args, true);
  if (*selftest) {
    std::set<int> red;
    try {
      red = parse_list(allow_red);
      st.only = parse_list(only);
    } catch (const std::exception&) {
      std::cerr << "kcone: criteria lists are comma-separated integers\n";
      return 2;
    }
    const auto results = run_selftest(st, &std::cout);
    std::set<int> failed;
    for (const auto& r : results) {
      if (!r.passed) failed.insert(r.id);
    }
    std::set<int> expected;
    for (const auto& r : results) {
      if (red.count(r.id)) expected.insert(r.id);
    }
    std::cout << "summary: " << results.size() - failed.size() << " passed, " << failed.size()
              << " failed";
    if (!red.empty()) {
      std::cout << " (known red:";
      for (int id : red) std::cout << " " << id;
      std::cout << ")";
    }
    std::cout << "\n";
    if (failed == expected) return 0;
    for (int id : failed) {
      if (!red.count(id)) std::cerr << "kcone: criterion " << id << " failed\n";
    }
    for (int id : expected) {
      if (!failed.count(id)) {
        std::cerr << "kcone: criterion " << id << " is listed as known red but passed\n";
      }
    }
    return 1;
  }
  return run_compute(compute_args, false);
}

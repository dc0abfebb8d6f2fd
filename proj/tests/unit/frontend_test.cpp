#include "kcone/errors.hpp"
#include "kcone/frontend/job.hpp"

#include <gtest/gtest.h>

using namespace kcone;
using namespace kcone::frontend;

namespace {

JobConfig conic_job() {
  return config_from_json(Json::parse(R"({
    "variety": {"type": "plane_curve", "polynomial": "z^2-x*y"},
    "trans_deg": "symbolic", "n_min": -2, "n_max": 6})"));
}

const Section* section(const OutputDocument& d, int n) {
  for (const auto& s : d.sections) {
    if (s.n == n) return &s;
  }
  return nullptr;
}

}  // namespace

TEST(Config, ParsesAllVarietyKinds) {
  const JobConfig a = conic_job();
  EXPECT_EQ(a.variety.type, "plane_curve");
  EXPECT_TRUE(a.trans_deg.symbolic);
  EXPECT_FALSE(a.t_max.has_value());

  const JobConfig b = config_from_json(Json::parse(R"({
    "variety": {"type": "veronese", "ambient_dim": 1, "degree": 3},
    "trans_deg": 2, "n_min": 0, "n_max": 1, "t_max": 8,
    "checks": {"oracle": true, "riemann_roch": false}})"));
  EXPECT_EQ(b.variety.degree, 3);
  EXPECT_EQ(b.trans_deg.value, 2);
  EXPECT_EQ(b.t_max, 8);
  EXPECT_TRUE(b.checks.oracle);
  EXPECT_FALSE(b.checks.riemann_roch);
  EXPECT_TRUE(b.checks.torsion_exactness);

  const JobConfig c = config_from_json(Json::parse(R"({"variety": {"type": "fixture", "name": "skew_lines"}})"));
  EXPECT_EQ(c.variety.name, "skew_lines");
}

TEST(Config, RejectsMalformedJobs) {
  for (const char* text : {
           R"([])",
           R"({})",
           R"({"variety": {"type": "torus"}})",
           R"({"variety": {"type": "plane_curve"}})",
           R"({"variety": {"type": "veronese", "ambient_dim": 0, "degree": 2}})",
           R"({"variety": {"type": "fixture", "name": "twisted_cubic"}})",
           R"({"variety": {"type": "plane_curve", "polynomial": "z^2-x*y"}, "n_min": 3, "n_max": 1})",
           R"({"variety": {"type": "plane_curve", "polynomial": "z^2-x*y"}, "trans_deg": "r"})",
           R"({"variety": {"type": "plane_curve", "polynomial": "z^2-x*y"}, "trans_deg": -1})",
           R"({"variety": {"type": "plane_curve", "polynomial": "z^2-x*y"}, "colour": 1})",
           R"({"variety": {"type": "plane_curve", "polynomial": "z^2-x*y"}, "checks": {"oracle": 1}})",
       }) {
    EXPECT_THROW(config_from_json(Json::parse(text)), InvalidInput) << text;
  }
}

TEST(Config, RoundTrip) {
  JobConfig c = conic_job();
  c.t_max = 12;
  c.checks.oracle = true;
  EXPECT_EQ(config_from_json(config_to_json(c)), c);
}

TEST(Run, ConicDocument) {
  const RunResult res = run_job(conic_job());
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_EQ(res.document.status, "ok");
  ASSERT_NE(section(res.document, 1), nullptr);
  EXPECT_EQ(section(res.document, 1)->total, BinomialCombination::constant(1));
  EXPECT_EQ(section(res.document, 2)->total, BinomialCombination::term(1, 1));
  EXPECT_TRUE(section(res.document, 6)->complete);
  const Json j = document_to_json(res.document);
  EXPECT_EQ(j["sections"][4]["total"], Json::parse(R"({"binom_coeffs": [0, 1]})"));
  for (const auto& s : j["sections"]) {
    for (const auto& c : s["cells"]) {
      EXPECT_TRUE(provenance_from_string(c["provenance"].get<std::string>()).has_value());
    }
  }
}

TEST(Run, NumericTransDegreeEvaluatesBeforeOutput) {
  JobConfig c = conic_job();
  c.trans_deg = TransDeg::numeric(3);
  const RunResult res = run_job(c);
  ASSERT_EQ(res.exit_code, 0);
  const Json j = document_to_json(res.document);
  // K~_6 = binom(3,5) + binom(3,3) + binom(3,1) = 4
  EXPECT_EQ(j["sections"][8]["n"], 6);
  EXPECT_EQ(j["sections"][8]["total"], 4);
  EXPECT_EQ(document_from_json(j), res.document);
}

TEST(Run, UnavailableCellsCarryADocPointer) {
  JobConfig c = conic_job();
  c.variety.polynomial = "x^3+y^3+z^3";
  c.n_min = 3;
  c.n_max = 3;
  const RunResult res = run_job(c);
  ASSERT_EQ(res.exit_code, 0);
  EXPECT_FALSE(res.document.sections[0].complete);
  const Json j = document_to_json(res.document);
  const Json& cell = j["sections"][0]["cells"][0];
  EXPECT_EQ(cell["weight"], 2);
  EXPECT_EQ(cell["status"], "unavailable_hc");
  EXPECT_TRUE(cell["dim"].is_null());
  EXPECT_EQ(cell["doc"], "README.md#unavailable-cells");
  EXPECT_EQ(document_from_json(j), res.document);
}

TEST(Run, ExitCodes) {
  JobConfig c = conic_job();
  c.variety.polynomial = "x^2+x";
  RunResult res = run_job(c);
  EXPECT_EQ(res.exit_code, 2);
  EXPECT_NE(res.diagnostic.find("homogeneous"), std::string::npos);

  c.variety.polynomial = "x^3-y^2*z";
  res = run_job(c);
  EXPECT_EQ(res.exit_code, 2);
  EXPECT_NE(res.diagnostic.find("singular"), std::string::npos);

  c.variety.polynomial = "x^2+y^2+";
  res = run_job(c);
  EXPECT_EQ(res.exit_code, 2);
  EXPECT_NE(res.diagnostic.find("position"), std::string::npos);

  c = conic_job();
  c.t_max = 1;
  EXPECT_EQ(run_job(c).exit_code, 2);

  RunOverrides ov;
  ov.torsion_exponent_cap = 0;
  res = run_job(conic_job(), ov);
  EXPECT_EQ(res.exit_code, 1);
  EXPECT_EQ(res.document.status, "unstabilized");
  EXPECT_NE(res.diagnostic.find("stabilization not reached"), std::string::npos);
  EXPECT_NE(res.diagnostic.find("t_max"), std::string::npos);
}

TEST(Run, OracleSectionForTheFermatQuintic) {
  JobConfig c = conic_job();
  c.variety.polynomial = "x^5+y^5+z^5";
  c.n_min = -1;
  c.n_max = 1;
  c.checks.oracle = true;
  const RunResult res = run_job(c);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_EQ(res.document.oracle.size(), 30u);
  for (const auto& e : res.document.oracle) EXPECT_EQ(e.closed_form, e.oracle);
  EXPECT_EQ(section(res.document, -1)->total, BinomialCombination::constant(4));
}

TEST(Run, DeterministicAndRoundTrips) {
  const std::string a = document_to_json(run_job(conic_job()).document).dump(2);
  const std::string b = document_to_json(run_job(conic_job()).document).dump(2);
  EXPECT_EQ(a, b);
  const OutputDocument d = document_from_json(Json::parse(a));
  EXPECT_EQ(document_to_json(d).dump(2), a);
}

TEST(Run, SkewLinesAndVeroneseSurface) {
  JobConfig c = conic_job();
  c.variety = VarietySpec{"fixture", "", 1, 2, "skew_lines"};
  c.n_min = 0;
  c.n_max = 2;
  RunResult res = run_job(c);
  EXPECT_EQ(res.exit_code, 0) << res.diagnostic;
  EXPECT_EQ(document_from_json(document_to_json(res.document)), res.document);

  c.variety = VarietySpec{"veronese", "", 2, 2, ""};
  c.n_min = -3;
  res = run_job(c);
  EXPECT_EQ(res.exit_code, 0) << res.diagnostic;
  EXPECT_TRUE(section(res.document, -1)->total.is_zero());
}

TEST(Render, TableMentionsEverySection) {
  const RunResult res = run_job(conic_job());
  const std::string t = render_table(res.document);
  for (int n = -2; n <= 6; ++n) EXPECT_NE(t.find("K_" + std::to_string(n) + " "), std::string::npos);
  EXPECT_NE(t.find("HC-conic"), std::string::npos);
  EXPECT_NE(t.find("pass"), std::string::npos);
}

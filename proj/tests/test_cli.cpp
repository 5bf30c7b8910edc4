#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "lieflow/scenario.hpp"
#include "lieflow/trajectory.hpp"

using namespace lieflow;
using nlohmann::json;

TEST_CASE("config parsing: defaults, overrides, and echo round trip") {
  const ScenarioConfig cfg = ScenarioConfig::from_json_text(R"({
    "label": "demo",
    "family": "su",
    "n": 3,
    "seed": 7,
    "samples": 9,
    "checks": ["involutivity"]
  })");
  CHECK(cfg.label == "demo");
  CHECK(cfg.family == "su");
  CHECK(cfg.n == 3);
  CHECK(cfg.seed == 7);
  CHECK(cfg.samples == 9);
  CHECK(cfg.rank_tol == 1e-9);  // default survives
  CHECK(cfg.checks.size() == 1);

  // Round trip through the canonical echo.
  const ScenarioConfig back = ScenarioConfig::from_json_text(cfg.to_json_text());
  CHECK(back.to_json_text() == cfg.to_json_text());
}

TEST_CASE("config parsing: base values lose to explicit keys") {
  ScenarioConfig base;
  base.rank_tol = 1e-7;
  base.samples = 3;
  const ScenarioConfig cfg = ScenarioConfig::from_json_text(
      R"({"family": "so", "n": 4, "samples": 11, "checks": ["involutivity"]})",
      base);
  CHECK(cfg.rank_tol == 1e-7);  // inherited from base
  CHECK(cfg.samples == 11);     // overridden by the text
}

TEST_CASE("config parsing rejects malformed input") {
  // Unknown top-level key.
  CHECK_THROWS_AS(ScenarioConfig::from_json_text(
                      R"({"family": "so", "n": 4, "checks": ["involutivity"],
                          "velocity": 3})"),
                  std::invalid_argument);
  // Unknown check kind.
  CHECK_THROWS_AS(ScenarioConfig::from_json_text(
                      R"({"family": "so", "n": 4, "checks": ["frobnicate"]})"),
                  std::invalid_argument);
  // Empty check list.
  CHECK_THROWS_AS(ScenarioConfig::from_json_text(
                      R"({"family": "so", "n": 4, "checks": []})"),
                  std::invalid_argument);
  // Bad family.
  CHECK_THROWS_AS(ScenarioConfig::from_json_text(
                      R"({"family": "sp", "n": 4, "checks": ["involutivity"]})"),
                  std::invalid_argument);
  // Non-positive tolerance.
  CHECK_THROWS_AS(ScenarioConfig::from_json_text(
                      R"({"family": "so", "n": 4, "checks": ["involutivity"],
                          "rank_tol": 0.0})"),
                  std::invalid_argument);
  // Unknown embedding key.
  CHECK_THROWS_AS(ScenarioConfig::from_json_text(
                      R"({"family": "su", "n": 3, "checks": ["dimension-pair"],
                          "isotropy": {"type": "torus", "angle": 1}})"),
                  std::invalid_argument);
  // Not JSON at all.
  CHECK_THROWS_AS(ScenarioConfig::from_json_text("not json"),
                  std::invalid_argument);
}

TEST_CASE("checks that need missing scenario data refuse to run") {
  ScenarioConfig cfg;
  cfg.family = "su";
  cfg.n = 3;
  cfg.checks = {"dimension-pair"};  // needs an isotropy embedding
  CHECK_THROWS_AS(run_scenario(cfg), std::invalid_argument);

  cfg.checks = {"biq-identity"};  // needs left and right embeddings
  CHECK_THROWS_AS(run_scenario(cfg), std::invalid_argument);
}

TEST_CASE("reports are deterministic and structurally well formed") {
  ScenarioConfig cfg;
  cfg.label = "so4 smoke";
  cfg.family = "so";
  cfg.n = 4;
  cfg.seed = 99;
  cfg.samples = 6;
  cfg.euler_t_end = 1.0;
  cfg.euler_dt = 0.01;
  cfg.checks = {"involutivity", "orbit-completeness", "euler"};

  const ReportDocument a = run_scenario(cfg);
  const ReportDocument b = run_scenario(cfg);
  CHECK(a.to_json_text() == b.to_json_text());
  CHECK(a.passed);
  CHECK(a.failed_count == 0);
  CHECK(a.results.size() == 3);

  const json doc = json::parse(a.to_json_text());
  CHECK(doc.at("schema").get<std::string>() == "lieflow.report.v1");
  CHECK(doc.at("version").get<std::string>() == std::string(kVersion));
  CHECK(doc.at("passed").get<bool>());
  CHECK(doc.at("checks").size() == 3);
  for (const auto& entry : doc.at("checks")) {
    CHECK(entry.contains("kind"));
    CHECK(entry.contains("passed"));
    CHECK(entry.contains("detail"));
    CHECK(entry.contains("metrics"));
  }
  CHECK(doc.at("config").at("family").get<std::string>() == "so");
  CHECK(doc.at("config").at("seed").get<std::uint64_t>() == 99);
}

TEST_CASE("a different seed changes sampled metrics but not the schema") {
  ScenarioConfig cfg;
  cfg.family = "so";
  cfg.n = 4;
  cfg.samples = 5;
  cfg.checks = {"involutivity"};
  cfg.seed = 1;
  const std::string r1 = run_scenario(cfg).to_json_text();
  cfg.seed = 2;
  const std::string r2 = run_scenario(cfg).to_json_text();
  CHECK(r1 != r2);
  CHECK(json::parse(r1).at("passed").get<bool>());
  CHECK(json::parse(r2).at("passed").get<bool>());
}

TEST_CASE("the bump scenario passes end to end") {
  ScenarioConfig cfg;
  cfg.family = "so";
  cfg.n = 3;
  cfg.seed = 31;
  cfg.checks = {"bump-demo"};
  const ReportDocument rep = run_scenario(cfg);
  CHECK(rep.passed);
  REQUIRE(rep.results.size() == 1);
  CHECK(rep.results[0].kind == "bump-demo");
}

TEST_CASE("trajectory CSV uses a fixed layout and full precision") {
  TrajectoryRecord rec;
  rec.times = Eigen::VectorXd::LinSpaced(3, 0.0, 0.2);
  rec.states = Eigen::MatrixXd::Zero(3, 2);
  rec.states << 1.0, 0.5, 0.25, -0.125, 1.0 / 3.0, 2.0 / 3.0;
  rec.state_labels = {"x1", "x2"};
  rec.tracked = Eigen::MatrixXd::Constant(3, 1, 0.75);
  rec.tracked_labels = {"energy"};

  std::ostringstream os;
  emit_trajectory_csv(rec, os);
  const std::string text = os.str();
  CHECK(text.rfind("time,x1,x2,energy\n", 0) == 0);
  // Repeating decimals survive a parse back at full precision.
  CHECK(text.find("0.3333333333333333") != std::string::npos);
  // Three data rows plus header, each '\n'-terminated.
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 4);
  CHECK(text.back() == '\n');
}

TEST_CASE("known check kinds are nonempty and unique") {
  const auto& kinds = known_check_kinds();
  CHECK(kinds.size() >= 10);
  for (std::size_t i = 0; i < kinds.size(); ++i)
    for (std::size_t j = i + 1; j < kinds.size(); ++j)
      CHECK(kinds[i] != kinds[j]);
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lieflow/algebra.hpp"
#include "lieflow/trajectory.hpp"

namespace lieflow {

inline constexpr const char* kVersion = "0.1.0";

// Subalgebra selector used by scenario configs:
//   {"type": "so-block", "blocks": [1,2,3]}
//   {"type": "circle", "weights": [1,-1,0]}
//   {"type": "torus"} | {"type": "so3-in-su3"} | {"type": "trivial"}
struct EmbeddingSpec {
  std::string type;
  std::vector<int> blocks;
  std::vector<int> weights;
  bool present = false;
};

SubalgebraEmbedding build_embedding(const LieAlgebra& alg,
                                    const EmbeddingSpec& spec);

// One scenario: an algebra, optional subalgebra data, and a list of checks.
// Unknown JSON keys are rejected. Every run with the same config produces a
// byte-identical report.
struct ScenarioConfig {
  std::string label;
  std::string family = "so";
  int n = 4;
  std::uint64_t seed = 2024;
  int samples = 25;
  double rank_tol = 1e-9;
  double drift_tol = 1e-6;
  std::vector<std::string> checks;
  std::vector<double> shift;  // empty: regular element drawn from the seed
  std::vector<double> w0;     // empty: unit sample drawn from the seed
  EmbeddingSpec isotropy;
  EmbeddingSpec left;
  EmbeddingSpec right;
  double euler_t_end = 5.0;
  double euler_dt = 0.01;
  double geo_t_end = 1.0;
  double geo_dt = 0.01;

  // Parses on top of `base` so callers can pre-seed defaults (for example a
  // rank tolerance from the environment); keys present in the text win.
  static ScenarioConfig from_json_text(const std::string& text,
                                       const ScenarioConfig& base);
  static ScenarioConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

const std::vector<std::string>& known_check_kinds();

struct CheckResult {
  std::string kind;
  bool passed = false;
  std::string detail;  // one-line human summary
  // Flat numeric metrics, serialized under the check entry.
  std::vector<std::pair<std::string, double>> metrics;
};

struct ReportDocument {
  ScenarioConfig config;
  std::vector<CheckResult> results;
  bool passed = false;
  int failed_count = 0;

  std::string to_json_text() const;
};

// Runs each requested check. Mathematical failures (a residual above
// tolerance, a diverged flow) mark the check failed; malformed configuration
// throws std::invalid_argument.
ReportDocument run_scenario(const ScenarioConfig& cfg);

// Locale-independent CSV: header row, then one row per sample,
// values printed with up to 17 significant digits, '\n' line ends.
void emit_trajectory_csv(const TrajectoryRecord& rec, std::ostream& os);

}  // namespace lieflow

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace lieflow {

// Sampled trajectory with tracked scalar diagnostics. Row r of states and
// tracked corresponds to times[r].
struct TrajectoryRecord {
  Eigen::VectorXd times;
  Eigen::MatrixXd states;
  std::vector<std::string> state_labels;
  Eigen::MatrixXd tracked;
  std::vector<std::string> tracked_labels;

  int rows() const { return static_cast<int>(times.size()); }
  bool empty() const { return times.size() == 0; }

  // Per tracked column: max_t |v(t) - v(0)| / (1 + |v(0)|).
  Eigen::VectorXd drift() const;
  double max_drift() const;
  // Max over time of the state deviation from the initial state (2-norm).
  double state_drift() const;
};

}  // namespace lieflow

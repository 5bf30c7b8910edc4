#include "lieflow/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace lieflow {

Eigen::VectorXd TrajectoryRecord::drift() const {
  if (empty()) throw std::runtime_error("empty trajectory record");
  Eigen::VectorXd d = Eigen::VectorXd::Zero(tracked.cols());
  for (int c = 0; c < tracked.cols(); ++c) {
    const double v0 = tracked(0, c);
    double worst = 0;
    for (int r = 1; r < tracked.rows(); ++r)
      worst = std::max(worst, std::abs(tracked(r, c) - v0));
    d[c] = worst / (1.0 + std::abs(v0));
  }
  return d;
}

double TrajectoryRecord::max_drift() const {
  const Eigen::VectorXd d = drift();
  return d.size() ? d.maxCoeff() : 0.0;
}

double TrajectoryRecord::state_drift() const {
  if (empty()) throw std::runtime_error("empty trajectory record");
  double worst = 0;
  for (int r = 1; r < states.rows(); ++r)
    worst = std::max(worst, (states.row(r) - states.row(0)).norm());
  return worst;
}

}  // namespace lieflow

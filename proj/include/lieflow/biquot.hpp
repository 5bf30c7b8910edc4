#pragma once

#include <cstdint>
#include <vector>

#include "lieflow/algebra.hpp"
#include "lieflow/linsub.hpp"
#include "lieflow/trajectory.hpp"

namespace lieflow {

// Two-sided quotient K\G/H: K acts by left translation, H by right. The
// constructor requires k and h to intersect trivially (freeness at the
// identity); freeness elsewhere is sampled, not proven.
class Biquotient {
 public:
  Biquotient(const LieAlgebra& g, const SubalgebraEmbedding& left,
             const SubalgebraEmbedding& right);

  const LieAlgebra& algebra() const { return g_; }
  const Eigen::MatrixXd& left_basis() const { return K_; }    // B-orthonormal
  const Eigen::MatrixXd& right_basis() const { return H_; }
  int dim_left() const { return static_cast<int>(K_.cols()); }
  int dim_right() const { return static_cast<int>(H_.cols()); }
  int quotient_dim() const { return g_.dim() - dim_left() - dim_right(); }

 private:
  LieAlgebra g_;
  Eigen::MatrixXd K_;
  Eigen::MatrixXd H_;
};

// Stabilizer of sampled group points under (k, h) . g = k g h^{-1}:
// dim(Ad_g h cap k), zero everywhere iff the action is free. The identity is
// always the first sample. Sampled evidence only.
struct FreenessReport {
  int samples = 0;
  int max_stabilizer_dim = 0;
  bool free_at_samples = false;
};
FreenessReport freeness_check(const Biquotient& bq, int samples,
                              std::uint64_t seed, double rank_tol = 1e-9);

// Unit sample of the joint zero-momentum slice over the identity,
// xi in (k + h)^perp.
AlgebraVector sample_C(const Biquotient& bq, std::uint64_t seed);

// Tangent to the slice at xi seen from the left side:
// (h^perp + [xi, g]) cap k^perp.
Subspace tangent_C(const Biquotient& bq, const AlgebraVector& xi,
                   double rank_tol = 1e-9);

// Defect dimensions of the two natural families at xi, each measured two
// ways: (a) dim tangent slice minus dim [xi, subalgebra], and (b) the
// counting route d - 2 dim k + dim(h^perp + [xi,g]) - dim([xi,g] + k^perp).
// stable reports whether every dimension survives a 1e-6 perturbation of xi.
struct BiquotientSampleDims {
  int ddim_left_a = 0;
  int ddim_left_b = 0;
  int ddim_right_a = 0;
  int ddim_right_b = 0;
  bool routes_agree = false;
  bool stable = false;
};
BiquotientSampleDims biquotient_sample_dims(const Biquotient& bq,
                                            const AlgebraVector& xi,
                                            double rank_tol = 1e-9);

// ddim(left family) + ddim(right family) = 2 dim(K\G/H) over sampled slice
// points; modal value with a 90% agreement bar.
struct BiquotientIdentityReport {
  int samples = 0;
  int expected = 0;
  int mode_sum = 0;
  int mode_left = 0;
  int mode_right = 0;
  bool conclusive = false;  // modal agreement of at least 90%
  bool holds = false;
  int unstable_samples = 0;
  int route_disagreements = 0;
  std::vector<int> sums;
};
BiquotientIdentityReport dimension_identity_check(const Biquotient& bq,
                                                  int samples,
                                                  std::uint64_t seed,
                                                  double rank_tol = 1e-9);

// Horizontal geodesic gamma(t) = g0 exp(t eta) with eta B-orthogonal to
// h + Ad_{g0^{-1}} k. Both trivialized velocities, measured by finite
// differences of gamma, must stay constant: d gamma gamma^{-1} at Ad_{g0} eta
// and gamma^{-1} d gamma at eta.
struct HorizontalGeodesicReport {
  TrajectoryRecord record;
  double velocity_drift = 0.0;       // right-trivialized, vs Ad_{g0} eta
  double body_velocity_drift = 0.0;  // left-trivialized, vs eta
  double horizontality_residual = 0.0;
  double group_residual = 0.0;
};
HorizontalGeodesicReport horizontal_geodesic(const Biquotient& bq,
                                             std::uint64_t seed, double t_end,
                                             double dt, int record_stride = 1);

}  // namespace lieflow

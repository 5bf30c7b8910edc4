#include "lieflow/biquot.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "lieflow/rng.hpp"

namespace lieflow {

namespace {

Eigen::MatrixXd bracket_columns(const LieAlgebra& g, const AlgebraVector& xi,
                                const Eigen::MatrixXd& cols) {
  Eigen::MatrixXd out(g.dim(), cols.cols());
  for (int j = 0; j < cols.cols(); ++j)
    out.col(j) = g.bracket(xi, cols.col(j));
  return out;
}

Eigen::MatrixXd full_bracket(const LieAlgebra& g, const AlgebraVector& xi) {
  return bracket_columns(g, xi, Eigen::MatrixXd::Identity(g.dim(), g.dim()));
}

// One-sided defect dimensions; `mine` is the acting subalgebra, `other` the
// opposite one.
void side_dims(const LieAlgebra& g, const AlgebraVector& xi,
               const Eigen::MatrixXd& mine, const Eigen::MatrixXd& other,
               double rank_tol, int& route_a, int& route_b) {
  const int d = g.dim();
  const Subspace mine_perp =
      Subspace::from_columns(g.orthocomplement(mine), rank_tol);
  const Subspace other_perp =
      Subspace::from_columns(g.orthocomplement(other), rank_tol);
  const Subspace ad_image =
      Subspace::from_columns(full_bracket(g, xi), rank_tol);

  const Subspace reach = sum(other_perp, ad_image, rank_tol);
  const Subspace slice_tangent = intersect(reach, mine_perp, rank_tol);
  const int moved =
      Subspace::from_columns(bracket_columns(g, xi, mine), rank_tol).dim();
  route_a = slice_tangent.dim() - moved;

  route_b = d - 2 * static_cast<int>(mine.cols()) + reach.dim() -
            sum(ad_image, mine_perp, rank_tol).dim();
}

int mode_of(const std::vector<int>& values, int& count) {
  std::map<int, int> hist;
  for (int v : values) ++hist[v];
  int best = 0;
  count = 0;
  for (const auto& [v, c] : hist)
    if (c > count) {
      best = v;
      count = c;
    }
  return best;
}

}  // namespace

Biquotient::Biquotient(const LieAlgebra& g, const SubalgebraEmbedding& left,
                       const SubalgebraEmbedding& right)
    : g_(g) {
  if (left.dim() == 0 || right.dim() == 0)
    throw std::invalid_argument("two-sided quotient needs nontrivial factors");
  K_ = g_.b_orthonormalize(left.basis);
  H_ = g_.b_orthonormalize(right.basis);
  Eigen::MatrixXd both(g_.dim(), K_.cols() + H_.cols());
  both.leftCols(K_.cols()) = K_;
  both.rightCols(H_.cols()) = H_;
  if (Subspace::from_columns(both).dim() !=
      static_cast<int>(K_.cols() + H_.cols()))
    throw std::invalid_argument(
        "factor subalgebras overlap; the quotient is singular at the identity");
}

FreenessReport freeness_check(const Biquotient& bq, int samples,
                              std::uint64_t seed, double rank_tol) {
  const LieAlgebra& g = bq.algebra();
  FreenessReport rep;
  rep.samples = std::max(1, samples);
  for (int s = 0; s < rep.samples; ++s) {
    Matrix gm;
    if (s == 0) {
      gm = Matrix::Identity(g.n(), g.n());
    } else {
      Rng rng(derive_seed(seed, s));
      gm = g.exp_defining(rng.gaussian_vector(g.dim()));
    }
    const Eigen::MatrixXd ad_h = g.group_Ad(gm) * bq.right_basis();
    Eigen::MatrixXd both(g.dim(), bq.dim_left() + bq.dim_right());
    both.leftCols(bq.dim_left()) = bq.left_basis();
    both.rightCols(bq.dim_right()) = ad_h;
    const int overlap = bq.dim_left() + bq.dim_right() -
                        Subspace::from_columns(both, rank_tol).dim();
    rep.max_stabilizer_dim = std::max(rep.max_stabilizer_dim, overlap);
  }
  rep.free_at_samples = (rep.max_stabilizer_dim == 0);
  return rep;
}

AlgebraVector sample_C(const Biquotient& bq, std::uint64_t seed) {
  const LieAlgebra& g = bq.algebra();
  Eigen::MatrixXd both(g.dim(), bq.dim_left() + bq.dim_right());
  both.leftCols(bq.dim_left()) = bq.left_basis();
  both.rightCols(bq.dim_right()) = bq.right_basis();
  const Eigen::MatrixXd perp = g.orthocomplement(both);
  if (perp.cols() == 0)
    throw std::runtime_error("zero-momentum slice is trivial");
  Rng rng(seed);
  AlgebraVector xi = perp * rng.gaussian_vector(static_cast<int>(perp.cols()));
  return xi / xi.norm();
}

Subspace tangent_C(const Biquotient& bq, const AlgebraVector& xi,
                   double rank_tol) {
  const LieAlgebra& g = bq.algebra();
  const Subspace h_perp = Subspace::from_columns(
      g.orthocomplement(bq.right_basis()), rank_tol);
  const Subspace k_perp = Subspace::from_columns(
      g.orthocomplement(bq.left_basis()), rank_tol);
  const Subspace ad_image =
      Subspace::from_columns(full_bracket(g, xi), rank_tol);
  return intersect(sum(h_perp, ad_image, rank_tol), k_perp, rank_tol);
}

BiquotientSampleDims biquotient_sample_dims(const Biquotient& bq,
                                            const AlgebraVector& xi,
                                            double rank_tol) {
  const LieAlgebra& g = bq.algebra();
  BiquotientSampleDims dims;
  side_dims(g, xi, bq.left_basis(), bq.right_basis(), rank_tol,
            dims.ddim_left_a, dims.ddim_left_b);
  side_dims(g, xi, bq.right_basis(), bq.left_basis(), rank_tol,
            dims.ddim_right_a, dims.ddim_right_b);
  dims.routes_agree = (dims.ddim_left_a == dims.ddim_left_b) &&
                      (dims.ddim_right_a == dims.ddim_right_b);

  // Genericity guard: every dimension must survive a small shove of xi.
  Rng rng(splitmix64(0x9e3779b97f4a7c15ULL));
  AlgebraVector nudge = rng.gaussian_vector(g.dim());
  const AlgebraVector xi2 = xi + 1e-6 * (nudge / nudge.norm());
  BiquotientSampleDims d2;
  side_dims(g, xi2, bq.left_basis(), bq.right_basis(), rank_tol,
            d2.ddim_left_a, d2.ddim_left_b);
  side_dims(g, xi2, bq.right_basis(), bq.left_basis(), rank_tol,
            d2.ddim_right_a, d2.ddim_right_b);
  dims.stable = (dims.ddim_left_a == d2.ddim_left_a) &&
                (dims.ddim_left_b == d2.ddim_left_b) &&
                (dims.ddim_right_a == d2.ddim_right_a) &&
                (dims.ddim_right_b == d2.ddim_right_b);
  return dims;
}

BiquotientIdentityReport dimension_identity_check(const Biquotient& bq,
                                                  int samples,
                                                  std::uint64_t seed,
                                                  double rank_tol) {
  BiquotientIdentityReport rep;
  rep.samples = std::max(20, samples);
  rep.expected = 2 * bq.quotient_dim();

  std::vector<int> lefts, rights;
  for (int s = 0; s < rep.samples; ++s) {
    const AlgebraVector xi = sample_C(bq, derive_seed(seed, s));
    const BiquotientSampleDims dims =
        biquotient_sample_dims(bq, xi, rank_tol);
    if (!dims.routes_agree) ++rep.route_disagreements;
    if (!dims.stable) ++rep.unstable_samples;
    rep.sums.push_back(dims.ddim_left_a + dims.ddim_right_a);
    lefts.push_back(dims.ddim_left_a);
    rights.push_back(dims.ddim_right_a);
  }

  int count = 0;
  rep.mode_sum = mode_of(rep.sums, count);
  int c2 = 0;
  rep.mode_left = mode_of(lefts, c2);
  rep.mode_right = mode_of(rights, c2);
  rep.conclusive = (10 * count >= 9 * rep.samples);
  rep.holds = rep.conclusive && rep.mode_sum == rep.expected &&
              rep.route_disagreements == 0;
  return rep;
}

HorizontalGeodesicReport horizontal_geodesic(const Biquotient& bq,
                                             std::uint64_t seed, double t_end,
                                             double dt, int record_stride) {
  if (dt <= 0.0 || t_end <= 0.0)
    throw std::invalid_argument("geodesic needs dt > 0 and t_end > 0");
  if (record_stride < 1) record_stride = 1;
  const LieAlgebra& g = bq.algebra();
  const int d = g.dim();

  Rng rng(seed);
  const Matrix g0 = g.exp_defining(0.5 * rng.gaussian_vector(d));
  const Matrix g0inv = g0.adjoint();

  // eta B-orthogonal to h + Ad_{g0^{-1}} k.
  Eigen::MatrixXd walls(d, bq.dim_right() + bq.dim_left());
  walls.leftCols(bq.dim_right()) = bq.right_basis();
  walls.rightCols(bq.dim_left()) = g.group_Ad(g0inv) * bq.left_basis();
  const Eigen::MatrixXd perp = g.orthocomplement(walls);
  if (perp.cols() == 0)
    throw std::runtime_error("no horizontal directions at this base point");
  AlgebraVector eta = perp * rng.gaussian_vector(static_cast<int>(perp.cols()));
  eta /= eta.norm();

  HorizontalGeodesicReport rep;
  const Eigen::MatrixXd wall_on =
      g.b_orthonormalize(walls).transpose() * g.gram() * eta;
  rep.horizontality_residual = wall_on.norm();

  const AlgebraVector vel0 = g.group_Ad(g0, eta);

  const int steps = static_cast<int>(std::llround(t_end / dt));
  std::vector<double> ts;
  std::vector<AlgebraVector> vels;
  // Five-point stencil: roundoff stays near eps/fd ~ 1e-13 instead of the
  // 1e-10 a first-order-step central difference would leave.
  const double fd = 1e-3;
  for (int k = 0; k <= steps; ++k) {
    if (k % record_stride != 0 && k != steps) continue;
    const double t = k * dt;
    const Matrix gamma = g0 * g.exp_defining(t * eta);
    rep.group_residual = std::max(
        rep.group_residual,
        (gamma * gamma.adjoint() - Matrix::Identity(g.n(), g.n())).norm());
    const Matrix g2p = g0 * g.exp_defining((t + 2.0 * fd) * eta);
    const Matrix gp = g0 * g.exp_defining((t + fd) * eta);
    const Matrix gm = g0 * g.exp_defining((t - fd) * eta);
    const Matrix g2m = g0 * g.exp_defining((t - 2.0 * fd) * eta);
    const Matrix dgamma = (-g2p + 8.0 * gp - 8.0 * gm + g2m) / (12.0 * fd);
    const AlgebraVector vel = g.coords(dgamma * gamma.adjoint());
    const AlgebraVector body = g.coords(gamma.adjoint() * dgamma);
    ts.push_back(t);
    vels.push_back(vel);
    rep.velocity_drift = std::max(
        rep.velocity_drift, (vel - vel0).norm() / (1.0 + vel0.norm()));
    rep.body_velocity_drift = std::max(
        rep.body_velocity_drift, (body - eta).norm() / (1.0 + eta.norm()));
  }

  const int rows = static_cast<int>(ts.size());
  rep.record.times = Eigen::Map<const Eigen::VectorXd>(ts.data(), rows);
  rep.record.states.resize(rows, d);
  for (int r = 0; r < rows; ++r) rep.record.states.row(r) = vels[r];
  for (int j = 0; j < d; ++j)
    rep.record.state_labels.push_back("vel[" + std::to_string(j) + "]");
  rep.record.tracked.resize(rows, 1);
  rep.record.tracked_labels.push_back("vel_dev");
  for (int r = 0; r < rows; ++r)
    rep.record.tracked(r, 0) = (vels[r] - vel0).norm();
  return rep;
}

}  // namespace lieflow

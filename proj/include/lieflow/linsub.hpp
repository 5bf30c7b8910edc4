#pragma once

#include <Eigen/Core>

namespace lieflow {

// Linear subspace of R^m held as orthonormal columns. Subspace algebra here
// is metric-agnostic (sums, intersections, dimensions); callers that care
// about a non-Euclidean inner product orthonormalize on their side.
struct Subspace {
  int ambient = 0;
  Eigen::MatrixXd Q;  // ambient x k, orthonormal columns

  int dim() const { return static_cast<int>(Q.cols()); }

  static Subspace zero(int ambient);
  static Subspace full(int ambient);
  // Orthonormalizes span(cols); rank cut at rank_tol relative to sigma_max.
  static Subspace from_columns(const Eigen::MatrixXd& cols,
                               double rank_tol = 1e-9);
};

// Largest principal-angle sine of A against B, i.e. how far A sticks out of
// B. Zero when A is contained in B; 1 when some direction is orthogonal.
double inclusion_residual(const Subspace& a, const Subspace& b);
double equality_residual(const Subspace& a, const Subspace& b);
bool subspace_equal(const Subspace& a, const Subspace& b, double tol = 1e-8);

Subspace sum(const Subspace& a, const Subspace& b, double rank_tol = 1e-9);
// Intersection via the stacked projector complements; its dimension is
// forced to dim A + dim B - dim(A+B).
Subspace intersect(const Subspace& a, const Subspace& b,
                   double rank_tol = 1e-9);

struct SymplecticForm {
  Eigen::MatrixXd omega;  // antisymmetric, nondegenerate

  int ambient() const { return static_cast<int>(omega.rows()); }
  // Standard form on R^(2k) with coordinates (q, p): omega(q_i, p_i) = +1.
  static SymplecticForm standard(int m);
  double eval(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
};

// W^omega = { v : omega(v, w) = 0 for all w in W }.
Subspace symplectic_orthogonal(const Subspace& w, const SymplecticForm& form,
                               double rank_tol = 1e-9);

struct CoisotropyReport {
  bool coisotropic = false;
  double residual = 0.0;  // inclusion residual of W^omega in W
};
CoisotropyReport coisotropy_check(const Subspace& w, const SymplecticForm& form,
                                  double tol = 1e-8);

// Checks W1 cap W2 = (W1 + W2)^omega under the preconditions
// omega(W1, W2) = 0 and dim W1 + dim W2 = ambient. When a precondition
// fails the verdict is not issued and preconditions_ok reports why.
struct SkewComplementReport {
  bool preconditions_ok = false;
  double pairing_residual = 0.0;  // max |omega(basis of W1, basis of W2)|
  bool dims_ok = false;
  bool verdict = false;
  double equality_residual = 0.0;
  double coisotropy_residual = 0.0;
};
SkewComplementReport skew_complement_check(const Subspace& w1,
                                           const Subspace& w2,
                                           const SymplecticForm& form,
                                           double tol = 1e-8);

}  // namespace lieflow

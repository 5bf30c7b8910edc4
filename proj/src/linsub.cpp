#include "lieflow/linsub.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace lieflow {

namespace {

int rank_cut(const Eigen::VectorXd& sv, double rank_tol) {
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  const double cut = rank_tol * sv[0];
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++r;
  return r;
}

}  // namespace

Subspace Subspace::zero(int ambient) {
  return {ambient, Eigen::MatrixXd::Zero(ambient, 0)};
}

Subspace Subspace::full(int ambient) {
  return {ambient, Eigen::MatrixXd::Identity(ambient, ambient)};
}

Subspace Subspace::from_columns(const Eigen::MatrixXd& cols, double rank_tol) {
  const int m = static_cast<int>(cols.rows());
  if (cols.cols() == 0) return zero(m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
  const int r = rank_cut(svd.singularValues(), rank_tol);
  return {m, svd.matrixU().leftCols(r)};
}

double inclusion_residual(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient)
    throw std::invalid_argument("subspaces live in different ambients");
  if (a.dim() == 0) return 0.0;
  const Eigen::MatrixXd out = a.Q - b.Q * (b.Q.transpose() * a.Q);
  return out.jacobiSvd().singularValues()[0];
}

double equality_residual(const Subspace& a, const Subspace& b) {
  return std::max(inclusion_residual(a, b), inclusion_residual(b, a));
}

bool subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  return a.dim() == b.dim() && equality_residual(a, b) < tol;
}

Subspace sum(const Subspace& a, const Subspace& b, double rank_tol) {
  if (a.ambient != b.ambient)
    throw std::invalid_argument("subspaces live in different ambients");
  Eigen::MatrixXd cols(a.ambient, a.dim() + b.dim());
  cols << a.Q, b.Q;
  return Subspace::from_columns(cols, rank_tol);
}

Subspace intersect(const Subspace& a, const Subspace& b, double rank_tol) {
  if (a.ambient != b.ambient)
    throw std::invalid_argument("subspaces live in different ambients");
  const int m = a.ambient;
  const int target = a.dim() + b.dim() - sum(a, b, rank_tol).dim();
  if (target <= 0) return Subspace::zero(m);
  // v is in the intersection iff both projector complements annihilate it;
  // the target dimension fixes how many near-null directions to keep.
  Eigen::MatrixXd stacked(2 * m, m);
  stacked.topRows(m) =
      Eigen::MatrixXd::Identity(m, m) - a.Q * a.Q.transpose();
  stacked.bottomRows(m) =
      Eigen::MatrixXd::Identity(m, m) - b.Q * b.Q.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  return {m, svd.matrixV().rightCols(target)};
}

SymplecticForm SymplecticForm::standard(int m) {
  if (m % 2 != 0) throw std::invalid_argument("standard form needs even m");
  const int k = m / 2;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
  w.topRightCorner(k, k) = Eigen::MatrixXd::Identity(k, k);
  w.bottomLeftCorner(k, k) = -Eigen::MatrixXd::Identity(k, k);
  return {w};
}

double SymplecticForm::eval(const Eigen::VectorXd& u,
                            const Eigen::VectorXd& v) const {
  return u.dot(omega * v);
}

Subspace symplectic_orthogonal(const Subspace& w, const SymplecticForm& form,
                               double rank_tol) {
  if (form.ambient() != w.ambient)
    throw std::invalid_argument("form and subspace ambient mismatch");
  if (w.dim() == 0) return Subspace::full(w.ambient);
  // v in W^omega iff (omega W)^T v = 0.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd((form.omega * w.Q).transpose(),
                                        Eigen::ComputeFullV);
  const int r = rank_cut(svd.singularValues(), rank_tol);
  return {w.ambient, svd.matrixV().rightCols(w.ambient - r)};
}

CoisotropyReport coisotropy_check(const Subspace& w, const SymplecticForm& form,
                                  double tol) {
  const Subspace wo = symplectic_orthogonal(w, form);
  const double res = inclusion_residual(wo, w);
  return {res < tol, res};
}

SkewComplementReport skew_complement_check(const Subspace& w1, const Subspace& w2,
                            const SymplecticForm& form, double tol) {
  SkewComplementReport rep;
  rep.pairing_residual =
      w1.dim() && w2.dim()
          ? (w1.Q.transpose() * form.omega * w2.Q).cwiseAbs().maxCoeff()
          : 0.0;
  rep.dims_ok = (w1.dim() + w2.dim() == w1.ambient);
  rep.preconditions_ok = rep.dims_ok && rep.pairing_residual < tol;
  if (!rep.preconditions_ok) return rep;

  const Subspace both = intersect(w1, w2);
  const Subspace total = sum(w1, w2);
  const Subspace totalo = symplectic_orthogonal(total, form);
  rep.equality_residual = both.dim() == totalo.dim()
                              ? equality_residual(both, totalo)
                              : 1.0;
  const auto co = coisotropy_check(total, form, tol);
  rep.coisotropy_residual = co.residual;
  rep.verdict = rep.equality_residual < tol && co.coisotropic;
  return rep;
}

}  // namespace lieflow

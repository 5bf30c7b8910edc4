#include "lieflow/algebra.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lieflow/rng.hpp"

namespace lieflow {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Matrix unit_pair(int n, int r, int c, std::complex<double> v) {
  Matrix m = Matrix::Zero(n, n);
  m(r, c) = v;
  return m;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::SO: return "so";
    case Family::SU: return "su";
    case Family::U: return "u";
  }
  throw std::logic_error("unreachable family");
}

Family family_from_name(const std::string& name) {
  if (name == "so") return Family::SO;
  if (name == "su") return Family::SU;
  if (name == "u") return Family::U;
  throw std::invalid_argument("unsupported family: " + name);
}

LieAlgebra LieAlgebra::build_classical(Family family, int n) {
  if (n < 2) throw std::invalid_argument("family requires n >= 2");
  LieAlgebra a;
  a.family_ = family;
  a.n_ = n;
  a.name_ = family_name(family) + "(" + std::to_string(n) + ")";

  if (family == Family::SO) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Matrix m = Matrix::Zero(n, n);
        m(j, i) = 1.0;
        m(i, j) = -1.0;
        a.basis_.push_back(m);
      }
    a.rank_ = n / 2;
  } else {
    for (int m = 1; m < n; ++m) {
      for (int i = 0; i < m; ++i) {
        a.basis_.push_back(unit_pair(n, i, m, kI) + unit_pair(n, m, i, kI));
        a.basis_.push_back(unit_pair(n, i, m, 1.0) + unit_pair(n, m, i, -1.0));
      }
      Matrix d = Matrix::Zero(n, n);
      const double s = std::sqrt(2.0 / (m * (m + 1.0)));
      for (int k = 0; k < m; ++k) d(k, k) = kI * s;
      d(m, m) = -kI * (s * m);
      a.basis_.push_back(d);
    }
    a.rank_ = n - 1;
    if (family == Family::U) {
      a.basis_.push_back(kI * Matrix::Identity(n, n));
      a.rank_ = n;
    }
  }
  a.d_ = static_cast<int>(a.basis_.size());

  a.B_.resize(a.d_, a.d_);
  for (int i = 0; i < a.d_; ++i)
    for (int j = i; j < a.d_; ++j) {
      const double v = -(a.basis_[i] * a.basis_[j]).trace().real();
      a.B_(i, j) = v;
      a.B_(j, i) = v;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.B_);
  if (es.eigenvalues().minCoeff() <= 0)
    throw std::logic_error("inner product not positive definite");
  a.Bh_ = es.operatorSqrt();
  a.Bhinv_ = es.operatorInverseSqrt();
  a.Binv_ = a.Bhinv_ * a.Bhinv_;

  // Structure constants from the defining representation, antisymmetrized
  // exactly so that c^k_{ji} = -c^k_{ij} bitwise.
  a.adbasis_.assign(a.d_, Eigen::MatrixXd::Zero(a.d_, a.d_));
  for (int i = 0; i < a.d_; ++i)
    for (int j = i + 1; j < a.d_; ++j) {
      const Matrix comm =
          a.basis_[i] * a.basis_[j] - a.basis_[j] * a.basis_[i];
      const AlgebraVector c = a.coords(comm);
      for (int k = 0; k < a.d_; ++k) {
        a.adbasis_[i](k, j) = c[k];
        a.adbasis_[j](k, i) = -c[k];
      }
    }
  return a;
}

Matrix LieAlgebra::matrix(const AlgebraVector& x) const {
  Matrix m = Matrix::Zero(n_, n_);
  for (int i = 0; i < d_; ++i) m += x[i] * basis_[i];
  return m;
}

AlgebraVector LieAlgebra::coords(const Matrix& X) const {
  AlgebraVector rhs(d_);
  for (int k = 0; k < d_; ++k) rhs[k] = -(X * basis_[k]).trace().real();
  return Binv_ * rhs;
}

double LieAlgebra::inner(const AlgebraVector& x, const AlgebraVector& y) const {
  return x.dot(B_ * y);
}

double LieAlgebra::norm(const AlgebraVector& x) const {
  return std::sqrt(std::max(0.0, inner(x, x)));
}

AlgebraVector LieAlgebra::bracket(const AlgebraVector& x,
                                  const AlgebraVector& y) const {
  AlgebraVector out = AlgebraVector::Zero(d_);
  for (int i = 0; i < d_; ++i)
    if (x[i] != 0.0) out.noalias() += x[i] * (adbasis_[i] * y);
  return out;
}

Eigen::MatrixXd LieAlgebra::ad(const AlgebraVector& x) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d_, d_);
  for (int i = 0; i < d_; ++i)
    if (x[i] != 0.0) m.noalias() += x[i] * adbasis_[i];
  return m;
}

int LieAlgebra::centralizer_dim(const AlgebraVector& x, double rank_tol) const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ad(x));
  const auto& sv = svd.singularValues();
  const double cut = rank_tol * (sv.size() ? sv[0] : 0.0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++r;
  return d_ - r;
}

Matrix LieAlgebra::exp_defining(const AlgebraVector& x) const {
  const Matrix g = matrix(x).exp();
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

bool LieAlgebra::is_group_element(const Matrix& g, double tol) const {
  if (g.rows() != n_ || g.cols() != n_) return false;
  if ((g * g.adjoint() - Matrix::Identity(n_, n_)).cwiseAbs().maxCoeff() > tol)
    return false;
  if (family_ == Family::SO && g.imag().cwiseAbs().maxCoeff() > tol)
    return false;
  if (family_ != Family::U && std::abs(g.determinant() - 1.0) > 1e3 * tol)
    return false;
  return true;
}

AlgebraVector LieAlgebra::group_Ad(const Matrix& g,
                                   const AlgebraVector& x) const {
  if (!is_group_element(g))
    throw std::invalid_argument(name_ + ": group_Ad got a non-group element");
  const Matrix m = g * matrix(x) * g.adjoint();
  const AlgebraVector c = coords(m);
  if ((matrix(c) - m).cwiseAbs().maxCoeff() > 1e-9)
    throw std::runtime_error(name_ + ": Ad image left the algebra");
  return c;
}

Eigen::MatrixXd LieAlgebra::group_Ad(const Matrix& g) const {
  if (!is_group_element(g))
    throw std::invalid_argument(name_ + ": group_Ad got a non-group element");
  Eigen::MatrixXd A(d_, d_);
  for (int i = 0; i < d_; ++i) {
    const Matrix m = g * basis_[i] * g.adjoint();
    A.col(i) = coords(m);
    if ((matrix(A.col(i)) - m).cwiseAbs().maxCoeff() > 1e-9)
      throw std::runtime_error(name_ + ": Ad image left the algebra");
  }
  return A;
}

AlgebraVector LieAlgebra::random_regular(std::uint64_t seed,
                                         int max_tries) const {
  Rng rng(seed);
  for (int t = 0; t < max_tries; ++t) {
    const AlgebraVector x = rng.gaussian_vector(d_);
    if (centralizer_dim(x) == rank_) return x;
  }
  throw std::runtime_error(name_ + ": no regular element after " +
                           std::to_string(max_tries) + " tries");
}

Eigen::MatrixXd LieAlgebra::orthocomplement(const Eigen::MatrixXd& cols) const {
  if (cols.cols() == 0) return b_orthonormalize(Eigen::MatrixXd::Identity(d_, d_));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols.transpose() * B_,
                                        Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = 1e-12 * sv[0];
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++r;
  return b_orthonormalize(svd.matrixV().rightCols(d_ - r));
}

Eigen::MatrixXd LieAlgebra::b_orthonormalize(const Eigen::MatrixXd& cols,
                                             double rank_tol) const {
  if (cols.cols() == 0) return Eigen::MatrixXd::Zero(d_, 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Bh_ * cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return Eigen::MatrixXd::Zero(d_, 0);
  const double cut = rank_tol * sv[0];
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++r;
  return Bhinv_ * svd.matrixU().leftCols(r);
}

AlgebraVector LieAlgebra::project(const Eigen::MatrixXd& cols,
                                  const AlgebraVector& x) const {
  if (cols.cols() == 0) return AlgebraVector::Zero(d_);
  return cols * (cols.transpose() * (B_ * x));
}

SubalgebraEmbedding embedding_from_matrices(const LieAlgebra& alg,
                                            const std::vector<Matrix>& gens,
                                            const std::string& name) {
  Eigen::MatrixXd cols(alg.dim(), static_cast<int>(gens.size()));
  for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
    const AlgebraVector c = alg.coords(gens[i]);
    if ((alg.matrix(c) - gens[i]).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument(name + ": generator not in " + alg.name());
    cols.col(i) = c;
  }
  SubalgebraEmbedding emb{name, alg.b_orthonormalize(cols, 1e-10)};
  for (int i = 0; i < emb.dim(); ++i)
    for (int j = i + 1; j < emb.dim(); ++j) {
      const AlgebraVector br = alg.bracket(emb.basis.col(i), emb.basis.col(j));
      if (alg.norm(br - alg.project(emb.basis, br)) > 1e-10)
        throw std::invalid_argument(name + ": span is not a subalgebra");
    }
  return emb;
}

SubalgebraEmbedding so_block_embedding(const LieAlgebra& alg,
                                       const std::vector<int>& indices) {
  if (alg.family() != Family::SO)
    throw std::invalid_argument("so_block_embedding requires an so algebra");
  std::vector<int> idx = indices;
  std::sort(idx.begin(), idx.end());
  for (size_t t = 0; t < idx.size(); ++t) {
    if (idx[t] < 1 || idx[t] > alg.n())
      throw std::invalid_argument("block index out of range");
    if (t > 0 && idx[t] == idx[t - 1])
      throw std::invalid_argument("repeated block index");
  }
  std::vector<Matrix> gens;
  std::string label = "so_block[";
  for (size_t a = 0; a < idx.size(); ++a) {
    label += (a ? "," : "") + std::to_string(idx[a]);
    for (size_t b = a + 1; b < idx.size(); ++b) {
      Matrix m = Matrix::Zero(alg.n(), alg.n());
      m(idx[b] - 1, idx[a] - 1) = 1.0;
      m(idx[a] - 1, idx[b] - 1) = -1.0;
      gens.push_back(m);
    }
  }
  return embedding_from_matrices(alg, gens, label + "]");
}

SubalgebraEmbedding circle_embedding(const LieAlgebra& alg,
                                     const std::vector<int>& weights) {
  if (alg.family() == Family::SO)
    throw std::invalid_argument("circle_embedding requires su or u");
  if (static_cast<int>(weights.size()) != alg.n())
    throw std::invalid_argument("need one weight per diagonal entry");
  int sum = 0, nonzero = 0;
  for (int w : weights) {
    sum += w;
    nonzero += (w != 0);
  }
  if (!nonzero) throw std::invalid_argument("zero weight vector");
  if (alg.family() == Family::SU && sum != 0)
    throw std::invalid_argument("su circle weights must sum to zero");
  Matrix m = Matrix::Zero(alg.n(), alg.n());
  std::string label = "circle[";
  for (int i = 0; i < alg.n(); ++i) {
    m(i, i) = kI * static_cast<double>(weights[i]);
    label += (i ? "," : "") + std::to_string(weights[i]);
  }
  return embedding_from_matrices(alg, {m}, label + "]");
}

SubalgebraEmbedding torus_embedding(const LieAlgebra& alg) {
  if (alg.family() != Family::SU)
    throw std::invalid_argument("torus_embedding requires su");
  std::vector<Matrix> gens;
  for (int m = 1; m < alg.n(); ++m) {
    Matrix d = Matrix::Zero(alg.n(), alg.n());
    const double s = std::sqrt(2.0 / (m * (m + 1.0)));
    for (int k = 0; k < m; ++k) d(k, k) = kI * s;
    d(m, m) = -kI * (s * m);
    gens.push_back(d);
  }
  return embedding_from_matrices(alg, gens, "torus");
}

SubalgebraEmbedding so3_in_su3_embedding(const LieAlgebra& alg) {
  if (alg.family() != Family::SU || alg.n() != 3)
    throw std::invalid_argument("so3_in_su3_embedding requires su(3)");
  std::vector<Matrix> gens;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Matrix m = Matrix::Zero(3, 3);
      m(j, i) = 1.0;
      m(i, j) = -1.0;
      gens.push_back(m);
    }
  return embedding_from_matrices(alg, gens, "so3_in_su3");
}

SubalgebraEmbedding trivial_embedding(const LieAlgebra& alg) {
  return SubalgebraEmbedding{"trivial", Eigen::MatrixXd::Zero(alg.dim(), 0)};
}

}  // namespace lieflow

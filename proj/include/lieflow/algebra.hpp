#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace lieflow {

using Matrix = Eigen::MatrixXcd;
using AlgebraVector = Eigen::VectorXd;

enum class Family { SO, SU, U };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Compact classical Lie algebra in its defining representation, with a fixed
// ordered basis, the invariant inner product <x,y> = -Re tr(xy), and
// precomputed structure constants. Immutable after construction.
//
// Basis conventions:
//   so(n): pair (i,j), i<j lexicographic -> E_ji - E_ij, so [e1,e2] = e3 on so(3).
//   su(n): i * (generalized Gell-Mann) in Gell-Mann order: for m = 2..n the
//          pairs (i,m) contribute the symmetric then antisymmetric generator,
//          followed by the (m-1)-th diagonal generator.
//   u(n):  su(n) basis followed by i*I.
class LieAlgebra {
 public:
  static LieAlgebra build_classical(Family family, int n);

  Family family() const { return family_; }
  int n() const { return n_; }
  int dim() const { return d_; }
  int rank() const { return rank_; }
  const std::string& name() const { return name_; }

  const Matrix& basis_matrix(int i) const { return basis_[i]; }
  const Eigen::MatrixXd& gram() const { return B_; }

  // Coordinate conversions for the defining representation.
  Matrix matrix(const AlgebraVector& x) const;
  AlgebraVector coords(const Matrix& X) const;

  double inner(const AlgebraVector& x, const AlgebraVector& y) const;
  double norm(const AlgebraVector& x) const;

  AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) const;
  Eigen::MatrixXd ad(const AlgebraVector& x) const;

  // Kernel dimension of ad(x). rank_tol scales the largest singular value.
  int centralizer_dim(const AlgebraVector& x, double rank_tol = 1e-9) const;

  // exp of the defining-representation matrix (Pade scaling-and-squaring via
  // Eigen), followed by an SVD polar projection restoring unitarity.
  Matrix exp_defining(const AlgebraVector& x) const;

  // Ad_g x for a group element g of the defining representation. Throws
  // std::invalid_argument if g fails the membership check for the family.
  AlgebraVector group_Ad(const Matrix& g, const AlgebraVector& x) const;
  // Matrix of Ad_g on algebra coordinates.
  Eigen::MatrixXd group_Ad(const Matrix& g) const;

  // Gaussian sample conditioned on centralizer_dim == rank. Bounded retries;
  // throws std::runtime_error on exhaustion.
  AlgebraVector random_regular(std::uint64_t seed, int max_tries = 100) const;

  // B-orthonormal basis of the B-orthogonal complement of span(cols).
  Eigen::MatrixXd orthocomplement(const Eigen::MatrixXd& cols) const;

  // B-orthonormalize the span of cols (rank-revealing; drops dependent
  // directions below rank_tol relative to the largest singular value).
  Eigen::MatrixXd b_orthonormalize(const Eigen::MatrixXd& cols,
                                   double rank_tol = 1e-12) const;

  // B-orthogonal projector onto span(cols) applied to x; cols B-orthonormal.
  AlgebraVector project(const Eigen::MatrixXd& cols,
                        const AlgebraVector& x) const;

  bool is_group_element(const Matrix& g, double tol = 1e-10) const;

 private:
  LieAlgebra() = default;

  Family family_{};
  int n_ = 0;
  int d_ = 0;
  int rank_ = 0;
  std::string name_;
  std::vector<Matrix> basis_;
  Eigen::MatrixXd B_;       // Gram matrix of the basis
  Eigen::MatrixXd Binv_;
  Eigen::MatrixXd Bh_;      // B^(1/2)
  Eigen::MatrixXd Bhinv_;
  std::vector<Eigen::MatrixXd> adbasis_;  // adbasis_[i](k,j) = c^k_{ij}
};

// Subalgebra given by a B-orthonormal coordinate basis. Factories verify
// closure: bracket of any two columns stays in the span to 1e-10.
struct SubalgebraEmbedding {
  std::string name;
  Eigen::MatrixXd basis;  // d x k, B-orthonormal

  int dim() const { return static_cast<int>(basis.cols()); }
};

SubalgebraEmbedding embedding_from_matrices(const LieAlgebra& alg,
                                            const std::vector<Matrix>& gens,
                                            const std::string& name);
// so(k) block on a subset of coordinate axes (1-based indices).
SubalgebraEmbedding so_block_embedding(const LieAlgebra& alg,
                                       const std::vector<int>& indices);
// Circle subgroup of su(n)/u(n): generator i*diag(weights). su requires the
// weights to sum to zero.
SubalgebraEmbedding circle_embedding(const LieAlgebra& alg,
                                     const std::vector<int>& weights);
// Maximal torus of su(n): the diagonal generators.
SubalgebraEmbedding torus_embedding(const LieAlgebra& alg);
// so(3) of real antisymmetric matrices inside su(3).
SubalgebraEmbedding so3_in_su3_embedding(const LieAlgebra& alg);
SubalgebraEmbedding trivial_embedding(const LieAlgebra& alg);

}  // namespace lieflow

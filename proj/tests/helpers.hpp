#pragma once

#include <Eigen/Dense>

#include "lieflow/algebra.hpp"
#include "lieflow/rng.hpp"

namespace testutil {

inline lieflow::AlgebraVector unit_gaussian(const lieflow::LieAlgebra& alg,
                                            lieflow::Rng& rng) {
  lieflow::AlgebraVector x = rng.gaussian_vector(alg.dim());
  return x / alg.norm(x);
}

// Coordinates of a defining-representation matrix, solved against the Gram
// matrix assembled here, independently of LieAlgebra::coords.
inline lieflow::AlgebraVector oracle_coords(const lieflow::LieAlgebra& alg,
                                            const lieflow::Matrix& X) {
  const int d = alg.dim();
  Eigen::MatrixXd G(d, d);
  Eigen::VectorXd rhs(d);
  for (int i = 0; i < d; ++i) {
    rhs[i] = -(X * alg.basis_matrix(i)).trace().real();
    for (int j = 0; j < d; ++j)
      G(i, j) = -(alg.basis_matrix(i) * alg.basis_matrix(j)).trace().real();
  }
  return G.ldlt().solve(rhs);
}

// Bracket through the defining representation only.
inline lieflow::AlgebraVector oracle_bracket(const lieflow::LieAlgebra& alg,
                                             const lieflow::AlgebraVector& x,
                                             const lieflow::AlgebraVector& y) {
  const lieflow::Matrix X = alg.matrix(x), Y = alg.matrix(y);
  return oracle_coords(alg, X * Y - Y * X);
}

}  // namespace testutil

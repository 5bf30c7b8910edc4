#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "lieflow/linsub.hpp"
#include "lieflow/rng.hpp"

using namespace lieflow;

namespace {

// Linear map preserving the standard form: exp(omega^{-1} P), P symmetric.
Eigen::MatrixXd random_symplectomorphism(const SymplecticForm& form, Rng& rng,
                                         double scale = 0.4) {
  const int n = form.ambient();
  Eigen::MatrixXd A(n, n);
  for (int j = 0; j < n; ++j) A.col(j) = rng.gaussian_vector(n);
  const Eigen::MatrixXd P = scale * 0.5 * (A + A.transpose());
  const Eigen::MatrixXd K = form.omega.partialPivLu().solve(P);
  return K.exp();
}

}  // namespace

TEST_CASE("from_columns orthonormalizes and cuts rank") {
  Eigen::MatrixXd cols(4, 3);
  cols.col(0) << 1, 0, 0, 0;
  cols.col(1) << 1, 1e-13, 0, 0;  // dependent up to noise
  cols.col(2) << 0, 0, 2, 0;
  const Subspace s = Subspace::from_columns(cols);
  CHECK(s.dim() == 2);
  CHECK((s.Q.transpose() * s.Q - Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  CHECK(Subspace::zero(5).dim() == 0);
  CHECK(Subspace::full(5).dim() == 5);
}

TEST_CASE("inclusion and equality residuals are principal-angle sines") {
  Eigen::MatrixXd a(3, 1), b(3, 2), c(3, 1);
  a << 1, 0, 0;
  b.setZero();
  b(0, 0) = 1;
  b(1, 1) = 1;
  c << 0, 0, 1;
  const Subspace A = Subspace::from_columns(a);
  const Subspace B = Subspace::from_columns(b);
  const Subspace C = Subspace::from_columns(c);
  CHECK(inclusion_residual(A, B) < 1e-14);
  CHECK(inclusion_residual(B, A) > 0.99);
  CHECK(inclusion_residual(C, B) == doctest::Approx(1.0));
  CHECK(subspace_equal(A, A));
  CHECK(!subspace_equal(A, B));

  // 45-degree line against the first axis: sine of the angle.
  Eigen::MatrixXd d(3, 1);
  d << 1, 1, 0;
  CHECK(inclusion_residual(Subspace::from_columns(d), A) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
}

TEST_CASE("sum and intersection obey the dimension formula") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6;
    // Shared part of dimension s, then independent tails.
    const int s = trial % 3;
    Eigen::MatrixXd shared(n, s);
    for (int j = 0; j < s; ++j) shared.col(j) = rng.gaussian_vector(n);
    Eigen::MatrixXd a(n, s + 2), b(n, s + 2);
    a.leftCols(s) = shared;
    b.leftCols(s) = shared;
    for (int j = 0; j < 2; ++j) {
      a.col(s + j) = rng.gaussian_vector(n);
      b.col(s + j) = rng.gaussian_vector(n);
    }
    const Subspace A = Subspace::from_columns(a);
    const Subspace B = Subspace::from_columns(b);
    const Subspace S = sum(A, B);
    const Subspace I = intersect(A, B);
    CHECK(S.dim() == A.dim() + B.dim() - I.dim());
    CHECK(I.dim() == s);  // generic tails only meet in the shared part
    CHECK(inclusion_residual(I, A) < 1e-9);
    CHECK(inclusion_residual(I, B) < 1e-9);
    CHECK(inclusion_residual(A, S) < 1e-9);
  }
}

TEST_CASE("standard form pairs coordinates with their momenta") {
  const SymplecticForm form = SymplecticForm::standard(6);
  CHECK(form.ambient() == 6);
  CHECK((form.omega + form.omega.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::VectorXd q1 = Eigen::VectorXd::Zero(6), p1 = q1, q2 = q1;
  q1[0] = 1;
  p1[3] = 1;
  q2[1] = 1;
  CHECK(form.eval(q1, p1) == doctest::Approx(1.0));
  CHECK(form.eval(p1, q1) == doctest::Approx(-1.0));
  CHECK(form.eval(q1, q2) == doctest::Approx(0.0));
}

TEST_CASE("symplectic orthogonal dimensions and involution") {
  const SymplecticForm form = SymplecticForm::standard(6);
  Rng rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const int k = 1 + trial % 5;
    Eigen::MatrixXd cols(6, k);
    for (int j = 0; j < k; ++j) cols.col(j) = rng.gaussian_vector(6);
    const Subspace W = Subspace::from_columns(cols);
    const Subspace Wo = symplectic_orthogonal(W, form);
    CHECK(Wo.dim() == 6 - W.dim());
    CHECK(equality_residual(symplectic_orthogonal(Wo, form), W) < 1e-9);
  }
}

TEST_CASE("isotropic, coisotropic, Lagrangian classification") {
  const SymplecticForm form = SymplecticForm::standard(4);
  Eigen::MatrixXd qq(4, 2);
  qq.setZero();
  qq(0, 0) = 1;
  qq(1, 1) = 1;  // span{q1, q2}: Lagrangian
  const Subspace L = Subspace::from_columns(qq);
  CHECK(coisotropy_check(L, form).coisotropic);
  CHECK(equality_residual(symplectic_orthogonal(L, form), L) < 1e-12);

  Eigen::MatrixXd line(4, 1);
  line.setZero();
  line(0, 0) = 1;  // isotropic line is not coisotropic in dim 4
  CHECK(!coisotropy_check(Subspace::from_columns(line), form).coisotropic);

  Eigen::MatrixXd three(4, 3);
  three.setZero();
  three(0, 0) = 1;
  three(1, 1) = 1;
  three(2, 2) = 1;  // contains its orthogonal: coisotropic
  CHECK(coisotropy_check(Subspace::from_columns(three), form).coisotropic);
}

TEST_CASE("skew complement identity on a split pair") {
  const SymplecticForm form = SymplecticForm::standard(4);
  Eigen::MatrixXd w1(4, 2), w2(4, 2);
  w1.setZero();
  w2.setZero();
  w1(0, 0) = 1;
  w1(2, 1) = 1;  // span{q1, p1}
  w2(1, 0) = 1;
  w2(3, 1) = 1;  // span{q2, p2}
  const auto rep = skew_complement_check(Subspace::from_columns(w1),
                                         Subspace::from_columns(w2), form);
  CHECK(rep.preconditions_ok);
  CHECK(rep.dims_ok);
  CHECK(rep.pairing_residual < 1e-12);
  CHECK(rep.verdict);
  CHECK(rep.equality_residual < 1e-10);
}

TEST_CASE("skew complement check refuses violated preconditions") {
  const SymplecticForm form = SymplecticForm::standard(4);
  Eigen::MatrixXd w1(4, 2), w2(4, 2);
  w1.setZero();
  w2.setZero();
  w1(0, 0) = 1;
  w1(2, 1) = 1;          // span{q1, p1}
  w2(0, 0) = 1;
  w2(2, 1) = 1;
  w2(1, 0) = 0.0;
  // w2 = w1: pairing omega(q1, p1) = 1 violates the orthogonality.
  auto rep = skew_complement_check(Subspace::from_columns(w1),
                                   Subspace::from_columns(w2), form);
  CHECK(!rep.preconditions_ok);
  CHECK(rep.pairing_residual > 0.5);

  // Right pairing but wrong dimension count.
  Eigen::MatrixXd small(4, 1);
  small.setZero();
  small(1, 0) = 1;  // span{q2}, omega(W1, q2) = 0, dims 2 + 1 != 4
  rep = skew_complement_check(Subspace::from_columns(w1),
                              Subspace::from_columns(small), form);
  CHECK(!rep.preconditions_ok);
  CHECK(!rep.dims_ok);
}

TEST_CASE("skew complement identity survives random symplectic conjugation") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 4;
    const SymplecticForm form = SymplecticForm::standard(2 * m);
    // Partition the pair indices: A to W1, C to W2, B shared as isotropic
    // {q_j}. Then W1 cap W2 = span{q_B} = (W1 + W2)^omega.
    std::vector<int> A, B, C;
    for (int i = 0; i < m; ++i) {
      const int bucket = static_cast<int>(rng.uniform() * 3.0);
      (bucket == 0 ? A : bucket == 1 ? B : C).push_back(i);
    }
    const Eigen::MatrixXd S = random_symplectomorphism(form, rng);
    auto col = [&](int i, bool momentum) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(2 * m);
      e[i + (momentum ? m : 0)] = 1.0;
      return Eigen::VectorXd(S * e);
    };
    Eigen::MatrixXd w1(2 * m, 2 * A.size() + B.size());
    Eigen::MatrixXd w2(2 * m, 2 * C.size() + B.size());
    int c1 = 0, c2 = 0;
    for (int i : A) {
      w1.col(c1++) = col(i, false);
      w1.col(c1++) = col(i, true);
    }
    for (int i : C) {
      w2.col(c2++) = col(i, false);
      w2.col(c2++) = col(i, true);
    }
    for (int i : B) {
      w1.col(c1++) = col(i, false);
      w2.col(c2++) = col(i, false);
    }
    const auto rep = skew_complement_check(Subspace::from_columns(w1),
                                           Subspace::from_columns(w2), form);
    CHECK(rep.preconditions_ok);
    CHECK(rep.verdict);
    CHECK(rep.equality_residual < 1e-8);
  }
}

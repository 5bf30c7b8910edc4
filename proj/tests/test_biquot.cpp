#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <stdexcept>

#include "helpers.hpp"
#include "lieflow/algebra.hpp"
#include "lieflow/biquot.hpp"
#include "lieflow/linsub.hpp"
#include "lieflow/rng.hpp"

using namespace lieflow;

namespace {

Biquotient su3_circles() {
  const LieAlgebra su3 = LieAlgebra::build_classical(Family::SU, 3);
  return Biquotient(su3, circle_embedding(su3, {1, -1, 0}),
                    circle_embedding(su3, {1, 1, -2}));
}

Biquotient so5_blocks() {
  const LieAlgebra so5 = LieAlgebra::build_classical(Family::SO, 5);
  return Biquotient(so5, so_block_embedding(so5, {1, 2}),
                    so_block_embedding(so5, {3, 4, 5}));
}

}  // namespace

TEST_CASE("constructor: dimensions and the trivial-intersection guard") {
  const Biquotient a = su3_circles();
  CHECK(a.dim_left() == 1);
  CHECK(a.dim_right() == 1);
  CHECK(a.quotient_dim() == 6);

  const Biquotient b = so5_blocks();
  CHECK(b.dim_left() == 1);
  CHECK(b.dim_right() == 3);
  CHECK(b.quotient_dim() == 6);

  // The same circle on both sides intersects itself; not a free action.
  const LieAlgebra su3 = LieAlgebra::build_classical(Family::SU, 3);
  CHECK_THROWS_AS(Biquotient(su3, circle_embedding(su3, {1, -1, 0}),
                             circle_embedding(su3, {1, -1, 0})),
                  std::invalid_argument);
}

TEST_CASE("side bases are B-orthonormal") {
  const Biquotient bq = so5_blocks();
  const Eigen::MatrixXd B = bq.algebra().gram();
  const Eigen::MatrixXd K = bq.left_basis();
  const Eigen::MatrixXd H = bq.right_basis();
  CHECK((K.transpose() * B * K -
         Eigen::MatrixXd::Identity(K.cols(), K.cols()))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK((H.transpose() * B * H -
         Eigen::MatrixXd::Identity(H.cols(), H.cols()))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("sampled freeness holds for both reference presets") {
  const FreenessReport a = freeness_check(su3_circles(), 12, 71);
  CHECK(a.samples == 12);
  CHECK(a.max_stabilizer_dim == 0);
  CHECK(a.free_at_samples);

  const FreenessReport b = freeness_check(so5_blocks(), 12, 73);
  CHECK(b.free_at_samples);
}

TEST_CASE("slice samples are unit and orthogonal to both sides") {
  const Biquotient bq = su3_circles();
  const LieAlgebra& g = bq.algebra();
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    const AlgebraVector xi = sample_C(bq, seed);
    CHECK(xi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const Eigen::VectorXd lk = bq.left_basis().transpose() * g.gram() * xi;
    const Eigen::VectorXd lh = bq.right_basis().transpose() * g.gram() * xi;
    CHECK(lk.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(lh.cwiseAbs().maxCoeff() < 1e-12);
  }
  // Distinct seeds give distinct points.
  CHECK((sample_C(bq, 5) - sample_C(bq, 6)).norm() > 1e-3);
}

TEST_CASE("slice tangent sits inside the left-orthogonal complement") {
  const Biquotient bq = so5_blocks();
  const LieAlgebra& g = bq.algebra();
  const AlgebraVector xi = sample_C(bq, 11);
  const Subspace tc = tangent_C(bq, xi);
  CHECK(tc.dim() > 0);
  // Every tangent direction pairs to zero with k under B.
  const Eigen::MatrixXd pair =
      bq.left_basis().transpose() * g.gram() * tc.Q;
  CHECK(pair.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("the two defect-dimension routes agree at sampled slice points") {
  for (int preset = 0; preset < 2; ++preset) {
    const Biquotient bq = preset == 0 ? su3_circles() : so5_blocks();
    const std::uint64_t base = 90 + static_cast<std::uint64_t>(preset);
    for (int s = 0; s < 8; ++s) {
      const AlgebraVector xi =
          sample_C(bq, derive_seed(base, static_cast<std::uint64_t>(s)));
      const BiquotientSampleDims dims = biquotient_sample_dims(bq, xi);
      CHECK(dims.routes_agree);
      CHECK(dims.ddim_left_a == dims.ddim_left_b);
      CHECK(dims.ddim_right_a == dims.ddim_right_b);
    }
  }
}

TEST_CASE("defect dimensions sum to twice the quotient dimension") {
  const BiquotientIdentityReport a =
      dimension_identity_check(su3_circles(), 24, 101);
  CHECK(a.samples == 24);
  CHECK(a.expected == 12);
  CHECK(a.mode_sum == 12);
  CHECK(a.conclusive);
  CHECK(a.holds);
  CHECK(a.route_disagreements == 0);

  const BiquotientIdentityReport b =
      dimension_identity_check(so5_blocks(), 24, 103);
  CHECK(b.expected == 12);
  CHECK(b.mode_sum == 12);
  CHECK(b.mode_left == 8);
  CHECK(b.mode_right == 4);
  CHECK(b.holds);
}

TEST_CASE("horizontal geodesics keep both trivialized velocities") {
  for (int preset = 0; preset < 2; ++preset) {
    const Biquotient bq = preset == 0 ? su3_circles() : so5_blocks();
    const HorizontalGeodesicReport rep =
        horizontal_geodesic(bq, 55 + static_cast<std::uint64_t>(preset),
                            3.0, 0.05, 4);
    CHECK(rep.velocity_drift < 1e-10);
    CHECK(rep.body_velocity_drift < 1e-10);
    CHECK(rep.horizontality_residual < 1e-10);
    CHECK(rep.group_residual < 1e-10);
    CHECK(rep.record.rows() > 2);
  }
}

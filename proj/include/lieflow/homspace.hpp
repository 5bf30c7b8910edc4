#pragma once

#include <cstdint>

#include "lieflow/algebra.hpp"
#include "lieflow/linsub.hpp"
#include "lieflow/poisson.hpp"
#include "lieflow/trajectory.hpp"

namespace lieflow {

// Cotangent bundle of G/H in the exponential chart at the base point o = eH.
// g = h (+) v with v the invariant-product orthocomplement, so the
// decomposition is reductive. A chart point z = (u, w) in R^(2m) holds the
// v-coefficients of u (base point exp(u)o) and of the covector w, both in a
// fixed B-orthonormal basis of v. The canonical form is om = -d theta with
// theta(u,w)(du,dw) = <w, P_v(T(u) du)>, T(u) = (1 - e^{-ad_u})/ad_u.
class HomogeneousSpace {
 public:
  HomogeneousSpace(const LieAlgebra& g, const SubalgebraEmbedding& h);

  const LieAlgebra& algebra() const { return g_; }
  const std::string& isotropy_name() const { return h_name_; }
  int dim_h() const { return static_cast<int>(H_.cols()); }
  int m() const { return static_cast<int>(V_.cols()); }
  int phase_dim() const { return 2 * m(); }
  const Eigen::MatrixXd& isotropy_basis() const { return H_; }    // d x dim_h
  const Eigen::MatrixXd& horizontal_basis() const { return V_; }  // d x m

  // v-coefficients <-> algebra coordinates.
  AlgebraVector lift(const Eigen::VectorXd& coeffs) const;
  Eigen::VectorXd project_v(const AlgebraVector& x) const;
  AlgebraVector project_h(const AlgebraVector& x) const;  // component in h

  // T(u) as a matrix on algebra coordinates; series summed to 1e-14.
  Eigen::MatrixXd dexp_left(const AlgebraVector& u) const;

  // Phi(u, w) = Ad_{exp u} w, in algebra coordinates.
  AlgebraVector moment_map(const Eigen::VectorXd& z) const;
  // Directional derivative of Phi by central differences.
  AlgebraVector moment_differential(const Eigen::VectorXd& z,
                                    const Eigen::VectorXd& dz,
                                    double step = 1e-5) const;

  double theta(const Eigen::VectorXd& z, const Eigen::VectorXd& dz) const;

  // om_ij = -(d_i theta_j - d_j theta_i), five-point central differences
  // with the given step. Throws when the result is degenerate.
  SymplecticForm symplectic_form_at(const Eigen::VectorXd& z,
                                    double step = 2e-3) const;
  // Closed form at u = 0: [[C, I], [-I, 0]], C_ij = <w, [e_i, e_j]>.
  SymplecticForm symplectic_form_origin(const Eigen::VectorXd& w) const;

  // Action field of eta at (0, w): (P_v eta, [P_h eta, w]) in chart coords.
  Eigen::VectorXd action_field_origin(const AlgebraVector& eta,
                                      const Eigen::VectorXd& w) const;
  // span{ action_field_origin(basis) }.
  Subspace orbit_tangent_origin(const Eigen::VectorXd& w) const;

  // Pullback f_eta(z) = <Phi(z), eta> of a momentum coordinate.
  ScalarFunction momentum_function(const AlgebraVector& eta) const;

 private:
  LieAlgebra g_;
  std::string h_name_;
  Eigen::MatrixXd H_;  // B-orthonormal basis of h
  Eigen::MatrixXd V_;  // B-orthonormal basis of v
};

// Verifies, at the chart point (0, w), that each sampled eta satisfies the
// momentum identity i_{sigma(eta)} om = +d f_eta with om from the finite-
// difference route, and that pairwise momenta reproduce the Lie bracket,
// {f_eta, f_zeta}(0, w) = <w, [eta, zeta]>.
struct MomentumActionReport {
  double identity_residual = 0.0;
  double morphism_residual = 0.0;
  int samples = 0;
};
MomentumActionReport noether_check(const HomogeneousSpace& hs,
                                   const Eigen::VectorXd& w, int samples,
                                   std::uint64_t seed);

// For a collective Hamiltonian h(Phi): the chart flow pushes forward to the
// coordinate Euler field, dPhi(X_{h o Phi}) = [Phi, B^{-1} grad h(Phi)].
// Both sides are measured (FD moment differential against the algebraic
// bracket) at sampled chart points near the origin.
struct CollectiveReport {
  double field_residual = 0.0;
  int samples = 0;
};
CollectiveReport collective_consistency(const HomogeneousSpace& hs,
                                        const ScalarFunction& h_on_g,
                                        int samples, std::uint64_t seed,
                                        double scale = 0.3);

// Defect dimensions of the family {momenta} + {invariants} at a generic
// (0, w): by the stabilizer formula (ddim = dim M + dim G_z - dim G_mu,
// dind = dim G_mu - dim G_z) and by direct rank measurement. Also checks
// W1 = om^{-1} rowspace(dPhi) and W2 = (orbit tangent)^om satisfy
// W1^om = W2, and that W1 + W2 is coisotropic (equivalent to completeness).
// Non-generic samples are rejected and redrawn up to max_resamples times.
struct DimensionPairReport {
  int phase_dim = 0;
  int dim_gz = 0;   // stabilizer algebra of the chart point
  int dim_gmu = 0;  // centralizer of Phi
  int formula_ddim = 0;
  int formula_dind = 0;
  int rank_ddim = 0;
  int rank_dind = 0;
  bool formulas_match_ranks = false;
  bool complete = false;  // ddim + dind == phase_dim
  double w_equality_residual = 0.0;
  double coisotropy_residual = 0.0;
  bool coisotropic = false;
  int resamples = 0;
};
DimensionPairReport dimension_pair_check(const HomogeneousSpace& hs,
                                         std::uint64_t seed,
                                         int max_resamples = 5,
                                         double rank_tol = 1e-8);

// Normal-metric geodesic flow in the chart, H(u, w) = <w, w>/2, integrated
// with RK4 against the exact solution z(t) = (-t w0, w0) (the base curve is
// the one-parameter orbit through o). Tracks momentum and energy drift.
struct GeodesicReport {
  TrajectoryRecord record;
  double exact_residual = 0.0;
  double moment_drift = 0.0;
  double energy_drift = 0.0;
};
GeodesicReport geodesic_flow(const HomogeneousSpace& hs,
                             const Eigen::VectorXd& w0, double t_end,
                             double dt, int record_stride = 1);

// Closing of geodesics through o on the sphere SO(3)/SO(2): the base curve
// exp(t X) v0 (v0 the isotropy-fixed axis) must return after
// period = 2 pi / (spectral norm of the defining matrix X) and be far from
// the start at half period. Also cross-checks a short chart arc against the
// Hamiltonian route.
struct SphereClosingReport {
  double period = 0.0;
  double closure_error = 0.0;
  double midpoint_distance = 0.0;
  double chart_residual = 0.0;
  bool closed = false;
};
SphereClosingReport sphere_closing_check(const HomogeneousSpace& hs,
                                         const Eigen::VectorXd& w0,
                                         double t_chart = 0.5,
                                         double dt = 0.01);

}  // namespace lieflow

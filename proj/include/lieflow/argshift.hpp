#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lieflow/algebra.hpp"
#include "lieflow/poisson.hpp"
#include "lieflow/trajectory.hpp"

namespace lieflow {

// Generators of the invariant polynomial ring (trace powers, plus the
// Pfaffian on so(2m)). Values are real: Re tr X^k for even k, Im tr X^k for
// odd k (traces of odd powers of anti-Hermitian matrices are imaginary).
struct InvariantPolynomial {
  enum class Kind { TraceReal, TraceImag, Pfaffian };

  Kind kind = Kind::TraceReal;
  int power = 0;   // trace exponent; unused for the Pfaffian
  int degree = 0;  // polynomial degree in the coordinates
  std::string label;

  double value(const LieAlgebra& alg, const AlgebraVector& x) const;
  AlgebraVector gradient(const LieAlgebra& alg, const AlgebraVector& x) const;

  ScalarFunction as_function(const LieAlgebra& alg) const;
};

// Full generating set: rank(alg) algebraically independent generators.
// so(2m+1): tr^2..tr^{2m}; so(2m): tr^2..tr^{2m-2} and the Pfaffian;
// su(n): tr^2..tr^n. Throws for u(n) (the center makes the convention
// ambiguous; shift families are built on the semisimple part).
std::vector<InvariantPolynomial> invariant_generators(const LieAlgebra& alg);

// Pfaffian of an antisymmetric matrix by first-row expansion, templated so
// the same code path serves values and complex-step derivatives.
std::complex<double> pfaffian(const Matrix& A);

// One coefficient p_i of p(x + lambda a) = sum_i p_i(x) lambda^i, extracted
// by sampling lambda at Chebyshev nodes and solving the Vandermonde system.
struct ShiftCoefficient {
  int source = 0;  // generator index
  int order = 0;   // power of lambda
  bool constant = false;  // top coefficient p_deg = p(a); has zero gradient
  ScalarFunction fn;
};

struct ShiftFamily {
  AlgebraVector shift;  // the element a
  std::vector<InvariantPolynomial> generators;
  std::vector<ShiftCoefficient> coefficients;  // all of them, constants included
  std::vector<int> working;  // indices of the non-constant coefficients

  // The non-constant coefficients as a bracket-testable family.
  FunctionFamily family() const;
  int working_size() const { return static_cast<int>(working.size()); }
};

ShiftFamily make_shift_family(const LieAlgebra& alg, const AlgebraVector& a);

// sum_i p_i(x) lambda^i over every stored coefficient of one generator.
// Oracle hook: must match generators[source].value(alg, x + lambda*a).
double reconstruct_shift(const ShiftFamily& fam, int source, double lambda,
                         const AlgebraVector& x);

// Worst normalized pairwise bracket over sampled points:
// |{f_i,f_j}(x)| / (|grad f_i| |grad f_j| + eps).
struct InvolutivityReport {
  double max_residual = 0.0;
  int samples = 0;
  int worst_i = -1;
  int worst_j = -1;
};

InvolutivityReport involutivity_check(const LieAlgebra& alg,
                                      const FunctionFamily& family,
                                      int samples, std::uint64_t seed,
                                      double scale = 1.0);

// Completeness on the orbit through mu: the Hamiltonian fields of the family
// must span half the orbit tangent, dim span [B^{-1} grad f_i, mu] ==
// (dim g - dim centralizer(mu)) / 2.
struct OrbitCompletenessReport {
  int span_dim = 0;
  int orbit_dim = 0;
  bool complete = false;
};

OrbitCompletenessReport orbit_completeness(const LieAlgebra& alg,
                                           const FunctionFamily& family,
                                           const AlgebraVector& mu,
                                           double rank_tol = 1e-9);

// phi = U D U^T B + V C V^T B with U a B-orthonormal centralizer basis of a,
// V a B-orthonormal basis of [a,g], and C solving ad_a(V c_j) = ad_b(V e_j)
// column by column. Requires [a,b] = 0; B phi is then symmetric, so phi is
// self-adjoint for the invariant product.
struct SectionalOperator {
  AlgebraVector a;
  AlgebraVector b;
  Eigen::MatrixXd phi;           // coordinate matrix, d x d
  double symmetry_residual = 0;  // |B phi - (B phi)^T| / |B phi|
  double solve_residual = 0;     // worst relative least-squares residual
};

SectionalOperator sectional_operator(const LieAlgebra& alg,
                                     const AlgebraVector& a,
                                     const AlgebraVector& b,
                                     const Eigen::VectorXd& centralizer_diag);

// h(xi) = <phi xi, xi>/2, grad h = B phi xi.
ScalarFunction sectional_hamiltonian(const LieAlgebra& alg,
                                     const SectionalOperator& op);

// Sign of the coordinate Euler vector field xi' = sign * [xi, B^{-1} grad h].
// +1 makes the flow of h = <phi xi, xi>/2 agree with d/dt Ad_{exp(tw)} for
// the isometry-generated fields checked in the homogeneous-space module.
inline constexpr double kEulerSign = 1.0;

// Fixed-step RK4 for the Euler vector field, recording the state and the
// tracked functions every record_stride steps (plus the final state).
// Throws on non-finite states.
TrajectoryRecord euler_flow(const LieAlgebra& alg, const ScalarFunction& h,
                            const AlgebraVector& xi0, double t_end, double dt,
                            const FunctionFamily& tracked,
                            int record_stride = 1);

}  // namespace lieflow

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lieflow/algebra.hpp"
#include "lieflow/linsub.hpp"

namespace lieflow {

// Scalar function on R^N. grad may be empty, in which case central finite
// differences with step 1e-6*(1+|coordinate|) are used.
struct ScalarFunction {
  std::string label;
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
};

Eigen::VectorXd gradient(const ScalarFunction& f, const Eigen::VectorXd& x);
Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x);

struct FunctionFamily {
  int dimension = 0;  // phase-space dimension N
  std::vector<ScalarFunction> members;

  int size() const { return static_cast<int>(members.size()); }
};

// Deterministic point source: index -> sample.
using Sampler = std::function<Eigen::VectorXd(int)>;
Sampler gaussian_sampler(int dimension, std::uint64_t seed, double scale = 1.0);

// Poisson structure: canonical on (R^m, omega) with {f,g} = -grad f^T
// omega^{-1} grad g, or Lie-Poisson on g* identified with g through B, with
// {f,g}(m) = <m, [B^{-1} grad f, B^{-1} grad g]>.
class PhaseSpace {
 public:
  static PhaseSpace canonical(const SymplecticForm& form);
  static PhaseSpace lie_poisson(const LieAlgebra& alg);

  int dimension() const { return dim_; }
  bool is_lie_poisson() const { return lie_; }

  // Bivector pi(x): {f,g}(x) = grad f(x)^T pi(x) grad g(x).
  Eigen::MatrixXd bivector(const Eigen::VectorXd& x) const;
  double bracket(const ScalarFunction& f, const ScalarFunction& g,
                 const Eigen::VectorXd& x) const;

 private:
  PhaseSpace() = default;
  int dim_ = 0;
  bool lie_ = false;
  Eigen::MatrixXd pi_const_;            // canonical case
  std::vector<Eigen::MatrixXd> pi_k_;   // Lie-Poisson: pi(m) = sum m_k pi_k
};

double lie_poisson_bracket(const LieAlgebra& alg, const ScalarFunction& f,
                           const ScalarFunction& g, const AlgebraVector& mu);

// {f,g} as a function (finite-difference gradients), for nested brackets.
ScalarFunction poisson_bracket_function(const PhaseSpace& space,
                                        const ScalarFunction& f,
                                        const ScalarFunction& g);

struct DdimReport {
  int value = 0;           // max rank over sampled points
  bool conclusive = false; // modal agreement of at least 90%
  double min_kept = 0.0;   // worst kept singular value / sigma_max
  double max_cut = 0.0;    // worst discarded singular value / sigma_max
  std::vector<int> ranks;
};

struct DindReport {
  int value = 0;           // modal corank of the restricted bracket Gram
  bool conclusive = false;
  std::vector<int> coranks;
};

DdimReport ddim(const FunctionFamily& family, const Sampler& sampler,
                int samples, double rank_tol = 1e-9);
DindReport dind(const PhaseSpace& space, const FunctionFamily& family,
                const Sampler& sampler, int samples, double rank_tol = 1e-9);

struct CompletenessReport {
  int dim_m = 0;
  DdimReport ddim;
  DindReport dind;
  bool complete = false;
  bool conclusive = false;
};
CompletenessReport completeness_check(const PhaseSpace& space,
                                      const FunctionFamily& family,
                                      const Sampler& sampler, int samples,
                                      double rank_tol = 1e-9);

// Canonical chart on a ball in so(3)*: G1 the azimuthal angle about the
// first axis (relative to the center), G2 twice the centered first
// coordinate (so {G1,G2} = 1 under this basis's Lie-Poisson scaling), G3 the
// centered radius-squared Casimir. Ball: sum G_i^2 < epsilon, kept away from
// the atan2 branch cut and the axis.
struct BumpChart {
  int l = 0;  // number of chart functions
  int q = 0;  // canonical pairs: {G_i, G_{i+q}} = 1 for i < q
  Eigen::VectorXd center;
  double epsilon = 0.0;
  std::vector<ScalarFunction> G;

  int n() const { return l - q; }
  double ball_value(const Eigen::VectorXd& x) const;  // sum G_i^2
  bool inside(const Eigen::VectorXd& x) const;
};

BumpChart so3_bump_chart(const Eigen::Vector3d& center = {0.3, 1.0, 0.0},
                         double epsilon = 0.25);

// Smooth commuting family supported on the chart ball: F_i = g(h) h_i with
// h_i = G_i^2 + G_{i+q}^2 (pairs) or G_{q+i}^2 (Casimir-type), h = sum h_i,
// and g the exp(-1/t) bump composed with a quadratic window. F_i vanish
// identically outside the ball.
FunctionFamily bump_family(const BumpChart& chart);

}  // namespace lieflow

#include "lieflow/poisson.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <stdexcept>

#include "lieflow/rng.hpp"

namespace lieflow {

namespace {

int rank_of(const Eigen::MatrixXd& m, double rank_tol, double* min_kept = nullptr,
            double* max_cut = nullptr) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv[0] <= 0.0) return 0;
  const double cut = rank_tol * sv[0];
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++r;
  if (min_kept) *min_kept = r ? sv[r - 1] / sv[0] : 0.0;
  if (max_cut) *max_cut = r < sv.size() ? sv[r] / sv[0] : 0.0;
  return r;
}

// Modal value and whether it carries at least 90% of the votes.
std::pair<int, bool> modal(const std::vector<int>& values) {
  std::map<int, int> counts;
  for (int v : values) ++counts[v];
  int best = 0, best_count = -1;
  for (auto [v, c] : counts)
    if (c > best_count) best = v, best_count = c;
  return {best, best_count * 10 >= static_cast<int>(values.size()) * 9};
}

}  // namespace

Eigen::VectorXd fd_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd p = x;
  for (int i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * (1.0 + std::abs(x[i]));
    const double xi = x[i];
    p[i] = xi + h;
    const double fp = f(p);
    p[i] = xi - h;
    const double fm = f(p);
    p[i] = xi;
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

Eigen::VectorXd gradient(const ScalarFunction& f, const Eigen::VectorXd& x) {
  if (f.grad) return f.grad(x);
  return fd_gradient(f.value, x);
}

Sampler gaussian_sampler(int dimension, std::uint64_t seed, double scale) {
  return [dimension, seed, scale](int index) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
    return (scale * rng.gaussian_vector(dimension)).eval();
  };
}

PhaseSpace PhaseSpace::canonical(const SymplecticForm& form) {
  PhaseSpace s;
  s.dim_ = form.ambient();
  s.lie_ = false;
  if ((form.omega + form.omega.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("symplectic form must be antisymmetric");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(form.omega);
  if (!lu.isInvertible())
    throw std::invalid_argument("symplectic form is degenerate");
  s.pi_const_ = -lu.inverse();
  return s;
}

PhaseSpace PhaseSpace::lie_poisson(const LieAlgebra& alg) {
  PhaseSpace s;
  s.dim_ = alg.dim();
  s.lie_ = true;
  const int d = alg.dim();
  const Eigen::MatrixXd Binv = alg.gram().ldlt().solve(
      Eigen::MatrixXd::Identity(d, d));
  s.pi_k_.assign(d, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const AlgebraVector v =
          alg.gram() * alg.bracket(Binv.col(i), Binv.col(j));
      for (int k = 0; k < d; ++k) {
        s.pi_k_[k](i, j) = v[k];
        s.pi_k_[k](j, i) = -v[k];
      }
    }
  return s;
}

Eigen::MatrixXd PhaseSpace::bivector(const Eigen::VectorXd& x) const {
  if (!lie_) return pi_const_;
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int k = 0; k < dim_; ++k)
    if (x[k] != 0.0) pi.noalias() += x[k] * pi_k_[k];
  return pi;
}

double PhaseSpace::bracket(const ScalarFunction& f, const ScalarFunction& g,
                           const Eigen::VectorXd& x) const {
  return gradient(f, x).dot(bivector(x) * gradient(g, x));
}

double lie_poisson_bracket(const LieAlgebra& alg, const ScalarFunction& f,
                           const ScalarFunction& g, const AlgebraVector& mu) {
  return PhaseSpace::lie_poisson(alg).bracket(f, g, mu);
}

ScalarFunction poisson_bracket_function(const PhaseSpace& space,
                                        const ScalarFunction& f,
                                        const ScalarFunction& g) {
  return {"{" + f.label + "," + g.label + "}",
          [space, f, g](const Eigen::VectorXd& x) {
            return space.bracket(f, g, x);
          },
          nullptr};
}

DdimReport ddim(const FunctionFamily& family, const Sampler& sampler,
                int samples, double rank_tol) {
  DdimReport rep;
  rep.min_kept = 1.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = sampler(s);
    Eigen::MatrixXd G(family.dimension, family.size());
    for (int i = 0; i < family.size(); ++i)
      G.col(i) = gradient(family.members[i], x);
    double kept = 0, cut = 0;
    const int r = rank_of(G, rank_tol, &kept, &cut);
    rep.ranks.push_back(r);
    rep.value = std::max(rep.value, r);
    rep.min_kept = std::min(rep.min_kept, kept);
    rep.max_cut = std::max(rep.max_cut, cut);
  }
  auto [mode, agree] = modal(rep.ranks);
  rep.conclusive = agree && mode == rep.value;
  return rep;
}

DindReport dind(const PhaseSpace& space, const FunctionFamily& family,
                const Sampler& sampler, int samples, double rank_tol) {
  DindReport rep;
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = sampler(s);
    Eigen::MatrixXd G(family.dimension, family.size());
    for (int i = 0; i < family.size(); ++i)
      G.col(i) = gradient(family.members[i], x);
    // Independent subset by column-pivoted QR, then the bracket Gram on it.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(G);
    qr.setThreshold(rank_tol);
    const int r = static_cast<int>(qr.rank());
    const auto perm = qr.colsPermutation().indices();
    const Eigen::MatrixXd pi = space.bivector(x);
    Eigen::MatrixXd ind(family.dimension, r);
    for (int i = 0; i < r; ++i) ind.col(i) = G.col(perm[i]);
    const Eigen::MatrixXd gram = ind.transpose() * pi * ind;
    rep.coranks.push_back(r - rank_of(gram, rank_tol));
  }
  auto [mode, agree] = modal(rep.coranks);
  rep.value = mode;
  rep.conclusive = agree;
  return rep;
}

CompletenessReport completeness_check(const PhaseSpace& space,
                                      const FunctionFamily& family,
                                      const Sampler& sampler, int samples,
                                      double rank_tol) {
  CompletenessReport rep;
  rep.dim_m = space.dimension();
  rep.ddim = ddim(family, sampler, samples, rank_tol);
  rep.dind = dind(space, family, sampler, samples, rank_tol);
  rep.complete = (rep.ddim.value + rep.dind.value == rep.dim_m);
  rep.conclusive = rep.ddim.conclusive && rep.dind.conclusive;
  return rep;
}

double BumpChart::ball_value(const Eigen::VectorXd& x) const {
  double s = 0;
  for (const auto& g : G) {
    const double v = g.value(x);
    s += v * v;
  }
  return s;
}

bool BumpChart::inside(const Eigen::VectorXd& x) const {
  return ball_value(x) < epsilon;
}

BumpChart so3_bump_chart(const Eigen::Vector3d& center, double epsilon) {
  const double rho2c = center[1] * center[1] + center[2] * center[2];
  if (rho2c <= 0.0)
    throw std::invalid_argument("bump chart center must avoid the first axis");
  BumpChart chart;
  chart.l = 3;
  chart.q = 1;
  chart.center = center;
  chart.epsilon = epsilon;
  const double theta0 = std::atan2(center[2], center[1]);
  chart.G.push_back(
      {"angle",
       [theta0](const Eigen::VectorXd& m) {
         return std::atan2(m[2], m[1]) - theta0;
       },
       [](const Eigen::VectorXd& m) {
         const double r2 = m[1] * m[1] + m[2] * m[2];
         return Eigen::Vector3d(0.0, -m[2] / r2, m[1] / r2).eval();
       }});
  const double c0 = center[0];
  chart.G.push_back({"axial",
                     [c0](const Eigen::VectorXd& m) { return 2 * (m[0] - c0); },
                     [](const Eigen::VectorXd&) {
                       return Eigen::Vector3d(2.0, 0.0, 0.0).eval();
                     }});
  const double r2c = center.squaredNorm();
  chart.G.push_back(
      {"casimir",
       [r2c](const Eigen::VectorXd& m) { return m.squaredNorm() - r2c; },
       [](const Eigen::VectorXd& m) { return (2.0 * m).eval(); }});
  return chart;
}

namespace {

// exp(-1/t) composed with the quadratic window 1 - (t/eps)^2.
double bump_value(double t, double eps) {
  const double s = t / eps;
  const double u = 1.0 - s * s;
  if (u <= 0.0) return 0.0;
  return std::exp(-1.0 / u);
}

double bump_derivative(double t, double eps) {
  const double s = t / eps;
  const double u = 1.0 - s * s;
  if (u <= 0.0) return 0.0;
  return std::exp(-1.0 / u) * (-2.0 * s / eps) / (u * u);
}

}  // namespace

FunctionFamily bump_family(const BumpChart& chart) {
  if (chart.l != static_cast<int>(chart.G.size()) || 2 * chart.q > chart.l)
    throw std::invalid_argument("inconsistent bump chart layout");
  const int n = chart.n();
  const int dim = static_cast<int>(chart.center.size());
  const double eps = chart.epsilon;

  // h_i(x) and grad h_i(x) from the chart functions.
  auto eval_h = [chart](const Eigen::VectorXd& x, int i) {
    if (i < chart.q) {
      const double a = chart.G[i].value(x);
      const double b = chart.G[i + chart.q].value(x);
      return a * a + b * b;
    }
    const double c = chart.G[chart.q + i].value(x);
    return c * c;
  };
  auto grad_h = [chart](const Eigen::VectorXd& x, int i) {
    if (i < chart.q)
      return (2 * chart.G[i].value(x) * chart.G[i].grad(x) +
              2 * chart.G[i + chart.q].value(x) * chart.G[i + chart.q].grad(x))
          .eval();
    return (2 * chart.G[chart.q + i].value(x) * chart.G[chart.q + i].grad(x))
        .eval();
  };

  FunctionFamily fam;
  fam.dimension = dim;
  for (int i = 0; i < n; ++i) {
    fam.members.push_back(
        {"F" + std::to_string(i + 1),
         [chart, eval_h, eps, n, i](const Eigen::VectorXd& x) {
           double h = 0;
           for (int j = 0; j < n; ++j) h += eval_h(x, j);
           if (h >= eps) return 0.0;
           return bump_value(h, eps) * eval_h(x, i);
         },
         [chart, eval_h, grad_h, eps, n, i, dim](const Eigen::VectorXd& x) {
           double h = 0;
           Eigen::VectorXd dh = Eigen::VectorXd::Zero(dim);
           for (int j = 0; j < n; ++j) {
             h += eval_h(x, j);
             dh += grad_h(x, j);
           }
           if (h >= eps) return Eigen::VectorXd::Zero(dim).eval();
           return (bump_derivative(h, eps) * eval_h(x, i) * dh +
                   bump_value(h, eps) * grad_h(x, i))
               .eval();
         }});
  }
  return fam;
}

}  // namespace lieflow

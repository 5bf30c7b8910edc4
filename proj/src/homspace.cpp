#include "lieflow/homspace.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lieflow/rng.hpp"

namespace lieflow {

HomogeneousSpace::HomogeneousSpace(const LieAlgebra& g,
                                   const SubalgebraEmbedding& h)
    : g_(g), h_name_(h.name) {
  if (h.dim() > 0 && h.basis.rows() != g.dim())
    throw std::invalid_argument("isotropy basis has wrong ambient dimension");
  H_ = h.dim() > 0 ? g_.b_orthonormalize(h.basis)
                   : Eigen::MatrixXd::Zero(g_.dim(), 0);
  V_ = g_.orthocomplement(H_);
  if (V_.cols() == 0)
    throw std::invalid_argument("isotropy equals the full algebra");

  // Reductivity guard: [h, v] must stay in v. Automatic for the invariant
  // orthocomplement, so any failure means a broken embedding.
  for (int i = 0; i < H_.cols(); ++i) {
    for (int j = 0; j < V_.cols(); ++j) {
      const AlgebraVector r = g_.bracket(H_.col(i), V_.col(j));
      if ((H_.transpose() * g_.gram() * r).norm() > 1e-10 * (1.0 + r.norm()))
        throw std::invalid_argument("decomposition is not reductive");
    }
  }
}

AlgebraVector HomogeneousSpace::lift(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != V_.cols())
    throw std::invalid_argument("horizontal coefficient size mismatch");
  return V_ * coeffs;
}

Eigen::VectorXd HomogeneousSpace::project_v(const AlgebraVector& x) const {
  return V_.transpose() * g_.gram() * x;
}

AlgebraVector HomogeneousSpace::project_h(const AlgebraVector& x) const {
  return H_ * (H_.transpose() * g_.gram() * x);
}

Eigen::MatrixXd HomogeneousSpace::dexp_left(const AlgebraVector& u) const {
  const Eigen::MatrixXd neg_ad = -g_.ad(u);
  const int d = g_.dim();
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd total = term;
  for (int k = 1; k <= 80; ++k) {
    term = (term * neg_ad) / static_cast<double>(k + 1);
    total += term;
    if (term.norm() <= 1e-14 * total.norm()) break;
  }
  return total;
}

AlgebraVector HomogeneousSpace::moment_map(const Eigen::VectorXd& z) const {
  if (z.size() != phase_dim())
    throw std::invalid_argument("chart point size mismatch");
  const AlgebraVector u = lift(z.head(m()));
  const AlgebraVector w = lift(z.tail(m()));
  const Eigen::MatrixXd Ad = g_.group_Ad(g_.exp_defining(u));
  return Ad * w;
}

AlgebraVector HomogeneousSpace::moment_differential(const Eigen::VectorXd& z,
                                                    const Eigen::VectorXd& dz,
                                                    double step) const {
  const double h = step / std::max(1.0, dz.norm());
  return (moment_map(z + h * dz) - moment_map(z - h * dz)) / (2.0 * h);
}

double HomogeneousSpace::theta(const Eigen::VectorXd& z,
                               const Eigen::VectorXd& dz) const {
  if (z.size() != phase_dim() || dz.size() != phase_dim())
    throw std::invalid_argument("chart point size mismatch");
  const AlgebraVector u = lift(z.head(m()));
  const AlgebraVector du = lift(dz.head(m()));
  const Eigen::VectorXd w = z.tail(m());
  return w.dot(project_v(dexp_left(u) * du));
}

SymplecticForm HomogeneousSpace::symplectic_form_at(const Eigen::VectorXd& z,
                                                    double step) const {
  const int n2 = phase_dim();
  if (z.size() != n2) throw std::invalid_argument("chart point size mismatch");

  // theta against every coordinate direction at once; only the u-slots of a
  // tangent see theta, through M = V^T B T(u) V.
  auto theta_all = [this](const Eigen::VectorXd& p) {
    const Eigen::MatrixXd M =
        V_.transpose() * g_.gram() * dexp_left(lift(p.head(m()))) * V_;
    Eigen::VectorXd t = Eigen::VectorXd::Zero(2 * m());
    t.head(m()) = M.transpose() * p.tail(m());
    return t;
  };

  // Five-point stencil: truncation ~ step^4, roundoff ~ eps/step, so the
  // default step keeps the entries near 1e-12 for long conservation runs.
  Eigen::MatrixXd D(n2, n2);
  for (int i = 0; i < n2; ++i) {
    Eigen::VectorXd z1 = z, z2 = z, z3 = z, z4 = z;
    z1[i] += 2.0 * step;
    z2[i] += step;
    z3[i] -= step;
    z4[i] -= 2.0 * step;
    D.row(i) = ((-theta_all(z1) + 8.0 * theta_all(z2) - 8.0 * theta_all(z3) +
                 theta_all(z4)) /
                (12.0 * step))
                   .transpose();
  }
  SymplecticForm form;
  form.omega = -(D - D.transpose());

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(form.omega);
  if (svd.singularValues()(n2 - 1) <= 1e-8 * svd.singularValues()(0))
    throw std::runtime_error("chart symplectic form is degenerate here");
  return form;
}

SymplecticForm HomogeneousSpace::symplectic_form_origin(
    const Eigen::VectorXd& w) const {
  const int k = m();
  if (w.size() != k) throw std::invalid_argument("fiber point size mismatch");
  const AlgebraVector wv = lift(w);
  Eigen::MatrixXd C(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      C(i, j) = g_.inner(wv, g_.bracket(V_.col(i), V_.col(j)));
  SymplecticForm form;
  form.omega.setZero(2 * k, 2 * k);
  form.omega.topLeftCorner(k, k) = C;
  form.omega.topRightCorner(k, k) = Eigen::MatrixXd::Identity(k, k);
  form.omega.bottomLeftCorner(k, k) = -Eigen::MatrixXd::Identity(k, k);
  return form;
}

Eigen::VectorXd HomogeneousSpace::action_field_origin(
    const AlgebraVector& eta, const Eigen::VectorXd& w) const {
  Eigen::VectorXd s(phase_dim());
  s.head(m()) = project_v(eta);
  s.tail(m()) = project_v(g_.bracket(project_h(eta), lift(w)));
  return s;
}

Subspace HomogeneousSpace::orbit_tangent_origin(
    const Eigen::VectorXd& w) const {
  Eigen::MatrixXd cols(phase_dim(), g_.dim());
  for (int k = 0; k < g_.dim(); ++k)
    cols.col(k) =
        action_field_origin(AlgebraVector::Unit(g_.dim(), k), w);
  return Subspace::from_columns(cols);
}

ScalarFunction HomogeneousSpace::momentum_function(
    const AlgebraVector& eta) const {
  ScalarFunction f;
  f.label = "momentum";
  const HomogeneousSpace* self = this;
  const Eigen::VectorXd beta = g_.gram() * eta;
  f.value = [self, beta](const Eigen::VectorXd& z) {
    return beta.dot(self->moment_map(z));
  };
  return f;
}

MomentumActionReport noether_check(const HomogeneousSpace& hs,
                                   const Eigen::VectorXd& w, int samples,
                                   std::uint64_t seed) {
  const int d = hs.algebra().dim();
  Eigen::VectorXd z = Eigen::VectorXd::Zero(hs.phase_dim());
  z.tail(hs.m()) = w;
  const SymplecticForm form = hs.symplectic_form_at(z);
  const PhaseSpace space = PhaseSpace::canonical(form);
  const AlgebraVector phi = hs.moment_map(z);

  MomentumActionReport rep;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const AlgebraVector eta = rng.gaussian_vector(d);
    const AlgebraVector zeta = rng.gaussian_vector(d);

    const ScalarFunction f = hs.momentum_function(eta);
    const Eigen::VectorXd grad_f = gradient(f, z);
    const Eigen::VectorXd sigma = hs.action_field_origin(eta, w);
    const double ident =
        (-(form.omega * sigma) - grad_f).norm() / (1.0 + grad_f.norm());
    rep.identity_residual = std::max(rep.identity_residual, ident);

    const ScalarFunction g = hs.momentum_function(zeta);
    const double pb = space.bracket(f, g, z);
    const double target = hs.algebra().inner(phi, hs.algebra().bracket(eta, zeta));
    const double morph = std::abs(pb - target) / (1.0 + std::abs(target));
    rep.morphism_residual = std::max(rep.morphism_residual, morph);
  }
  return rep;
}

CollectiveReport collective_consistency(const HomogeneousSpace& hs,
                                        const ScalarFunction& h_on_g,
                                        int samples, std::uint64_t seed,
                                        double scale) {
  const LieAlgebra& g = hs.algebra();
  const Eigen::LLT<Eigen::MatrixXd> llt(g.gram());

  CollectiveReport rep;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const Eigen::VectorXd z = scale * rng.gaussian_vector(hs.phase_dim());
    const SymplecticForm form = hs.symplectic_form_at(z);

    const auto chart_h = [&hs, &h_on_g](const Eigen::VectorXd& p) {
      return h_on_g.value(hs.moment_map(p));
    };
    const Eigen::VectorXd grad_h = fd_gradient(chart_h, z);
    const Eigen::VectorXd x_h = form.omega.partialPivLu().solve(grad_h);

    const AlgebraVector phi = hs.moment_map(z);
    const AlgebraVector lhs = hs.moment_differential(z, x_h);
    const AlgebraVector rhs =
        g.bracket(phi, llt.solve(gradient(h_on_g, phi)));
    const double res = (lhs - rhs).norm() / (1.0 + rhs.norm());
    rep.field_residual = std::max(rep.field_residual, res);
  }
  return rep;
}

DimensionPairReport dimension_pair_check(const HomogeneousSpace& hs,
                                         std::uint64_t seed, int max_resamples,
                                         double rank_tol) {
  const LieAlgebra& g = hs.algebra();
  const int d = g.dim();
  const int n2 = hs.phase_dim();

  DimensionPairReport rep;
  for (int attempt = 0; attempt < std::max(1, max_resamples); ++attempt) {
    rep = DimensionPairReport{};
    rep.phase_dim = n2;
    rep.resamples = attempt;

    Rng rng(derive_seed(seed, attempt));
    Eigen::VectorXd w = rng.gaussian_vector(hs.m());
    w /= w.norm();
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n2);
    z.tail(hs.m()) = w;

    const AlgebraVector phi = hs.moment_map(z);
    rep.dim_gmu = g.centralizer_dim(phi);

    const Subspace orbit = hs.orbit_tangent_origin(w);
    rep.dim_gz = d - orbit.dim();

    rep.formula_ddim = n2 + rep.dim_gz - rep.dim_gmu;
    rep.formula_dind = rep.dim_gmu - rep.dim_gz;

    // Differentials of the momenta: rows of the moment Jacobian.
    Eigen::MatrixXd Jt(n2, d);
    for (int j = 0; j < n2; ++j) {
      const AlgebraVector col =
          hs.moment_differential(z, Eigen::VectorXd::Unit(n2, j));
      Jt.row(j) = col.transpose();
    }

    // Differentials of invariants: the orbit's Euclidean orthocomplement.
    Eigen::JacobiSVD<Eigen::MatrixXd> osvd(orbit.Q, Eigen::ComputeFullU);
    const Eigen::MatrixXd N = osvd.matrixU().rightCols(n2 - orbit.dim());

    Eigen::MatrixXd all(n2, d + N.cols());
    all.leftCols(d) = Jt;
    all.rightCols(N.cols()) = N;
    const Subspace diff_span = Subspace::from_columns(all, rank_tol);
    rep.rank_ddim = diff_span.dim();

    const SymplecticForm form = hs.symplectic_form_at(z);
    const Eigen::MatrixXd omega_inv = form.omega.inverse();

    // Pairing scale is O(1) for unit w, FD noise in omega is ~1e-9, so an
    // absolute floor separates true kernel directions from noise.
    const Eigen::MatrixXd gram =
        -diff_span.Q.transpose() * omega_inv * diff_span.Q;
    const Eigen::JacobiSVD<Eigen::MatrixXd> gsvd(gram);
    int grank = 0;
    for (int i = 0; i < gsvd.singularValues().size(); ++i)
      if (gsvd.singularValues()(i) >
          std::max(1e-6, rank_tol * gsvd.singularValues()(0)))
        ++grank;
    rep.rank_dind = diff_span.dim() - grank;

    const Subspace w1 = Subspace::from_columns(omega_inv * Jt, rank_tol);
    const Subspace w2 = symplectic_orthogonal(orbit, form, rank_tol);
    const Subspace w1o = symplectic_orthogonal(w1, form, rank_tol);
    rep.w_equality_residual = equality_residual(w1o, w2);

    const auto co = coisotropy_check(sum(w1, w2), form, 1e-6);
    rep.coisotropy_residual = co.residual;
    rep.coisotropic = co.coisotropic;

    rep.formulas_match_ranks = (rep.formula_ddim == rep.rank_ddim) &&
                               (rep.formula_dind == rep.rank_dind);
    rep.complete = (rep.rank_ddim + rep.rank_dind == n2);

    const bool generic_ok = rep.formulas_match_ranks && rep.complete &&
                            rep.coisotropic &&
                            rep.w_equality_residual < 1e-6;
    if (generic_ok) return rep;
  }
  return rep;
}

GeodesicReport geodesic_flow(const HomogeneousSpace& hs,
                             const Eigen::VectorXd& w0, double t_end,
                             double dt, int record_stride) {
  if (w0.size() != hs.m())
    throw std::invalid_argument("initial covector size mismatch");
  if (dt <= 0.0 || t_end <= 0.0)
    throw std::invalid_argument("geodesic flow needs dt > 0 and t_end > 0");
  if (record_stride < 1) record_stride = 1;
  const int mm = hs.m();
  const int n2 = hs.phase_dim();
  const int steps = static_cast<int>(std::llround(t_end / dt));

  auto field = [&hs, mm, n2](const Eigen::VectorXd& z) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(n2);
    grad.tail(mm) = z.tail(mm);
    const SymplecticForm form = hs.symplectic_form_at(z);
    return Eigen::VectorXd(form.omega.partialPivLu().solve(grad));
  };

  const LieAlgebra& g = hs.algebra();

  // The chart is only trustworthy while ad_u stays well inside its first
  // singular ring, so once |u| grows the phase point is pushed back to the
  // origin with the group action: (exp(u) o, w in the exp(u) frame) maps to
  // (o, w) under exp(u)^{-1}, exactly. The accumulated element carries the
  // momentum back to the original frame through Ad, and the flow restarts
  // from u = 0 with the same w. This keeps long runs singularity-free.
  Matrix acc = Matrix::Identity(g.n(), g.n());

  Eigen::VectorXd z = Eigen::VectorXd::Zero(n2);
  z.tail(mm) = w0;
  double t_seg = 0.0;
  Eigen::VectorXd w_seg = w0;

  std::vector<double> ts{0.0};
  std::vector<Eigen::VectorXd> zs{z};
  std::vector<double> seg_t{0.0};
  std::vector<Eigen::VectorXd> seg_w{w0};
  std::vector<Matrix> seg_acc{acc};

  for (int k = 0; k < steps; ++k) {
    const Eigen::VectorXd k1 = field(z);
    const Eigen::VectorXd k2 = field(z + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = field(z + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = field(z + dt * k3);
    z += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!z.allFinite())
      throw std::runtime_error("geodesic flow produced a non-finite state");
    if (z.head(mm).norm() >= 0.5) {
      acc = acc * g.exp_defining(hs.lift(z.head(mm)));
      z.head(mm).setZero();
      t_seg = (k + 1) * dt;
      w_seg = z.tail(mm);
    }
    if ((k + 1) % record_stride == 0 || k + 1 == steps) {
      ts.push_back((k + 1) * dt);
      zs.push_back(z);
      seg_t.push_back(t_seg);
      seg_w.push_back(w_seg);
      seg_acc.push_back(acc);
    }
  }

  GeodesicReport rep;
  const int rows = static_cast<int>(ts.size());
  rep.record.times = Eigen::Map<const Eigen::VectorXd>(ts.data(), rows);
  rep.record.states.resize(rows, n2);
  for (int r = 0; r < rows; ++r) rep.record.states.row(r) = zs[r];
  for (int j = 0; j < mm; ++j)
    rep.record.state_labels.push_back("u[" + std::to_string(j) + "]");
  for (int j = 0; j < mm; ++j)
    rep.record.state_labels.push_back("w[" + std::to_string(j) + "]");

  const int dcols = g.dim();
  rep.record.tracked.resize(rows, 1 + dcols);
  rep.record.tracked_labels.push_back("energy");
  for (int j = 0; j < dcols; ++j)
    rep.record.tracked_labels.push_back("Phi[" + std::to_string(j) + "]");

  const AlgebraVector phi0 = hs.moment_map(zs[0]);
  const double z0norm = 1.0 + zs[0].norm();
  for (int r = 0; r < rows; ++r) {
    const Eigen::VectorXd wr = zs[r].tail(mm);
    rep.record.tracked(r, 0) = 0.5 * wr.squaredNorm();
    const AlgebraVector phir = g.group_Ad(seg_acc[r], hs.moment_map(zs[r]));
    for (int j = 0; j < dcols; ++j) rep.record.tracked(r, 1 + j) = phir[j];
    rep.moment_drift = std::max(
        rep.moment_drift, (phir - phi0).norm() / (1.0 + phi0.norm()));

    // Exact chart solution per segment: u(t) = -(t - t_seg) w_seg, w = w_seg.
    Eigen::VectorXd exact(n2);
    exact.head(mm) = -(ts[r] - seg_t[r]) * seg_w[r];
    exact.tail(mm) = seg_w[r];
    rep.exact_residual =
        std::max(rep.exact_residual, (zs[r] - exact).norm() / z0norm);
  }
  const Eigen::VectorXd energy = rep.record.tracked.col(0);
  for (int r = 0; r < rows; ++r)
    rep.energy_drift =
        std::max(rep.energy_drift,
                 std::abs(energy[r] - energy[0]) / (1.0 + std::abs(energy[0])));
  return rep;
}

SphereClosingReport sphere_closing_check(const HomogeneousSpace& hs,
                                         const Eigen::VectorXd& w0,
                                         double t_chart, double dt) {
  const LieAlgebra& g = hs.algebra();
  if (w0.size() != hs.m())
    throw std::invalid_argument("initial covector size mismatch");
  if (w0.norm() < 1e-12)
    throw std::invalid_argument("closing check needs a nonzero velocity");

  // Base point: the direction fixed by every isotropy generator.
  const int n = g.n();
  const int hk = hs.dim_h();
  if (hk == 0)
    throw std::invalid_argument("closing check needs a nontrivial isotropy");
  Matrix stacked(n * hk, n);
  for (int i = 0; i < hk; ++i)
    stacked.middleRows(i * n, n) = g.matrix(hs.isotropy_basis().col(i));
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  if (svd.singularValues()(n - 1) > 1e-10 * svd.singularValues()(0))
    throw std::invalid_argument("isotropy fixes no direction");
  const Eigen::VectorXcd v0 = svd.matrixV().col(n - 1);

  const AlgebraVector X = hs.lift(w0);
  const Matrix Xmat = g.matrix(X);
  const Eigen::JacobiSVD<Matrix> xsvd(Xmat);
  const double speed = xsvd.singularValues()(0);

  SphereClosingReport rep;
  rep.period = 2.0 * std::numbers::pi / speed;

  const Matrix full = g.exp_defining(rep.period * X);
  const Matrix half = g.exp_defining(0.5 * rep.period * X);
  rep.closure_error = (full * v0 - v0).norm();
  rep.midpoint_distance = (half * v0 - v0).norm();

  rep.chart_residual =
      geodesic_flow(hs, w0, t_chart, dt).exact_residual;
  rep.closed = rep.closure_error < 1e-8 && rep.midpoint_distance > 0.5;
  return rep;
}

}  // namespace lieflow

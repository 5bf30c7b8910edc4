#include "lieflow/argshift.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "lieflow/linsub.hpp"

namespace lieflow {

namespace {

std::complex<double> pf_expand(const Matrix& A, const std::vector<int>& idx) {
  const int m = static_cast<int>(idx.size());
  if (m == 0) return {1.0, 0.0};
  std::complex<double> acc{0.0, 0.0};
  std::vector<int> rest(m - 2);
  for (int j = 1; j < m; ++j) {
    int t = 0;
    for (int s = 1; s < m; ++s)
      if (s != j) rest[t++] = idx[s];
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    acc += sign * A(idx[0], idx[j]) * pf_expand(A, rest);
  }
  return acc;
}

Matrix matrix_power(const Matrix& X, int k) {
  Matrix P = Matrix::Identity(X.rows(), X.cols());
  for (int i = 0; i < k; ++i) P = P * X;
  return P;
}

}  // namespace

std::complex<double> pfaffian(const Matrix& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("pfaffian: square matrix required");
  const int n = static_cast<int>(A.rows());
  if (n % 2 != 0) return {0.0, 0.0};
  if ((A + A.transpose()).norm() > 1e-10 * (1.0 + A.norm()))
    throw std::invalid_argument("pfaffian: antisymmetric matrix required");
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  return pf_expand(A, idx);
}

double InvariantPolynomial::value(const LieAlgebra& alg,
                                  const AlgebraVector& x) const {
  const Matrix X = alg.matrix(x);
  switch (kind) {
    case Kind::TraceReal:
      return matrix_power(X, power).trace().real();
    case Kind::TraceImag:
      return matrix_power(X, power).trace().imag();
    case Kind::Pfaffian:
      return pfaffian(X).real();
  }
  return 0.0;
}

AlgebraVector InvariantPolynomial::gradient(const LieAlgebra& alg,
                                            const AlgebraVector& x) const {
  const int d = alg.dim();
  AlgebraVector g(d);
  const Matrix X = alg.matrix(x);
  if (kind == Kind::Pfaffian) {
    // Complex step: the Pfaffian has real coefficients and the so(n)
    // defining matrices are real, so Im Pf(X + ih E_j)/h is exact to
    // roundoff (no subtractive cancellation).
    const double h = 1e-20;
    const std::complex<double> ih{0.0, h};
    for (int j = 0; j < d; ++j)
      g[j] = pfaffian(X + ih * alg.basis_matrix(j)).imag() / h;
    return g;
  }
  const Matrix P = matrix_power(X, power - 1);
  for (int j = 0; j < d; ++j) {
    const std::complex<double> t =
        static_cast<double>(power) * (P * alg.basis_matrix(j)).trace();
    g[j] = (kind == Kind::TraceReal) ? t.real() : t.imag();
  }
  return g;
}

ScalarFunction InvariantPolynomial::as_function(const LieAlgebra& alg) const {
  ScalarFunction f;
  f.label = label;
  const InvariantPolynomial self = *this;
  f.value = [alg, self](const Eigen::VectorXd& x) {
    return self.value(alg, x);
  };
  f.grad = [alg, self](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(self.gradient(alg, x));
  };
  return f;
}

std::vector<InvariantPolynomial> invariant_generators(const LieAlgebra& alg) {
  std::vector<InvariantPolynomial> out;
  auto push_trace = [&out](int k) {
    InvariantPolynomial p;
    p.kind = (k % 2 == 0) ? InvariantPolynomial::Kind::TraceReal
                          : InvariantPolynomial::Kind::TraceImag;
    p.power = k;
    p.degree = k;
    p.label = "tr" + std::to_string(k);
    out.push_back(p);
  };
  const int n = alg.n();
  switch (alg.family()) {
    case Family::SO: {
      const int m = n / 2;
      if (n % 2 == 1) {
        for (int k = 2; k <= 2 * m; k += 2) push_trace(k);
      } else {
        for (int k = 2; k <= 2 * m - 2; k += 2) push_trace(k);
        InvariantPolynomial p;
        p.kind = InvariantPolynomial::Kind::Pfaffian;
        p.degree = m;
        p.label = "pf";
        out.push_back(p);
      }
      break;
    }
    case Family::SU:
      for (int k = 2; k <= n; ++k) push_trace(k);
      break;
    case Family::U:
      throw std::invalid_argument(
          "invariant generators: u(n) has a central coordinate; "
          "build the family on su(n) instead");
  }
  return out;
}

FunctionFamily ShiftFamily::family() const {
  FunctionFamily f;
  f.dimension = static_cast<int>(shift.size());
  for (int idx : working) f.members.push_back(coefficients[idx].fn);
  return f;
}

ShiftFamily make_shift_family(const LieAlgebra& alg, const AlgebraVector& a) {
  if (a.size() != alg.dim())
    throw std::invalid_argument("shift element has wrong dimension");
  if (a.norm() < 1e-12)
    throw std::invalid_argument("shift element must be nonzero");

  ShiftFamily fam;
  fam.shift = a;
  fam.generators = invariant_generators(alg);

  for (int s = 0; s < static_cast<int>(fam.generators.size()); ++s) {
    const InvariantPolynomial gen = fam.generators[s];
    const int k = gen.degree;

    // lambda-samples at Chebyshev nodes; the Vandermonde solve recovers the
    // coefficients of the degree-k polynomial lambda -> p(x + lambda a).
    Eigen::VectorXd nodes(k + 1);
    Eigen::MatrixXd V(k + 1, k + 1);
    for (int j = 0; j <= k; ++j) {
      nodes[j] =
          std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * (k + 1)));
      double p = 1.0;
      for (int i = 0; i <= k; ++i) {
        V(j, i) = p;
        p *= nodes[j];
      }
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(V);

    for (int i = 0; i <= k; ++i) {
      ShiftCoefficient c;
      c.source = s;
      c.order = i;
      c.constant = (i == k);
      c.fn.label = gen.label + "[" + std::to_string(i) + "]";
      c.fn.value = [alg, gen, a, nodes, lu, i](const Eigen::VectorXd& x) {
        Eigen::VectorXd q(nodes.size());
        for (int j = 0; j < nodes.size(); ++j)
          q[j] = gen.value(alg, x + nodes[j] * a);
        const Eigen::VectorXd coef = lu.solve(q);
        return coef[i];
      };
      c.fn.grad = [alg, gen, a, nodes, lu, i](const Eigen::VectorXd& x) {
        Eigen::MatrixXd q(nodes.size(), x.size());
        for (int j = 0; j < nodes.size(); ++j)
          q.row(j) = gen.gradient(alg, x + nodes[j] * a).transpose();
        const Eigen::MatrixXd coef = lu.solve(q);
        return Eigen::VectorXd(coef.row(i).transpose());
      };
      fam.coefficients.push_back(std::move(c));
    }
  }

  for (int idx = 0; idx < static_cast<int>(fam.coefficients.size()); ++idx)
    if (!fam.coefficients[idx].constant) fam.working.push_back(idx);
  return fam;
}

double reconstruct_shift(const ShiftFamily& fam, int source, double lambda,
                         const AlgebraVector& x) {
  double acc = 0.0;
  for (const auto& c : fam.coefficients)
    if (c.source == source) acc += c.fn.value(x) * std::pow(lambda, c.order);
  return acc;
}

InvolutivityReport involutivity_check(const LieAlgebra& alg,
                                      const FunctionFamily& family,
                                      int samples, std::uint64_t seed,
                                      double scale) {
  if (family.dimension != alg.dim())
    throw std::invalid_argument("family dimension does not match the algebra");
  const PhaseSpace space = PhaseSpace::lie_poisson(alg);
  const Sampler sampler = gaussian_sampler(alg.dim(), seed, scale);

  InvolutivityReport rep;
  rep.samples = samples;
  std::vector<Eigen::VectorXd> grads(family.size());
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = sampler(s);
    const Eigen::MatrixXd pi = space.bivector(x);
    for (int i = 0; i < family.size(); ++i)
      grads[i] = gradient(family.members[i], x);
    for (int i = 0; i < family.size(); ++i) {
      for (int j = i + 1; j < family.size(); ++j) {
        const double br = grads[i].dot(pi * grads[j]);
        const double denom = grads[i].norm() * grads[j].norm() + 1e-300;
        const double r = std::abs(br) / denom;
        if (r > rep.max_residual) {
          rep.max_residual = r;
          rep.worst_i = i;
          rep.worst_j = j;
        }
      }
    }
  }
  return rep;
}

OrbitCompletenessReport orbit_completeness(const LieAlgebra& alg,
                                           const FunctionFamily& family,
                                           const AlgebraVector& mu,
                                           double rank_tol) {
  OrbitCompletenessReport rep;
  rep.orbit_dim = alg.dim() - alg.centralizer_dim(mu);
  if (family.size() == 0) {
    rep.complete = (rep.orbit_dim == 0);
    return rep;
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(alg.gram());
  Eigen::MatrixXd H(alg.dim(), family.size());
  for (int i = 0; i < family.size(); ++i) {
    const Eigen::VectorXd g = gradient(family.members[i], mu);
    H.col(i) = alg.bracket(llt.solve(g), mu);
  }
  rep.span_dim = Subspace::from_columns(H, rank_tol).dim();
  rep.complete = (2 * rep.span_dim == rep.orbit_dim);
  return rep;
}

SectionalOperator sectional_operator(const LieAlgebra& alg,
                                     const AlgebraVector& a,
                                     const AlgebraVector& b,
                                     const Eigen::VectorXd& centralizer_diag) {
  const int d = alg.dim();
  if (a.size() != d || b.size() != d)
    throw std::invalid_argument("sectional operator: wrong element dimension");
  if (alg.bracket(a, b).norm() > 1e-10 * (1.0 + a.norm() * b.norm()))
    throw std::invalid_argument("sectional operator requires [a, b] = 0");

  const Eigen::MatrixXd ada = alg.ad(a);
  const Eigen::MatrixXd adb = alg.ad(b);

  // B-orthonormal kernel basis of ad_a.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      ada, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smax = svd.singularValues().size()
                          ? svd.singularValues()(0)
                          : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9 * (smax > 0 ? smax : 1.0)) ++rank;
  const Eigen::MatrixXd U =
      alg.b_orthonormalize(svd.matrixV().rightCols(d - rank));
  if (U.cols() != centralizer_diag.size())
    throw std::invalid_argument(
        "centralizer diagonal has size " +
        std::to_string(centralizer_diag.size()) + ", expected " +
        std::to_string(U.cols()));

  SectionalOperator op;
  op.a = a;
  op.b = b;
  op.phi = U * centralizer_diag.asDiagonal() * U.transpose() * alg.gram();

  // Image part: solve ad_a (V c_j) = ad_b v_j column by column. [a,b] = 0
  // makes ad_b preserve im(ad_a), so the systems are consistent.
  const Eigen::MatrixXd V = alg.b_orthonormalize(ada);
  const int r = static_cast<int>(V.cols());
  if (r > 0) {
    const Eigen::MatrixXd M = ada * V;
    Eigen::JacobiSVD<Eigen::MatrixXd> msvd(
        M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::MatrixXd C(r, r);
    for (int j = 0; j < r; ++j) {
      const Eigen::VectorXd rhs = adb * V.col(j);
      const Eigen::VectorXd c = msvd.solve(rhs);
      C.col(j) = c;
      const double res = (M * c - rhs).norm() / (rhs.norm() + 1e-300);
      op.solve_residual = std::max(op.solve_residual, res);
    }
    op.phi += V * C * V.transpose() * alg.gram();
  }

  const Eigen::MatrixXd S = alg.gram() * op.phi;
  op.symmetry_residual =
      (S - S.transpose()).norm() / (S.norm() + 1e-300);
  return op;
}

ScalarFunction sectional_hamiltonian(const LieAlgebra& alg,
                                     const SectionalOperator& op) {
  Eigen::MatrixXd S = alg.gram() * op.phi;
  S = 0.5 * (S + S.transpose()).eval();  // symmetric up to roundoff already
  ScalarFunction h;
  h.label = "sectional";
  h.value = [S](const Eigen::VectorXd& x) { return 0.5 * x.dot(S * x); };
  h.grad = [S](const Eigen::VectorXd& x) { return Eigen::VectorXd(S * x); };
  return h;
}

TrajectoryRecord euler_flow(const LieAlgebra& alg, const ScalarFunction& h,
                            const AlgebraVector& xi0, double t_end, double dt,
                            const FunctionFamily& tracked,
                            int record_stride) {
  if (dt <= 0.0 || t_end <= 0.0)
    throw std::invalid_argument("euler flow needs dt > 0 and t_end > 0");
  if (xi0.size() != alg.dim())
    throw std::invalid_argument("initial state has wrong dimension");
  if (record_stride < 1) record_stride = 1;
  const int steps = static_cast<int>(std::llround(t_end / dt));

  const Eigen::LLT<Eigen::MatrixXd> llt(alg.gram());
  auto field = [&](const AlgebraVector& xi) {
    const Eigen::VectorXd g = gradient(h, xi);
    return AlgebraVector(kEulerSign * alg.bracket(xi, llt.solve(g)));
  };

  std::vector<double> ts;
  std::vector<AlgebraVector> xs;
  ts.push_back(0.0);
  xs.push_back(xi0);

  AlgebraVector xi = xi0;
  for (int k = 0; k < steps; ++k) {
    const AlgebraVector k1 = field(xi);
    const AlgebraVector k2 = field(xi + 0.5 * dt * k1);
    const AlgebraVector k3 = field(xi + 0.5 * dt * k2);
    const AlgebraVector k4 = field(xi + dt * k3);
    xi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!xi.allFinite())
      throw std::runtime_error("euler flow produced a non-finite state at t=" +
                               std::to_string((k + 1) * dt));
    if ((k + 1) % record_stride == 0 || k + 1 == steps) {
      ts.push_back((k + 1) * dt);
      xs.push_back(xi);
    }
  }

  TrajectoryRecord rec;
  const int rows = static_cast<int>(ts.size());
  rec.times = Eigen::Map<const Eigen::VectorXd>(ts.data(), rows);
  rec.states.resize(rows, alg.dim());
  for (int rIdx = 0; rIdx < rows; ++rIdx) rec.states.row(rIdx) = xs[rIdx];
  for (int j = 0; j < alg.dim(); ++j)
    rec.state_labels.push_back("xi[" + std::to_string(j) + "]");
  rec.tracked.resize(rows, tracked.size());
  for (const auto& f : tracked.members) rec.tracked_labels.push_back(f.label);
  for (int rIdx = 0; rIdx < rows; ++rIdx)
    for (int c = 0; c < tracked.size(); ++c)
      rec.tracked(rIdx, c) = tracked.members[c].value(xs[rIdx]);
  return rec;
}

}  // namespace lieflow

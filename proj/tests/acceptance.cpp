// Acceptance gate: one line per criterion, exit code = number of failures.
// Tolerances are pinned here, not read from configuration.
#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "lieflow/algebra.hpp"
#include "lieflow/argshift.hpp"
#include "lieflow/biquot.hpp"
#include "lieflow/homspace.hpp"
#include "lieflow/linsub.hpp"
#include "lieflow/poisson.hpp"
#include "lieflow/rng.hpp"
#include "lieflow/scenario.hpp"

using namespace lieflow;

namespace {

constexpr double kTolAlgebra = 1e-11;
constexpr double kTolInvolutivity = 1e-9;
constexpr double kTolSubspace = 1e-7;
constexpr double kTolCollective = 1e-5;
constexpr double kTolRigidBody = 1e-8;
constexpr double kTolSectionalDrift = 1e-6;
constexpr double kOrderRatioLow = 12.0;
constexpr double kOrderRatioHigh = 20.0;
constexpr double kTolMomentDrift = 1e-10;
constexpr double kTolClosing = 1e-8;
constexpr double kTolHorizontal = 1e-10;
constexpr double kTolSkew = 1e-8;
constexpr double kTolBumpBracket = 1e-8;
constexpr std::uint64_t kSeed = 20240915;

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, ap);
  va_end(ap);
  return std::string(buf);
}

AlgebraVector unit_sample(const LieAlgebra& alg, Rng& rng) {
  AlgebraVector x = rng.gaussian_vector(alg.dim());
  return x / alg.norm(x);
}

AlgebraVector centralizer_sample(const LieAlgebra& alg, const AlgebraVector& a,
                                 Rng& rng) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(alg.ad(a), Eigen::ComputeFullV);
  const Eigen::MatrixXd Z = svd.matrixV().rightCols(alg.rank());
  AlgebraVector b = Z * rng.gaussian_vector(alg.rank());
  return b / b.norm();
}

double tracked_drift(const TrajectoryRecord& rec) {
  double worst = 0.0;
  for (int j = 0; j < rec.tracked.cols(); ++j)
    for (int r = 0; r < rec.rows(); ++r)
      worst = std::max(worst, std::abs(rec.tracked(r, j) - rec.tracked(0, j)));
  return worst;
}

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

// 1. Structure constants: antisymmetry, Jacobi, invariance of the pairing.
bool algebra_invariants(std::string& detail) {
  const std::vector<std::pair<Family, int>> algs = {
      {Family::SO, 3}, {Family::SO, 4}, {Family::SO, 5},
      {Family::SU, 2}, {Family::SU, 3}, {Family::SU, 4}};
  double worst = 0.0;
  for (std::size_t k = 0; k < algs.size(); ++k) {
    const LieAlgebra alg = LieAlgebra::build_classical(algs[k].first,
                                                       algs[k].second);
    Rng rng(derive_seed(kSeed, 10 + k));
    for (int t = 0; t < 200; ++t) {
      const AlgebraVector x = unit_sample(alg, rng);
      const AlgebraVector y = unit_sample(alg, rng);
      const AlgebraVector z = unit_sample(alg, rng);
      const double anti = (alg.bracket(x, y) + alg.bracket(y, x)).norm();
      const double jac = (alg.bracket(x, alg.bracket(y, z)) +
                          alg.bracket(y, alg.bracket(z, x)) +
                          alg.bracket(z, alg.bracket(x, y)))
                             .norm();
      const double inv = std::abs(alg.inner(alg.bracket(x, y), z) +
                                  alg.inner(y, alg.bracket(x, z)));
      worst = std::max({worst, anti, jac, inv});
    }
  }
  detail = fmt("max residual %.2e over 200 triples x 6 algebras (bound %.0e)",
               worst, kTolAlgebra);
  return worst < kTolAlgebra;
}

// 2. Shifted coefficients are in involution on both reference duals.
bool shift_involutivity(std::string& detail) {
  double worst = 0.0;
  int idx = 0;
  for (const auto& [f, n] : std::vector<std::pair<Family, int>>{
           {Family::SO, 4}, {Family::SU, 3}}) {
    const LieAlgebra alg = LieAlgebra::build_classical(f, n);
    const AlgebraVector a = alg.random_regular(derive_seed(kSeed, 20 + idx));
    const ShiftFamily fam = make_shift_family(alg, a);
    const InvolutivityReport rep =
        involutivity_check(alg, fam.family(), 100, derive_seed(kSeed, 25 + idx));
    worst = std::max(worst, rep.max_residual);
    ++idx;
  }
  detail = fmt("max normalized bracket %.2e at 100 points each (bound %.0e)",
               worst, kTolInvolutivity);
  return worst < kTolInvolutivity;
}

// 3. Hamiltonian directions span half the orbit, regular and singular.
bool orbit_span(std::string& detail) {
  const LieAlgebra so4 = LieAlgebra::build_classical(Family::SO, 4);
  const LieAlgebra su3 = LieAlgebra::build_classical(Family::SU, 3);
  const ShiftFamily f4 =
      make_shift_family(so4, so4.random_regular(derive_seed(kSeed, 30)));
  const ShiftFamily f3 =
      make_shift_family(su3, su3.random_regular(derive_seed(kSeed, 31)));

  const OrbitCompletenessReport r4 = orbit_completeness(
      so4, f4.family(), so4.random_regular(derive_seed(kSeed, 32)));
  const OrbitCompletenessReport r3 = orbit_completeness(
      su3, f3.family(), su3.random_regular(derive_seed(kSeed, 33)));

  Matrix D = Matrix::Zero(3, 3);
  D(0, 0) = std::complex<double>(0, 1);
  D(1, 1) = std::complex<double>(0, 1);
  D(2, 2) = std::complex<double>(0, -2);
  const AlgebraVector mu_sing = su3.coords(D);
  const OrbitCompletenessReport rs =
      orbit_completeness(su3, f3.family(), mu_sing);

  detail = fmt("so(4): %d/%d, su(3): %d/%d, singular su(3): %d/%d",
               r4.span_dim, r4.orbit_dim, r3.span_dim, r3.orbit_dim,
               rs.span_dim, rs.orbit_dim);
  return r4.span_dim == 2 && r4.orbit_dim == 4 && r4.complete &&
         r3.span_dim == 3 && r3.orbit_dim == 6 && r3.complete &&
         rs.span_dim == 2 && rs.orbit_dim == 4 && rs.complete &&
         su3.centralizer_dim(mu_sing) == 4;
}

// 4. Non-constant coefficient count equals (d + rank)/2 and equals the
//    measured differential dimension of the family.
bool coefficient_count(std::string& detail) {
  const LieAlgebra so4 = LieAlgebra::build_classical(Family::SO, 4);
  const LieAlgebra su3 = LieAlgebra::build_classical(Family::SU, 3);
  const ShiftFamily f4 =
      make_shift_family(so4, so4.random_regular(derive_seed(kSeed, 40)));
  const ShiftFamily f3 =
      make_shift_family(su3, su3.random_regular(derive_seed(kSeed, 41)));

  const DdimReport d4 = ddim(f4.family(),
                             gaussian_sampler(so4.dim(), derive_seed(kSeed, 42)),
                             25);
  const DdimReport d3 = ddim(f3.family(),
                             gaussian_sampler(su3.dim(), derive_seed(kSeed, 43)),
                             25);

  detail = fmt("so(4): %d coefficients, ddim %d; su(3): %d, ddim %d",
               f4.working_size(), d4.value, f3.working_size(), d3.value);
  return f4.working_size() == (so4.dim() + so4.rank()) / 2 &&
         f4.working_size() == 4 && d4.value == 4 && d4.conclusive &&
         f3.working_size() == (su3.dim() + su3.rank()) / 2 &&
         f3.working_size() == 5 && d3.value == 5 && d3.conclusive;
}

// 5. Momentum + invariant family at the base point: dimension pair by
//    formula equals the rank measurement, and the two subspace relations
//    hold to principal-angle tolerance.
bool base_point_dimension_pair(std::string& detail) {
  const LieAlgebra su3 = LieAlgebra::build_classical(Family::SU, 3);
  const HomogeneousSpace flag(su3, torus_embedding(su3));
  const DimensionPairReport a = dimension_pair_check(flag, derive_seed(kSeed, 50));

  const LieAlgebra so4 = LieAlgebra::build_classical(Family::SO, 4);
  const HomogeneousSpace sphere(so4, so_block_embedding(so4, {1, 2, 3}));
  const DimensionPairReport b = dimension_pair_check(sphere, derive_seed(kSeed, 51));

  detail = fmt(
      "flag (%d,%d) sphere (%d,%d); subspace residuals %.1e / %.1e, %.1e / %.1e",
      a.formula_ddim, a.formula_dind, b.formula_ddim, b.formula_dind,
      a.w_equality_residual, a.coisotropy_residual, b.w_equality_residual,
      b.coisotropy_residual);
  const auto good = [](const DimensionPairReport& r, int dd, int di) {
    return r.formula_ddim == dd && r.formula_dind == di &&
           r.rank_ddim == dd && r.rank_dind == di && r.formulas_match_ranks &&
           r.complete && r.coisotropic &&
           r.w_equality_residual < kTolSubspace &&
           r.coisotropy_residual < kTolSubspace;
  };
  return good(a, 10, 2) && good(b, 5, 1);
}

// 6. Chart Hamiltonian flow of h(Phi) pushes forward to the Euler field
//    for linear, invariant, and sectional h.
bool collective_motion(std::string& detail) {
  const LieAlgebra su3 = LieAlgebra::build_classical(Family::SU, 3);
  const HomogeneousSpace flag(su3, torus_embedding(su3));
  Rng rng(derive_seed(kSeed, 60));

  std::vector<ScalarFunction> hams;
  const Eigen::VectorXd beta = rng.gaussian_vector(su3.dim());
  ScalarFunction lin;
  lin.label = "linear";
  lin.value = [beta](const Eigen::VectorXd& x) { return beta.dot(x); };
  lin.grad = [beta](const Eigen::VectorXd&) { return beta; };
  hams.push_back(lin);

  hams.push_back(invariant_generators(su3)[0].as_function(su3));

  const AlgebraVector a = su3.random_regular(derive_seed(kSeed, 61));
  const AlgebraVector b = centralizer_sample(su3, a, rng);
  Eigen::VectorXd diag(su3.rank());
  for (int i = 0; i < diag.size(); ++i) diag[i] = 0.5 + rng.uniform();
  hams.push_back(sectional_hamiltonian(su3, sectional_operator(su3, a, b, diag)));

  double worst = 0.0;
  for (std::size_t k = 0; k < hams.size(); ++k) {
    const CollectiveReport rep =
        collective_consistency(flag, hams[k], 6, derive_seed(kSeed, 62 + k));
    worst = std::max(worst, rep.field_residual);
  }
  detail = fmt("max pushforward residual %.2e over 3 Hamiltonians (bound %.0e)",
               worst, kTolCollective);
  return worst < kTolCollective;
}

// 7. Conservation and fourth-order convergence of the coordinate flows.
bool conservation(std::string& detail) {
  const LieAlgebra so3 = LieAlgebra::build_classical(Family::SO, 3);
  const Eigen::Vector3d inertia(1.0, 1.6, 2.3);
  ScalarFunction body;
  body.label = "kinetic";
  body.value = [inertia](const Eigen::VectorXd& x) {
    return 0.5 * (x.array().square() / inertia.array()).sum();
  };
  body.grad = [inertia](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(x.array() / inertia.array());
  };
  ScalarFunction cas;
  cas.label = "casimir";
  cas.value = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
  cas.grad = [](const Eigen::VectorXd& x) { return Eigen::VectorXd(2 * x); };
  FunctionFamily tracked3;
  tracked3.dimension = 3;
  tracked3.members = {body, cas};
  AlgebraVector xi3(3);
  xi3 << 1.0, 0.4, -0.3;
  const double rigid_drift =
      tracked_drift(euler_flow(so3, body, xi3, 10.0, 1e-3, tracked3, 100));

  const LieAlgebra so4 = LieAlgebra::build_classical(Family::SO, 4);
  const AlgebraVector a = so4.random_regular(derive_seed(kSeed, 70));
  Rng rng(derive_seed(kSeed, 71));
  const AlgebraVector b = centralizer_sample(so4, a, rng);
  Eigen::VectorXd diag(so4.rank());
  for (int i = 0; i < diag.size(); ++i) diag[i] = 0.5 + rng.uniform();
  const SectionalOperator op = sectional_operator(so4, a, b, diag);
  const ScalarFunction h = sectional_hamiltonian(so4, op);
  const ShiftFamily fam = make_shift_family(so4, a);
  const AlgebraVector xi0 = unit_sample(so4, rng);

  const double sect_drift =
      tracked_drift(euler_flow(so4, h, xi0, 10.0, 0.01, fam.family(), 20));

  const auto final_state = [&](double dt) {
    const TrajectoryRecord rec =
        euler_flow(so4, h, xi0, 10.0, dt, FunctionFamily{}, 1 << 20);
    return Eigen::VectorXd(rec.states.row(rec.rows() - 1).transpose());
  };
  const Eigen::VectorXd ref = final_state(0.005);
  const double e_coarse = (final_state(0.02) - ref).norm();
  const double e_fine = (final_state(0.01) - ref).norm();
  const double ratio = e_coarse / e_fine;

  detail = fmt("rigid drift %.2e, sectional drift %.2e, halving ratio %.1f",
               rigid_drift, sect_drift, ratio);
  return rigid_drift < kTolRigidBody && sect_drift < kTolSectionalDrift &&
         ratio > kOrderRatioLow && ratio < kOrderRatioHigh;
}

// 8. Normal-metric geodesics: momentum conservation on the flag chart over
//    a long run, and great circles on the two-sphere close on period.
bool geodesic_invariants(std::string& detail) {
  const LieAlgebra su3 = LieAlgebra::build_classical(Family::SU, 3);
  const HomogeneousSpace flag(su3, torus_embedding(su3));
  Rng rng(derive_seed(kSeed, 80));
  Eigen::VectorXd w0 = rng.gaussian_vector(flag.m());
  w0.normalize();
  const GeodesicReport rep = geodesic_flow(flag, w0, 20.0, 0.05, 10);

  const LieAlgebra so3 = LieAlgebra::build_classical(Family::SO, 3);
  const HomogeneousSpace sphere(so3, so_block_embedding(so3, {1, 2}));
  Eigen::VectorXd ws = rng.gaussian_vector(2);
  ws *= 1.2 / ws.norm();
  const SphereClosingReport close = sphere_closing_check(sphere, ws);

  detail = fmt(
      "momentum drift %.2e over T=20; closing error %.2e at period %.3f",
      rep.moment_drift, close.closure_error, close.period);
  return rep.moment_drift < kTolMomentDrift && close.closed &&
         close.closure_error < kTolClosing &&
         close.midpoint_distance > 0.5 && close.chart_residual < 1e-6;
}

// 9. Two-sided quotient: left + right defect dimensions equal twice the
//    quotient dimension, with both counting routes in exact agreement.
bool biquotient_identity(std::string& detail) {
  const LieAlgebra su3 = LieAlgebra::build_classical(Family::SU, 3);
  const Biquotient circles(su3, circle_embedding(su3, {1, -1, 0}),
                           circle_embedding(su3, {1, 1, -2}));
  const LieAlgebra so5 = LieAlgebra::build_classical(Family::SO, 5);
  const Biquotient blocks(so5, so_block_embedding(so5, {1, 2}),
                          so_block_embedding(so5, {3, 4, 5}));

  const BiquotientIdentityReport a =
      dimension_identity_check(circles, 40, derive_seed(kSeed, 90));
  const BiquotientIdentityReport b =
      dimension_identity_check(blocks, 40, derive_seed(kSeed, 91));

  detail = fmt("su(3): %d+%d=%d, so(5): %d+%d=%d; route disagreements %d",
               a.mode_left, a.mode_right, a.mode_sum, b.mode_left,
               b.mode_right, b.mode_sum, a.route_disagreements +
               b.route_disagreements);
  return a.holds && a.mode_sum == 12 && b.holds && b.mode_sum == 12 &&
         a.route_disagreements == 0 && b.route_disagreements == 0;
}

// 10. Horizontal geodesics on every preset that passes sampled freeness.
bool horizontal_conservation(std::string& detail) {
  const LieAlgebra su3 = LieAlgebra::build_classical(Family::SU, 3);
  const LieAlgebra so5 = LieAlgebra::build_classical(Family::SO, 5);
  const std::vector<Biquotient> presets = {
      Biquotient(su3, circle_embedding(su3, {1, -1, 0}),
                 circle_embedding(su3, {1, 1, -2})),
      Biquotient(so5, so_block_embedding(so5, {1, 2}),
                 so_block_embedding(so5, {3, 4, 5}))};

  double worst = 0.0;
  int ran = 0;
  for (std::size_t k = 0; k < presets.size(); ++k) {
    const FreenessReport fr =
        freeness_check(presets[k], 10, derive_seed(kSeed, 100 + k));
    if (!fr.free_at_samples) continue;
    ++ran;
    const HorizontalGeodesicReport rep = horizontal_geodesic(
        presets[k], derive_seed(kSeed, 102 + k), 20.0, 0.1, 4);
    worst = std::max({worst, rep.velocity_drift, rep.body_velocity_drift,
                      rep.horizontality_residual});
  }
  detail = fmt("%d presets, worst residual %.2e over T=20 (bound %.0e)", ran,
               worst, kTolHorizontal);
  return ran == 2 && worst < kTolHorizontal;
}

// 11. Randomized split-pair subspaces, shuffled by a symplectomorphism:
//     the intersection always equals the skew-orthogonal of the sum.
bool skew_complement_suite(std::string& detail) {
  int passed = 0;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Rng rng(derive_seed(kSeed, 110000 + t));
    const int pairs = 2 + static_cast<int>(rng.uniform() * 4.0);  // 2..5
    const int amb = 2 * pairs;
    const SymplecticForm form = SymplecticForm::standard(amb);

    // Partition the canonical pairs: nA full pairs into W1, nC into W2,
    // nB shared isotropic q-directions in both.
    const int nA = static_cast<int>(rng.uniform() * (pairs + 1));
    const int nB = static_cast<int>(rng.uniform() * (pairs - nA + 1));
    const int nC = pairs - nA - nB;

    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(amb, amb);
    for (int i = 0; i < amb; ++i)
      for (int j = 0; j <= i; ++j) P(i, j) = P(j, i) = 0.4 * rng.gaussian();
    const Eigen::MatrixXd S =
        Eigen::MatrixXd(form.omega.partialPivLu().solve(P)).exp();

    Eigen::MatrixXd w1(amb, 2 * nA + nB), w2(amb, 2 * nC + nB);
    int c1 = 0, c2 = 0;
    for (int i = 0; i < nA; ++i) {
      w1.col(c1++) = S.col(i);          // q_i
      w1.col(c1++) = S.col(pairs + i);  // p_i
    }
    for (int i = nA; i < nA + nB; ++i) {
      w1.col(c1++) = S.col(i);
      w2.col(c2++) = S.col(i);
    }
    for (int i = nA + nB; i < pairs; ++i) {
      w2.col(c2++) = S.col(i);
      w2.col(c2++) = S.col(pairs + i);
    }

    const SkewComplementReport rep = skew_complement_check(
        Subspace::from_columns(w1), Subspace::from_columns(w2), form, kTolSkew);
    if (rep.preconditions_ok && rep.verdict) ++passed;
    worst = std::max(worst, rep.equality_residual);
  }
  detail = fmt("%d/1000 instances, worst equality residual %.2e", passed,
               worst);
  return passed == 1000;
}

// 12. Smooth commuting family supported on a ball: brackets vanish
//     everywhere, support is exact, differentials fill rank n inside.
bool bump_family_demo(std::string& detail) {
  const LieAlgebra so3 = LieAlgebra::build_classical(Family::SO, 3);
  const PhaseSpace space = PhaseSpace::lie_poisson(so3);
  const BumpChart chart = so3_bump_chart();
  const FunctionFamily fam = bump_family(chart);
  const int n = chart.n();

  Rng rng(derive_seed(kSeed, 120));
  double worst_bracket = 0.0;
  int outside = 0, support_violations = 0;
  const double scales[5] = {0.05, 0.15, 0.4, 1.0, 2.5};
  for (int t = 0; t < 500; ++t) {
    const Eigen::VectorXd x =
        chart.center + scales[t % 5] * rng.gaussian_vector(3);
    for (int i = 0; i < fam.size(); ++i)
      for (int j = i + 1; j < fam.size(); ++j)
        worst_bracket = std::max(
            worst_bracket,
            std::abs(space.bracket(fam.members[i], fam.members[j], x)));
    if (chart.ball_value(x) >= chart.epsilon) {
      ++outside;
      for (int i = 0; i < fam.size(); ++i)
        if (fam.members[i].value(x) != 0.0 ||
            fam.members[i].grad(x).norm() != 0.0)
          ++support_violations;
    }
  }

  int inside = 0, full_rank = 0;
  for (int t = 0; t < 4000 && inside < 30; ++t) {
    const Eigen::VectorXd x = chart.center + 0.06 * rng.gaussian_vector(3);
    if (!chart.inside(x)) continue;
    ++inside;
    Eigen::MatrixXd J(n, 3);
    for (int i = 0; i < n; ++i) J.row(i) = fam.members[i].grad(x).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    if (svd.singularValues()(n - 1) > 1e-10) ++full_rank;
  }

  detail = fmt(
      "bracket %.2e at 500 pts; %d outside exact; rank %d at %d/%d inside",
      worst_bracket, outside, n, full_rank, inside);
  return worst_bracket < kTolBumpBracket && outside >= 100 &&
         support_violations == 0 && inside >= 30 && full_rank == inside;
}

// 13. Byte-identical reports for identical (config, seed).
bool deterministic_reports(std::string& detail) {
  ScenarioConfig cfg;
  cfg.label = "determinism probe";
  cfg.family = "so";
  cfg.n = 4;
  cfg.seed = 424242;
  cfg.samples = 6;
  cfg.euler_t_end = 1.0;
  cfg.euler_dt = 0.01;
  cfg.checks = {"involutivity", "orbit-completeness", "euler"};

  const std::string r1 = run_scenario(cfg).to_json_text();
  const std::string r2 = run_scenario(cfg).to_json_text();
  const ScenarioConfig reparsed = ScenarioConfig::from_json_text(cfg.to_json_text());
  const std::string r3 = run_scenario(reparsed).to_json_text();

  detail = fmt("three runs, %zu bytes each, %s", r1.size(),
               (r1 == r2 && r2 == r3) ? "byte-identical" : "MISMATCH");
  return r1 == r2 && r2 == r3;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"algebra invariants", algebra_invariants},
      {"shift involutivity", shift_involutivity},
      {"orbit span", orbit_span},
      {"coefficient count", coefficient_count},
      {"base-point dimension pair", base_point_dimension_pair},
      {"collective motion", collective_motion},
      {"flow conservation", conservation},
      {"geodesic invariants", geodesic_invariants},
      {"biquotient identity", biquotient_identity},
      {"horizontal geodesics", horizontal_conservation},
      {"skew complement suite", skew_complement_suite},
      {"bump family demo", bump_family_demo},
      {"deterministic reports", deterministic_reports},
  };

  int failures = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = fmt("exception: %s", e.what());
    }
    if (!ok) ++failures;
    std::printf("[%s] %02zu %-26s %s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), detail.c_str());
    std::fflush(stdout);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("%d/%zu criteria passed in %.1f s\n",
              static_cast<int>(criteria.size()) - failures, criteria.size(),
              secs);
  return failures;
}

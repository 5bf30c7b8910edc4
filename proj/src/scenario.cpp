#include "lieflow/scenario.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <map>
#include <ostream>
#include <stdexcept>

#include "lieflow/argshift.hpp"
#include "lieflow/biquot.hpp"
#include "lieflow/homspace.hpp"
#include "lieflow/poisson.hpp"
#include "lieflow/rng.hpp"

namespace lieflow {

namespace {

using nlohmann::json;

// Pinned tolerances. Residuals here are either exact-arithmetic identities
// (loose bound far above roundoff) or finite-difference limited (bounded by
// the FD truncation floor times a safety factor).
constexpr double kInvolutivityTol = 1e-9;
constexpr double kMixedFloor = 1e-3;  // cross-shift families must NOT commute
constexpr double kMomentumIdentityTol = 1e-6;
constexpr double kCollectiveTol = 1e-5;
constexpr double kSubspaceTol = 1e-6;
constexpr double kExactArithmeticTol = 1e-10;
constexpr double kBumpBracketTol = 1e-8;
constexpr double kCanonicalPairTol = 1e-9;
constexpr double kOrderLow = 12.0;  // fourth-order step halving: ratio ~ 17
constexpr double kOrderHigh = 20.0;

void require_keys(const json& j, const std::string& ctx,
                  std::initializer_list<const char*> allowed) {
  if (!j.is_object())
    throw std::invalid_argument(ctx + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) ok = true;
    if (!ok)
      throw std::invalid_argument("unknown key '" + item.key() + "' in " +
                                  ctx);
  }
}

EmbeddingSpec parse_embedding(const json& j, const std::string& ctx) {
  require_keys(j, ctx, {"type", "blocks", "weights"});
  EmbeddingSpec spec;
  spec.present = true;
  if (!j.contains("type"))
    throw std::invalid_argument(ctx + " needs a 'type'");
  spec.type = j.at("type").get<std::string>();
  if (j.contains("blocks"))
    spec.blocks = j.at("blocks").get<std::vector<int>>();
  if (j.contains("weights"))
    spec.weights = j.at("weights").get<std::vector<int>>();
  if (spec.type == "so-block" && spec.blocks.empty())
    throw std::invalid_argument(ctx + " of type so-block needs 'blocks'");
  if (spec.type == "circle" && spec.weights.empty())
    throw std::invalid_argument(ctx + " of type circle needs 'weights'");
  return spec;
}

json embedding_json(const EmbeddingSpec& spec) {
  json j;
  j["type"] = spec.type;
  if (!spec.blocks.empty()) j["blocks"] = spec.blocks;
  if (!spec.weights.empty()) j["weights"] = spec.weights;
  return j;
}

std::string brief(double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.3g", v);
  return std::string(buf, buf + len);
}

// Everything the individual checks share.
struct Context {
  const ScenarioConfig& cfg;
  LieAlgebra alg;

  explicit Context(const ScenarioConfig& c)
      : cfg(c),
        alg(LieAlgebra::build_classical(family_from_name(c.family), c.n)) {}

  AlgebraVector shift_element() const {
    if (!cfg.shift.empty()) {
      if (static_cast<int>(cfg.shift.size()) != alg.dim())
        throw std::invalid_argument("'shift' must have " +
                                    std::to_string(alg.dim()) + " entries");
      return Eigen::Map<const Eigen::VectorXd>(cfg.shift.data(),
                                               cfg.shift.size());
    }
    return alg.random_regular(derive_seed(cfg.seed, 101));
  }

  HomogeneousSpace homspace() const {
    if (!cfg.isotropy.present)
      throw std::invalid_argument(
          "this check needs an 'isotropy' subalgebra entry");
    return HomogeneousSpace(alg, build_embedding(alg, cfg.isotropy));
  }

  Biquotient biquotient() const {
    if (!cfg.left.present || !cfg.right.present)
      throw std::invalid_argument(
          "this check needs 'left' and 'right' subalgebra entries");
    return Biquotient(alg, build_embedding(alg, cfg.left),
                      build_embedding(alg, cfg.right));
  }

  Eigen::VectorXd covector(int m) const {
    if (!cfg.w0.empty()) {
      if (static_cast<int>(cfg.w0.size()) != m)
        throw std::invalid_argument("'w0' must have " + std::to_string(m) +
                                    " entries");
      return Eigen::Map<const Eigen::VectorXd>(cfg.w0.data(), cfg.w0.size());
    }
    Rng rng(derive_seed(cfg.seed, 202));
    Eigen::VectorXd w = rng.gaussian_vector(m);
    return w / w.norm();
  }
};

double cross_involutivity(const LieAlgebra& alg, const FunctionFamily& fa,
                          const FunctionFamily& fb, int samples,
                          std::uint64_t seed) {
  const PhaseSpace space = PhaseSpace::lie_poisson(alg);
  const Sampler sampler = gaussian_sampler(alg.dim(), seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = sampler(s);
    const Eigen::MatrixXd pi = space.bivector(x);
    for (const auto& f : fa.members) {
      const Eigen::VectorXd gf = gradient(f, x);
      for (const auto& g : fb.members) {
        const Eigen::VectorXd gg = gradient(g, x);
        const double r =
            std::abs(gf.dot(pi * gg)) / (gf.norm() * gg.norm() + 1e-300);
        worst = std::max(worst, r);
      }
    }
  }
  return worst;
}

CheckResult check_involutivity(const Context& ctx) {
  CheckResult res;
  res.kind = "involutivity";
  const AlgebraVector a = ctx.shift_element();
  const ShiftFamily fam = make_shift_family(ctx.alg, a);
  const FunctionFamily F = fam.family();
  const InvolutivityReport rep = involutivity_check(
      ctx.alg, F, ctx.cfg.samples, derive_seed(ctx.cfg.seed, 1));

  const AlgebraVector b = ctx.alg.random_regular(derive_seed(ctx.cfg.seed, 102));
  const ShiftFamily famB = make_shift_family(ctx.alg, b);
  const double mixed =
      cross_involutivity(ctx.alg, F, famB.family(),
                         std::min(ctx.cfg.samples, 8),
                         derive_seed(ctx.cfg.seed, 2));

  res.metrics = {{"family_residual", rep.max_residual},
                 {"mixed_residual", mixed},
                 {"family_size", static_cast<double>(fam.working_size())},
                 {"samples", static_cast<double>(rep.samples)}};
  res.passed = rep.max_residual < kInvolutivityTol && mixed > kMixedFloor;
  res.detail = "family residual " + brief(rep.max_residual) +
               ", mixed-shift control " + brief(mixed);
  return res;
}

CheckResult check_orbit_completeness(const Context& ctx) {
  CheckResult res;
  res.kind = "orbit-completeness";
  const ShiftFamily fam = make_shift_family(ctx.alg, ctx.shift_element());
  const FunctionFamily F = fam.family();
  int complete = 0;
  std::map<int, int> span_hist;
  const int samples = std::max(5, std::min(ctx.cfg.samples, 25));
  OrbitCompletenessReport last;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(ctx.cfg.seed, 300 + s));
    const AlgebraVector mu = rng.gaussian_vector(ctx.alg.dim());
    last = orbit_completeness(ctx.alg, F, mu, ctx.cfg.rank_tol);
    if (last.complete) ++complete;
    ++span_hist[last.span_dim];
  }
  int span_mode = 0, best = 0;
  for (const auto& [v, c] : span_hist)
    if (c > best) {
      best = c;
      span_mode = v;
    }
  res.metrics = {{"samples", static_cast<double>(samples)},
                 {"complete_count", static_cast<double>(complete)},
                 {"span_mode", static_cast<double>(span_mode)},
                 {"orbit_dim_last", static_cast<double>(last.orbit_dim)}};
  res.passed = (complete == samples);
  res.detail = std::to_string(complete) + "/" + std::to_string(samples) +
               " sampled orbits complete, span mode " +
               std::to_string(span_mode);
  return res;
}

CheckResult check_dimension_pair(const Context& ctx) {
  CheckResult res;
  res.kind = "dimension-pair";
  const HomogeneousSpace hs = ctx.homspace();
  const DimensionPairReport rep = dimension_pair_check(
      hs, derive_seed(ctx.cfg.seed, 3), 5, std::max(ctx.cfg.rank_tol, 1e-8));
  res.metrics = {
      {"phase_dim", static_cast<double>(rep.phase_dim)},
      {"dim_gz", static_cast<double>(rep.dim_gz)},
      {"dim_gmu", static_cast<double>(rep.dim_gmu)},
      {"formula_ddim", static_cast<double>(rep.formula_ddim)},
      {"formula_dind", static_cast<double>(rep.formula_dind)},
      {"rank_ddim", static_cast<double>(rep.rank_ddim)},
      {"rank_dind", static_cast<double>(rep.rank_dind)},
      {"w_equality_residual", rep.w_equality_residual},
      {"coisotropy_residual", rep.coisotropy_residual},
      {"resamples", static_cast<double>(rep.resamples)}};
  res.passed = rep.formulas_match_ranks && rep.complete && rep.coisotropic &&
               rep.w_equality_residual < kSubspaceTol;
  res.detail = "ddim " + std::to_string(rep.rank_ddim) + " dind " +
               std::to_string(rep.rank_dind) + " of " +
               std::to_string(rep.phase_dim) +
               (rep.formulas_match_ranks ? ", formulas match"
                                         : ", FORMULA MISMATCH");
  return res;
}

CheckResult check_noether(const Context& ctx) {
  CheckResult res;
  res.kind = "noether";
  const HomogeneousSpace hs = ctx.homspace();
  const Eigen::VectorXd w = ctx.covector(hs.m());
  const MomentumActionReport rep = noether_check(
      hs, w, std::min(ctx.cfg.samples, 10), derive_seed(ctx.cfg.seed, 4));
  res.metrics = {{"identity_residual", rep.identity_residual},
                 {"morphism_residual", rep.morphism_residual},
                 {"samples", static_cast<double>(rep.samples)}};
  res.passed = rep.identity_residual < kMomentumIdentityTol &&
               rep.morphism_residual < kMomentumIdentityTol;
  res.detail = "momentum identity " + brief(rep.identity_residual) +
               ", bracket morphism " + brief(rep.morphism_residual);
  return res;
}

CheckResult check_collective(const Context& ctx) {
  CheckResult res;
  res.kind = "collective";
  const HomogeneousSpace hs = ctx.homspace();
  Rng rng(derive_seed(ctx.cfg.seed, 5));
  const int d = ctx.alg.dim();
  Eigen::MatrixXd A(d, d);
  for (int i = 0; i < d; ++i) A.col(i) = rng.gaussian_vector(d);
  const Eigen::MatrixXd S = 0.5 * (A + A.transpose());
  ScalarFunction h;
  h.label = "quadratic";
  h.value = [S](const Eigen::VectorXd& x) { return 0.5 * x.dot(S * x); };
  h.grad = [S](const Eigen::VectorXd& x) { return Eigen::VectorXd(S * x); };

  const CollectiveReport rep = collective_consistency(
      hs, h, std::min(ctx.cfg.samples, 6), derive_seed(ctx.cfg.seed, 6));
  res.metrics = {{"field_residual", rep.field_residual},
                 {"samples", static_cast<double>(rep.samples)}};
  res.passed = rep.field_residual < kCollectiveTol;
  res.detail = "pushforward field residual " + brief(rep.field_residual);
  return res;
}

CheckResult check_euler(const Context& ctx) {
  CheckResult res;
  res.kind = "euler";
  const LieAlgebra& alg = ctx.alg;
  const AlgebraVector a = ctx.shift_element();

  // Commuting partner and spectrum from the centralizer of a.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(alg.ad(a), Eigen::ComputeFullV);
  const int cdim = alg.centralizer_dim(a);
  const Eigen::MatrixXd Z = svd.matrixV().rightCols(cdim);
  Rng rng(derive_seed(ctx.cfg.seed, 7));
  AlgebraVector b = Z * rng.gaussian_vector(cdim);
  b /= b.norm();
  Eigen::VectorXd D(cdim);
  for (int i = 0; i < cdim; ++i) D[i] = 0.5 + rng.uniform();

  const SectionalOperator op = sectional_operator(alg, a, b, D);
  const ScalarFunction h = sectional_hamiltonian(alg, op);

  const ShiftFamily fam = make_shift_family(alg, a);
  FunctionFamily tracked = fam.family();
  tracked.members.push_back(h);

  Rng rng2(derive_seed(ctx.cfg.seed, 8));
  const AlgebraVector xi0 = rng2.gaussian_vector(alg.dim());

  const double t_end = ctx.cfg.euler_t_end;
  const double dt = ctx.cfg.euler_dt;
  const int stride = std::max(1, static_cast<int>(std::llround(t_end / dt)) / 100);
  const TrajectoryRecord rec = euler_flow(alg, h, xi0, t_end, dt, tracked, stride);
  const double drift = rec.max_drift();

  // Step-halving order: with the fine run as reference the error ratio of
  // (2 dt, dt) sits near (2^4 * 16 - 1) / (16 - 1) ~ 17.
  const FunctionFamily none{alg.dim(), {}};
  const auto final_state = [&](double step) {
    const TrajectoryRecord r = euler_flow(alg, h, xi0, t_end, step, none,
                                          1 << 30);
    return Eigen::VectorXd(r.states.row(r.rows() - 1));
  };
  const Eigen::VectorXd ref = final_state(dt / 2.0);
  const double e1 = (final_state(2.0 * dt) - ref).norm();
  const double e2 = (final_state(dt) - ref).norm();
  const double ratio = e1 / (e2 + 1e-300);

  res.metrics = {{"integral_drift", drift},
                 {"convergence_ratio", ratio},
                 {"tracked", static_cast<double>(tracked.size())},
                 {"symmetry_residual", op.symmetry_residual},
                 {"solve_residual", op.solve_residual}};
  res.passed = drift < ctx.cfg.drift_tol && ratio > kOrderLow &&
               ratio < kOrderHigh;
  res.detail = "integral drift " + brief(drift) + ", step-halving ratio " +
               brief(ratio);
  return res;
}

CheckResult check_geodesic(const Context& ctx) {
  CheckResult res;
  res.kind = "geodesic";
  const HomogeneousSpace hs = ctx.homspace();
  const Eigen::VectorXd w0 = ctx.covector(hs.m());
  const int steps =
      static_cast<int>(std::llround(ctx.cfg.geo_t_end / ctx.cfg.geo_dt));
  const GeodesicReport rep =
      geodesic_flow(hs, w0, ctx.cfg.geo_t_end, ctx.cfg.geo_dt,
                    std::max(1, steps / 50));
  res.metrics = {{"exact_residual", rep.exact_residual},
                 {"moment_drift", rep.moment_drift},
                 {"energy_drift", rep.energy_drift}};
  res.passed = rep.exact_residual < ctx.cfg.drift_tol &&
               rep.moment_drift < ctx.cfg.drift_tol &&
               rep.energy_drift < ctx.cfg.drift_tol;
  res.detail = "one-parameter orbit residual " + brief(rep.exact_residual) +
               ", momentum drift " + brief(rep.moment_drift);

  try {
    const SphereClosingReport close = sphere_closing_check(
        hs, w0, std::min(ctx.cfg.geo_t_end, 0.5), ctx.cfg.geo_dt);
    res.metrics.push_back({"period", close.period});
    res.metrics.push_back({"closure_error", close.closure_error});
    res.metrics.push_back({"midpoint_distance", close.midpoint_distance});
    res.passed = res.passed && close.closed;
    res.detail += ", closes after " + brief(close.period);
  } catch (const std::invalid_argument&) {
    // Isotropy fixes no direction: not a round-sphere style space; the
    // closing portion does not apply.
  }
  return res;
}

CheckResult check_biq_identity(const Context& ctx) {
  CheckResult res;
  res.kind = "biq-identity";
  const Biquotient bq = ctx.biquotient();
  const BiquotientIdentityReport rep = dimension_identity_check(
      bq, std::max(20, ctx.cfg.samples), derive_seed(ctx.cfg.seed, 9),
      ctx.cfg.rank_tol);
  res.metrics = {
      {"expected", static_cast<double>(rep.expected)},
      {"mode_sum", static_cast<double>(rep.mode_sum)},
      {"mode_left", static_cast<double>(rep.mode_left)},
      {"mode_right", static_cast<double>(rep.mode_right)},
      {"samples", static_cast<double>(rep.samples)},
      {"unstable_samples", static_cast<double>(rep.unstable_samples)},
      {"route_disagreements", static_cast<double>(rep.route_disagreements)}};
  res.passed = rep.holds && 10 * rep.unstable_samples <= rep.samples;
  res.detail = "ddim sum " + std::to_string(rep.mode_sum) + " vs expected " +
               std::to_string(rep.expected) + " (" +
               std::to_string(rep.mode_left) + "+" +
               std::to_string(rep.mode_right) + ")";
  return res;
}

CheckResult check_freeness(const Context& ctx) {
  CheckResult res;
  res.kind = "freeness";
  const Biquotient bq = ctx.biquotient();
  const FreenessReport rep = freeness_check(
      bq, std::max(10, ctx.cfg.samples), derive_seed(ctx.cfg.seed, 10),
      ctx.cfg.rank_tol);
  res.metrics = {
      {"samples", static_cast<double>(rep.samples)},
      {"max_stabilizer_dim", static_cast<double>(rep.max_stabilizer_dim)}};
  res.passed = rep.free_at_samples;
  res.detail = "stabilizer dim " + std::to_string(rep.max_stabilizer_dim) +
               " over " + std::to_string(rep.samples) +
               " sampled points (sampled evidence, not a proof)";
  return res;
}

CheckResult check_biq_geodesic(const Context& ctx) {
  CheckResult res;
  res.kind = "biq-geodesic";
  const Biquotient bq = ctx.biquotient();
  const int steps =
      static_cast<int>(std::llround(ctx.cfg.geo_t_end / ctx.cfg.geo_dt));
  const HorizontalGeodesicReport rep = horizontal_geodesic(
      bq, derive_seed(ctx.cfg.seed, 11), ctx.cfg.geo_t_end, ctx.cfg.geo_dt,
      std::max(1, steps / 50));
  res.metrics = {{"velocity_drift", rep.velocity_drift},
                 {"body_velocity_drift", rep.body_velocity_drift},
                 {"horizontality_residual", rep.horizontality_residual},
                 {"group_residual", rep.group_residual}};
  res.passed = rep.velocity_drift < ctx.cfg.drift_tol &&
               rep.body_velocity_drift < ctx.cfg.drift_tol &&
               rep.horizontality_residual < kExactArithmeticTol &&
               rep.group_residual < kExactArithmeticTol;
  res.detail = "trivialized velocity drift " + brief(std::max(
                   rep.velocity_drift, rep.body_velocity_drift));
  return res;
}

CheckResult check_bump_demo(const Context& ctx) {
  CheckResult res;
  res.kind = "bump-demo";
  const LieAlgebra so3 = LieAlgebra::build_classical(Family::SO, 3);
  const PhaseSpace space = PhaseSpace::lie_poisson(so3);
  const BumpChart chart = so3_bump_chart();
  const FunctionFamily fam = bump_family(chart);

  std::vector<Eigen::VectorXd> inside, outside;
  Rng rng(derive_seed(ctx.cfg.seed, 12));
  int guard = 0;
  while (static_cast<int>(inside.size()) < 10 && guard++ < 4000) {
    const Eigen::VectorXd x = chart.center + 0.08 * rng.gaussian_vector(3);
    if (chart.inside(x) && chart.ball_value(x) < 0.8 * chart.epsilon)
      inside.push_back(x);
  }
  while (static_cast<int>(outside.size()) < 10 && guard++ < 8000) {
    const Eigen::VectorXd x = chart.center + 1.5 * rng.gaussian_vector(3);
    if (chart.ball_value(x) >= chart.epsilon) outside.push_back(x);
  }
  if (inside.size() < 10 || outside.size() < 10)
    throw std::runtime_error("bump chart sampling failed");

  double bracket_residual = 0.0;
  double canonical_residual = 0.0;
  double casimir_residual = 0.0;
  double max_inside = 0.0;
  int support_violations = 0;

  for (const auto& x : inside) {
    for (int i = 0; i < fam.size(); ++i) {
      max_inside = std::max(max_inside, std::abs(fam.members[i].value(x)));
      for (int j = i + 1; j < fam.size(); ++j)
        bracket_residual =
            std::max(bracket_residual,
                     std::abs(space.bracket(fam.members[i], fam.members[j], x)));
    }
    canonical_residual =
        std::max(canonical_residual,
                 std::abs(space.bracket(chart.G[0], chart.G[1], x) - 1.0));
    for (int i = 0; i < chart.l - 1; ++i)
      casimir_residual = std::max(
          casimir_residual,
          std::abs(space.bracket(chart.G[i], chart.G[chart.l - 1], x)));
  }
  for (const auto& x : outside) {
    for (int i = 0; i < fam.size(); ++i) {
      if (fam.members[i].value(x) != 0.0) ++support_violations;
      if (gradient(fam.members[i], x).norm() != 0.0) ++support_violations;
      for (int j = i + 1; j < fam.size(); ++j)
        bracket_residual =
            std::max(bracket_residual,
                     std::abs(space.bracket(fam.members[i], fam.members[j], x)));
    }
  }

  res.metrics = {{"bracket_residual", bracket_residual},
                 {"canonical_residual", canonical_residual},
                 {"casimir_residual", casimir_residual},
                 {"support_violations", static_cast<double>(support_violations)},
                 {"max_inside_value", max_inside}};
  res.passed = bracket_residual < kBumpBracketTol &&
               canonical_residual < kCanonicalPairTol &&
               casimir_residual < kCanonicalPairTol &&
               support_violations == 0 && max_inside > 0.0;
  res.detail = "commuting residual " + brief(bracket_residual) +
               ", exact zero outside the ball, peak " + brief(max_inside);
  return res;
}

CheckResult dispatch(const Context& ctx, const std::string& kind) {
  if (kind == "involutivity") return check_involutivity(ctx);
  if (kind == "orbit-completeness") return check_orbit_completeness(ctx);
  if (kind == "dimension-pair") return check_dimension_pair(ctx);
  if (kind == "noether") return check_noether(ctx);
  if (kind == "collective") return check_collective(ctx);
  if (kind == "euler") return check_euler(ctx);
  if (kind == "geodesic") return check_geodesic(ctx);
  if (kind == "biq-identity") return check_biq_identity(ctx);
  if (kind == "biq-geodesic") return check_biq_geodesic(ctx);
  if (kind == "freeness") return check_freeness(ctx);
  if (kind == "bump-demo") return check_bump_demo(ctx);
  throw std::invalid_argument("unknown check kind '" + kind + "'");
}

}  // namespace

SubalgebraEmbedding build_embedding(const LieAlgebra& alg,
                                    const EmbeddingSpec& spec) {
  if (spec.type == "so-block") return so_block_embedding(alg, spec.blocks);
  if (spec.type == "circle") return circle_embedding(alg, spec.weights);
  if (spec.type == "torus") return torus_embedding(alg);
  if (spec.type == "so3-in-su3") return so3_in_su3_embedding(alg);
  if (spec.type == "trivial") return trivial_embedding(alg);
  throw std::invalid_argument("unknown subalgebra type '" + spec.type + "'");
}

const std::vector<std::string>& known_check_kinds() {
  static const std::vector<std::string> kinds = {
      "involutivity", "orbit-completeness", "dimension-pair", "noether",
      "collective",   "euler",              "geodesic",       "biq-identity",
      "biq-geodesic", "freeness",           "bump-demo"};
  return kinds;
}

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
  return from_json_text(text, ScenarioConfig{});
}

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text,
                                              const ScenarioConfig& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  require_keys(j, "config",
               {"label", "family", "n", "seed", "samples", "rank_tol",
                "drift_tol", "checks", "shift", "w0", "isotropy", "left",
                "right", "euler", "geodesic"});
  ScenarioConfig cfg = base;
  if (j.contains("label")) cfg.label = j.at("label").get<std::string>();
  if (j.contains("family")) cfg.family = j.at("family").get<std::string>();
  if (j.contains("n")) cfg.n = j.at("n").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
  if (j.contains("rank_tol")) cfg.rank_tol = j.at("rank_tol").get<double>();
  if (j.contains("drift_tol")) cfg.drift_tol = j.at("drift_tol").get<double>();
  if (j.contains("checks"))
    cfg.checks = j.at("checks").get<std::vector<std::string>>();
  if (j.contains("shift"))
    cfg.shift = j.at("shift").get<std::vector<double>>();
  if (j.contains("w0")) cfg.w0 = j.at("w0").get<std::vector<double>>();
  if (j.contains("isotropy"))
    cfg.isotropy = parse_embedding(j.at("isotropy"), "isotropy");
  if (j.contains("left")) cfg.left = parse_embedding(j.at("left"), "left");
  if (j.contains("right")) cfg.right = parse_embedding(j.at("right"), "right");
  if (j.contains("euler")) {
    require_keys(j.at("euler"), "euler", {"t_end", "dt"});
    if (j.at("euler").contains("t_end"))
      cfg.euler_t_end = j.at("euler").at("t_end").get<double>();
    if (j.at("euler").contains("dt"))
      cfg.euler_dt = j.at("euler").at("dt").get<double>();
  }
  if (j.contains("geodesic")) {
    require_keys(j.at("geodesic"), "geodesic", {"t_end", "dt"});
    if (j.at("geodesic").contains("t_end"))
      cfg.geo_t_end = j.at("geodesic").at("t_end").get<double>();
    if (j.at("geodesic").contains("dt"))
      cfg.geo_dt = j.at("geodesic").at("dt").get<double>();
  }

  if (cfg.n < 2) throw std::invalid_argument("'n' must be at least 2");
  if (cfg.samples < 1) throw std::invalid_argument("'samples' must be positive");
  if (cfg.rank_tol <= 0 || cfg.drift_tol <= 0)
    throw std::invalid_argument("tolerances must be positive");
  if (cfg.euler_dt <= 0 || cfg.euler_t_end <= 0 || cfg.geo_dt <= 0 ||
      cfg.geo_t_end <= 0)
    throw std::invalid_argument("integration times must be positive");
  if (cfg.checks.empty())
    throw std::invalid_argument("'checks' must name at least one check");
  for (const std::string& kind : cfg.checks) {
    const auto& known = known_check_kinds();
    if (std::find(known.begin(), known.end(), kind) == known.end())
      throw std::invalid_argument("unknown check kind '" + kind + "'");
  }
  family_from_name(cfg.family);  // validates
  return cfg;
}

namespace {

json config_json(const ScenarioConfig& cfg) {
  json j;
  if (!cfg.label.empty()) j["label"] = cfg.label;
  j["family"] = cfg.family;
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["rank_tol"] = cfg.rank_tol;
  j["drift_tol"] = cfg.drift_tol;
  j["checks"] = cfg.checks;
  if (!cfg.shift.empty()) j["shift"] = cfg.shift;
  if (!cfg.w0.empty()) j["w0"] = cfg.w0;
  if (cfg.isotropy.present) j["isotropy"] = embedding_json(cfg.isotropy);
  if (cfg.left.present) j["left"] = embedding_json(cfg.left);
  if (cfg.right.present) j["right"] = embedding_json(cfg.right);
  j["euler"] = {{"t_end", cfg.euler_t_end}, {"dt", cfg.euler_dt}};
  j["geodesic"] = {{"t_end", cfg.geo_t_end}, {"dt", cfg.geo_dt}};
  return j;
}

}  // namespace

std::string ScenarioConfig::to_json_text() const {
  return config_json(*this).dump(2) + "\n";
}

std::string ReportDocument::to_json_text() const {
  json j;
  j["schema"] = "lieflow.report.v1";
  j["version"] = kVersion;
  j["config"] = config_json(config);
  json arr = json::array();
  for (const CheckResult& r : results) {
    json e;
    e["kind"] = r.kind;
    e["passed"] = r.passed;
    e["detail"] = r.detail;
    json m;
    for (const auto& [k, v] : r.metrics) m[k] = v;
    e["metrics"] = m;
    arr.push_back(e);
  }
  j["checks"] = arr;
  j["passed"] = passed;
  j["failed_count"] = failed_count;
  return j.dump(2) + "\n";
}

ReportDocument run_scenario(const ScenarioConfig& cfg) {
  const Context ctx(cfg);
  ReportDocument doc;
  doc.config = cfg;
  for (const std::string& kind : cfg.checks) {
    CheckResult result;
    try {
      result = dispatch(ctx, kind);
    } catch (const std::runtime_error& e) {
      // A numerical blowup is a failed check, not a crashed run.
      result.kind = kind;
      result.passed = false;
      result.detail = std::string("numerical failure: ") + e.what();
    }
    if (!result.passed) ++doc.failed_count;
    doc.results.push_back(std::move(result));
  }
  doc.passed = (doc.failed_count == 0);
  return doc;
}

void emit_trajectory_csv(const TrajectoryRecord& rec, std::ostream& os) {
  os << "time";
  for (const auto& label : rec.state_labels) os << ',' << label;
  for (const auto& label : rec.tracked_labels) os << ',' << label;
  os << '\n';
  char buf[64];
  const auto put = [&os, &buf](double v) {
    const auto end = std::to_chars(buf, buf + sizeof buf, v,
                                   std::chars_format::general, 17);
    os.write(buf, end.ptr - buf);
  };
  for (int r = 0; r < rec.rows(); ++r) {
    put(rec.times[r]);
    for (int c = 0; c < rec.states.cols(); ++c) {
      os << ',';
      put(rec.states(r, c));
    }
    for (int c = 0; c < rec.tracked.cols(); ++c) {
      os << ',';
      put(rec.tracked(r, c));
    }
    os << '\n';
  }
}

}  // namespace lieflow

#include <CLI11.hpp>

#include <Eigen/Dense>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "lieflow/argshift.hpp"
#include "lieflow/homspace.hpp"
#include "lieflow/poisson.hpp"
#include "lieflow/rng.hpp"
#include "lieflow/scenario.hpp"

namespace {

// flag > config file > LIEFLOW_TOL_RANK > built-in default
lieflow::ScenarioConfig base_config_from_env() {
  lieflow::ScenarioConfig base;
  if (const char* env = std::getenv("LIEFLOW_TOL_RANK")) {
    std::size_t used = 0;
    const double v = std::stod(env, &used);
    if (used != std::string(env).size() || v <= 0.0)
      throw std::invalid_argument(
          "LIEFLOW_TOL_RANK must be a positive number");
    base.rank_tol = v;
  }
  return base;
}

// "torus" | "so3" | "trivial" | "blocks:1,2,3" | "circle:1,-1,0"
lieflow::EmbeddingSpec parse_isotropy_arg(const std::string& text) {
  lieflow::EmbeddingSpec spec;
  spec.present = true;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  std::vector<int> ints;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      ints.push_back(std::stoi(item, &used));
      if (used != item.size())
        throw std::invalid_argument("bad integer '" + item +
                                    "' in isotropy spec");
    }
  }
  if (head == "torus" || head == "trivial") {
    spec.type = head;
  } else if (head == "so3") {
    spec.type = "so3-in-su3";
  } else if (head == "blocks") {
    spec.type = "so-block";
    spec.blocks = ints;
  } else if (head == "circle") {
    spec.type = "circle";
    spec.weights = ints;
  } else {
    throw std::invalid_argument(
        "isotropy spec must be torus | so3 | trivial | blocks:i,j,... | "
        "circle:w1,w2,...");
  }
  if (spec.type == "so-block" && spec.blocks.empty())
    throw std::invalid_argument("blocks: needs at least one index");
  if (spec.type == "circle" && spec.weights.empty())
    throw std::invalid_argument("circle: needs at least one weight");
  return spec;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' to write");
  out << text;
}

void write_csv(const std::string& path, const lieflow::TrajectoryRecord& rec) {
  if (path.empty()) {
    lieflow::emit_trajectory_csv(rec, std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' to write");
  lieflow::emit_trajectory_csv(rec, out);
}

int cmd_info(const std::string& family, int n) {
  const lieflow::LieAlgebra alg = lieflow::LieAlgebra::build_classical(
      lieflow::family_from_name(family), n);
  std::cout << "lieflow " << lieflow::kVersion << "\n"
            << "algebra        " << alg.name() << "\n"
            << "dimension      " << alg.dim() << "\n"
            << "rank           " << alg.rank() << "\n"
            << "pairing diag   " << alg.gram().diagonal().transpose() << "\n"
            << "check kinds   ";
  for (const auto& kind : lieflow::known_check_kinds()) std::cout << ' ' << kind;
  std::cout << "\nsubalgebras    so-block | circle | torus | so3-in-su3 | "
               "trivial\n";
  return 0;
}

int cmd_check(const CLI::App* sub, const std::string& config_path,
              const std::string& out_path, std::uint64_t seed, int samples,
              double tol_rank, double tol_drift) {
  std::ifstream in(config_path);
  if (!in)
    throw std::invalid_argument("cannot read config '" + config_path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());

  lieflow::ScenarioConfig cfg =
      lieflow::ScenarioConfig::from_json_text(text, base_config_from_env());
  if (sub->count("--seed")) cfg.seed = seed;
  if (sub->count("--samples")) cfg.samples = samples;
  if (sub->count("--tol-rank")) cfg.rank_tol = tol_rank;
  if (sub->count("--tol-drift")) cfg.drift_tol = tol_drift;

  const lieflow::ReportDocument doc = lieflow::run_scenario(cfg);
  for (const auto& r : doc.results)
    std::cerr << (r.passed ? "[ ok ] " : "[FAIL] ") << r.kind << ": "
              << r.detail << "\n";
  std::cerr << (doc.passed ? "all checks passed"
                           : std::to_string(doc.failed_count) +
                                 " check(s) failed")
            << "\n";

  const std::string report = doc.to_json_text();
  if (out_path.empty())
    std::cout << report;
  else
    write_text(out_path, report);
  return doc.passed ? 0 : 1;
}

int cmd_euler(const std::string& family, int n, std::uint64_t seed,
              double t_end, double dt, double tol_drift,
              const std::string& out_path) {
  const lieflow::LieAlgebra alg = lieflow::LieAlgebra::build_classical(
      lieflow::family_from_name(family), n);
  const lieflow::AlgebraVector a =
      alg.random_regular(lieflow::derive_seed(seed, 101));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(alg.ad(a), Eigen::ComputeFullV);
  const int cdim = alg.centralizer_dim(a);
  const Eigen::MatrixXd Z = svd.matrixV().rightCols(cdim);
  lieflow::Rng rng(lieflow::derive_seed(seed, 7));
  lieflow::AlgebraVector b = Z * rng.gaussian_vector(cdim);
  b /= b.norm();
  Eigen::VectorXd D(cdim);
  for (int i = 0; i < cdim; ++i) D[i] = 0.5 + rng.uniform();

  const lieflow::SectionalOperator op = lieflow::sectional_operator(alg, a, b, D);
  const lieflow::ScalarFunction h = lieflow::sectional_hamiltonian(alg, op);

  const lieflow::ShiftFamily fam = lieflow::make_shift_family(alg, a);
  lieflow::FunctionFamily tracked = fam.family();
  tracked.members.push_back(h);

  lieflow::Rng rng2(lieflow::derive_seed(seed, 8));
  const lieflow::AlgebraVector xi0 = rng2.gaussian_vector(alg.dim());
  const int steps = static_cast<int>(std::llround(t_end / dt));
  const lieflow::TrajectoryRecord rec = lieflow::euler_flow(
      alg, h, xi0, t_end, dt, tracked, std::max(1, steps / 200));

  write_csv(out_path, rec);
  const double drift = rec.max_drift();
  std::cerr << "tracked " << tracked.size() << " integrals on " << alg.name()
            << ", worst drift " << drift << "\n";
  return drift < tol_drift ? 0 : 1;
}

int cmd_geodesic(const std::string& family, int n, const std::string& isotropy,
                 std::uint64_t seed, double t_end, double dt, double tol_drift,
                 const std::string& out_path) {
  const lieflow::LieAlgebra alg = lieflow::LieAlgebra::build_classical(
      lieflow::family_from_name(family), n);
  const lieflow::HomogeneousSpace hs(
      alg, lieflow::build_embedding(alg, parse_isotropy_arg(isotropy)));

  lieflow::Rng rng(lieflow::derive_seed(seed, 202));
  Eigen::VectorXd w0 = rng.gaussian_vector(hs.m());
  w0 /= w0.norm();

  const int steps = static_cast<int>(std::llround(t_end / dt));
  const lieflow::GeodesicReport rep =
      lieflow::geodesic_flow(hs, w0, t_end, dt, std::max(1, steps / 100));
  write_csv(out_path, rep.record);

  std::cerr << "one-parameter orbit residual " << rep.exact_residual
            << ", momentum drift " << rep.moment_drift << ", energy drift "
            << rep.energy_drift << "\n";
  bool ok = rep.exact_residual < tol_drift && rep.moment_drift < tol_drift &&
            rep.energy_drift < tol_drift;
  try {
    const lieflow::SphereClosingReport close =
        lieflow::sphere_closing_check(hs, w0, std::min(t_end, 0.5), dt);
    std::cerr << "base curve closes after " << close.period
              << " (closure error " << close.closure_error << ")\n";
    ok = ok && close.closed;
  } catch (const std::invalid_argument&) {
    std::cerr << "no fixed direction in the defining space; skipping the "
                 "closing test\n";
  }
  return ok ? 0 : 1;
}

int cmd_bump_demo(std::uint64_t seed, const std::string& out_path,
                  const std::string& report_path) {
  lieflow::ScenarioConfig cfg;
  cfg.label = "bump-demo";
  cfg.family = "so";
  cfg.n = 3;
  cfg.seed = seed;
  cfg.checks = {"bump-demo"};
  const lieflow::ReportDocument doc = lieflow::run_scenario(cfg);

  // Sample the family along a segment that crosses the support ball.
  const lieflow::BumpChart chart = lieflow::so3_bump_chart();
  const lieflow::FunctionFamily fam = lieflow::bump_family(chart);
  const int points = 201;
  const Eigen::Vector3d dir(1.0, 0.0, 0.0);
  lieflow::TrajectoryRecord rec;
  rec.times.resize(points);
  rec.states.resize(points, 3);
  rec.state_labels = {"m1", "m2", "m3"};
  rec.tracked.resize(points, fam.size());
  for (const auto& member : fam.members)
    rec.tracked_labels.push_back(member.label);
  const double half = 2.0 * chart.epsilon;
  for (int i = 0; i < points; ++i) {
    const double t = -half + 2.0 * half * i / (points - 1);
    const Eigen::Vector3d x = chart.center + t * dir;
    rec.times[i] = t;
    rec.states.row(i) = x.transpose();
    for (int j = 0; j < fam.size(); ++j)
      rec.tracked(i, j) = fam.members[j].value(x);
  }
  if (!out_path.empty()) write_csv(out_path, rec);

  const std::string report = doc.to_json_text();
  if (report_path.empty())
    std::cout << report;
  else
    write_text(report_path, report);
  return doc.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "invariant-metric flow toolkit: commuting integral families, momentum "
      "maps on homogeneous spaces, and two-sided quotient dimension checks"};
  app.require_subcommand(1);

  std::string family = "so";
  int n = 4;
  std::uint64_t seed = 2024;
  double t_end = 5.0;
  double dt = 0.01;
  double tol_drift = 1e-6;
  double tol_rank = 1e-9;
  int samples = 25;
  std::string config_path, out_path, report_path, isotropy;

  auto* info = app.add_subcommand("info", "describe an algebra and the toolkit");
  info->add_option("--family", family, "so | su | u");
  info->add_option("--n", n, "defining size");

  auto* check =
      app.add_subcommand("check", "run the checks listed in a scenario config");
  check->add_option("--config", config_path, "scenario JSON path")->required();
  check->add_option("--out", out_path, "report path (default: stdout)");
  check->add_option("--seed", seed, "override the config seed");
  check->add_option("--samples", samples, "override the config sample count");
  check->add_option("--tol-rank", tol_rank, "override the rank tolerance");
  check->add_option("--tol-drift", tol_drift, "override the drift tolerance");

  auto* euler = app.add_subcommand(
      "euler", "integrate a self-adjoint flow and track its integrals");
  euler->add_option("--family", family, "so | su | u");
  euler->add_option("--n", n, "defining size");
  euler->add_option("--seed", seed, "seed for the operator and initial state");
  euler->add_option("--t-end", t_end, "integration time");
  euler->add_option("--dt", dt, "step size");
  euler->add_option("--tol-drift", tol_drift, "pass bound on integral drift");
  euler->add_option("--out", out_path, "trajectory CSV path (default: stdout)");

  auto* geo = app.add_subcommand(
      "geodesic", "integrate the normal-metric geodesic chart flow");
  geo->add_option("--family", family, "so | su | u");
  geo->add_option("--n", n, "defining size");
  geo->add_option("--isotropy", isotropy,
                  "torus | so3 | trivial | blocks:i,j,... | circle:w,...")
      ->required();
  geo->add_option("--seed", seed, "seed for the initial covector");
  geo->add_option("--t-end", t_end, "integration time")->default_val(1.0);
  geo->add_option("--dt", dt, "step size");
  geo->add_option("--tol-drift", tol_drift, "pass bound on drifts");
  geo->add_option("--out", out_path, "trajectory CSV path (default: stdout)");

  auto* bump = app.add_subcommand(
      "bump-demo", "compactly supported commuting family on a spin chart");
  bump->add_option("--seed", seed, "sampling seed");
  bump->add_option("--out", out_path, "profile CSV along a segment");
  bump->add_option("--report", report_path, "report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(info)) return cmd_info(family, n);
    if (app.got_subcommand(check))
      return cmd_check(check, config_path, out_path, seed, samples, tol_rank,
                       tol_drift);
    if (app.got_subcommand(euler))
      return cmd_euler(family, n, seed, t_end, dt, tol_drift, out_path);
    if (app.got_subcommand(geo))
      return cmd_geodesic(family, n, isotropy, seed, t_end, dt, tol_drift,
                          out_path);
    if (app.got_subcommand(bump))
      return cmd_bump_demo(seed, out_path, report_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

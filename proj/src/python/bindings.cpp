#include <Eigen/Dense>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lieflow/algebra.hpp"
#include "lieflow/rng.hpp"
#include "lieflow/argshift.hpp"
#include "lieflow/biquot.hpp"
#include "lieflow/homspace.hpp"
#include "lieflow/scenario.hpp"

namespace py = pybind11;
using namespace lieflow;

namespace {

SubalgebraEmbedding make_embedding(const LieAlgebra& alg,
                                   const std::string& type,
                                   const std::vector<int>& blocks,
                                   const std::vector<int>& weights) {
  EmbeddingSpec spec;
  spec.type = type;
  spec.blocks = blocks;
  spec.weights = weights;
  spec.present = true;
  return build_embedding(alg, spec);
}

py::dict record_dict(const TrajectoryRecord& rec) {
  py::dict d;
  d["times"] = rec.times;
  d["states"] = rec.states;
  d["state_labels"] = rec.state_labels;
  d["tracked"] = rec.tracked;
  d["tracked_labels"] = rec.tracked_labels;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Lie-Poisson brackets, shifted-invariant families, and geodesic flows "
      "on compact homogeneous spaces";

  m.def("version", [] { return std::string(kVersion); });

  py::class_<LieAlgebra>(m, "LieAlgebra")
      .def_property_readonly("name", &LieAlgebra::name)
      .def_property_readonly("dim", &LieAlgebra::dim)
      .def_property_readonly("rank", &LieAlgebra::rank)
      .def_property_readonly("n", &LieAlgebra::n)
      .def("gram", &LieAlgebra::gram)
      .def("bracket", &LieAlgebra::bracket, py::arg("x"), py::arg("y"))
      .def("ad", &LieAlgebra::ad, py::arg("x"))
      .def("inner", &LieAlgebra::inner, py::arg("x"), py::arg("y"))
      .def("matrix", &LieAlgebra::matrix, py::arg("x"),
           "Defining-representation matrix of a coordinate vector.")
      .def("coords", &LieAlgebra::coords, py::arg("X"),
           "Coordinates of a defining-representation matrix.")
      .def("exp_defining", &LieAlgebra::exp_defining, py::arg("x"))
      .def("centralizer_dim", &LieAlgebra::centralizer_dim, py::arg("x"),
           py::arg("rank_tol") = 1e-9)
      .def("random_regular", &LieAlgebra::random_regular, py::arg("seed"),
           py::arg("max_tries") = 100);

  m.def(
      "algebra",
      [](const std::string& family, int n) {
        return LieAlgebra::build_classical(family_from_name(family), n);
      },
      py::arg("family"), py::arg("n"),
      "Compact classical algebra: family 'so', 'su', or 'u'.");

  py::class_<SubalgebraEmbedding>(m, "SubalgebraEmbedding")
      .def_readonly("name", &SubalgebraEmbedding::name)
      .def_readonly("basis", &SubalgebraEmbedding::basis)
      .def_property_readonly("dim", &SubalgebraEmbedding::dim);

  m.def("embedding", &make_embedding, py::arg("algebra"), py::arg("type"),
        py::arg("blocks") = std::vector<int>{},
        py::arg("weights") = std::vector<int>{},
        "Subalgebra selector: 'so-block' (blocks), 'circle' (weights), "
        "'torus', 'so3-in-su3', or 'trivial'.");

  // Shifted-coefficient families.
  m.def(
      "shift_family_labels",
      [](const LieAlgebra& alg, const AlgebraVector& a) {
        const ShiftFamily fam = make_shift_family(alg, a);
        std::vector<std::string> labels;
        for (int idx : fam.working)
          labels.push_back(fam.coefficients[idx].fn.label);
        return labels;
      },
      py::arg("algebra"), py::arg("shift"),
      "Labels of the non-constant shifted coefficients.");

  m.def(
      "involutivity_residual",
      [](const LieAlgebra& alg, const AlgebraVector& a, int samples,
         std::uint64_t seed) {
        const ShiftFamily fam = make_shift_family(alg, a);
        return involutivity_check(alg, fam.family(), samples, seed)
            .max_residual;
      },
      py::arg("algebra"), py::arg("shift"), py::arg("samples") = 50,
      py::arg("seed") = 2024,
      "Worst normalized pairwise bracket of the shifted coefficients.");

  m.def(
      "orbit_completeness",
      [](const LieAlgebra& alg, const AlgebraVector& a,
         const AlgebraVector& mu) {
        const ShiftFamily fam = make_shift_family(alg, a);
        const OrbitCompletenessReport rep =
            orbit_completeness(alg, fam.family(), mu);
        py::dict d;
        d["span_dim"] = rep.span_dim;
        d["orbit_dim"] = rep.orbit_dim;
        d["complete"] = rep.complete;
        return d;
      },
      py::arg("algebra"), py::arg("shift"), py::arg("mu"),
      "Hamiltonian-direction span of the family on the orbit through mu.");

  m.def(
      "euler_flow",
      [](const LieAlgebra& alg, const AlgebraVector& a,
         const AlgebraVector& xi0, double t_end, double dt, int stride) {
        const ShiftFamily fam = make_shift_family(alg, a);
        Rng rng(derive_seed(2024, 7));
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(alg.ad(a),
                                              Eigen::ComputeFullV);
        AlgebraVector b =
            svd.matrixV().rightCols(alg.rank()) *
            rng.gaussian_vector(alg.rank());
        b /= b.norm();
        Eigen::VectorXd diag(alg.rank());
        for (int i = 0; i < diag.size(); ++i) diag[i] = 0.5 + rng.uniform();
        const SectionalOperator op = sectional_operator(alg, a, b, diag);
        const TrajectoryRecord rec =
            lieflow::euler_flow(alg, sectional_hamiltonian(alg, op), xi0,
                                t_end, dt, fam.family(), stride);
        return record_dict(rec);
      },
      py::arg("algebra"), py::arg("shift"), py::arg("xi0"), py::arg("t_end"),
      py::arg("dt"), py::arg("stride") = 10,
      "Sectional-operator Euler flow tracking the shifted coefficients.");

  py::class_<HomogeneousSpace>(m, "HomogeneousSpace")
      .def(py::init<const LieAlgebra&, const SubalgebraEmbedding&>(),
           py::arg("algebra"), py::arg("isotropy"))
      .def_property_readonly("m", &HomogeneousSpace::m)
      .def_property_readonly("dim_h", &HomogeneousSpace::dim_h)
      .def_property_readonly("phase_dim", &HomogeneousSpace::phase_dim)
      .def("moment_map", &HomogeneousSpace::moment_map, py::arg("z"))
      .def(
          "geodesic",
          [](const HomogeneousSpace& hs, const Eigen::VectorXd& w0,
             double t_end, double dt, int stride) {
            const GeodesicReport rep =
                geodesic_flow(hs, w0, t_end, dt, stride);
            py::dict d = record_dict(rep.record);
            d["exact_residual"] = rep.exact_residual;
            d["moment_drift"] = rep.moment_drift;
            d["energy_drift"] = rep.energy_drift;
            return d;
          },
          py::arg("w0"), py::arg("t_end") = 1.0, py::arg("dt") = 0.01,
          py::arg("stride") = 10)
      .def(
          "dimension_pair",
          [](const HomogeneousSpace& hs, std::uint64_t seed) {
            const DimensionPairReport rep = dimension_pair_check(hs, seed);
            py::dict d;
            d["ddim"] = rep.formula_ddim;
            d["dind"] = rep.formula_dind;
            d["rank_ddim"] = rep.rank_ddim;
            d["rank_dind"] = rep.rank_dind;
            d["complete"] = rep.complete;
            d["coisotropic"] = rep.coisotropic;
            return d;
          },
          py::arg("seed") = 2024);

  py::class_<Biquotient>(m, "Biquotient")
      .def(py::init<const LieAlgebra&, const SubalgebraEmbedding&,
                    const SubalgebraEmbedding&>(),
           py::arg("algebra"), py::arg("left"), py::arg("right"))
      .def_property_readonly("quotient_dim", &Biquotient::quotient_dim)
      .def_property_readonly("dim_left", &Biquotient::dim_left)
      .def_property_readonly("dim_right", &Biquotient::dim_right)
      .def(
          "dimension_identity",
          [](const Biquotient& bq, int samples, std::uint64_t seed) {
            const BiquotientIdentityReport rep =
                dimension_identity_check(bq, samples, seed);
            py::dict d;
            d["expected"] = rep.expected;
            d["mode_sum"] = rep.mode_sum;
            d["mode_left"] = rep.mode_left;
            d["mode_right"] = rep.mode_right;
            d["holds"] = rep.holds;
            return d;
          },
          py::arg("samples") = 20, py::arg("seed") = 2024)
      .def(
          "horizontal_geodesic",
          [](const Biquotient& bq, std::uint64_t seed, double t_end,
             double dt) {
            const HorizontalGeodesicReport rep =
                horizontal_geodesic(bq, seed, t_end, dt, 10);
            py::dict d;
            d["velocity_drift"] = rep.velocity_drift;
            d["body_velocity_drift"] = rep.body_velocity_drift;
            d["horizontality_residual"] = rep.horizontality_residual;
            d["group_residual"] = rep.group_residual;
            return d;
          },
          py::arg("seed") = 2024, py::arg("t_end") = 3.0,
          py::arg("dt") = 0.05);

  m.def("check_kinds", [] { return known_check_kinds(); },
        "Names accepted in a scenario's 'checks' list.");

  m.def(
      "run_scenario_json",
      [](const std::string& config_text) {
        const ScenarioConfig cfg = ScenarioConfig::from_json_text(config_text);
        return run_scenario(cfg).to_json_text();
      },
      py::arg("config_text"),
      "Runs a scenario config (JSON text) and returns the report (JSON "
      "text). Identical input produces byte-identical output.");
}

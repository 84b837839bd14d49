// Python bindings for the model laboratory core.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rgm/analysis.hpp"
#include "rgm/lab.hpp"
#include "rgm/mobility.hpp"
#include "rgm/model.hpp"
#include "rgm/representation.hpp"
#include "rgm/zoo.hpp"

namespace py = pybind11;
using namespace rgm;

namespace {

py::dict estimate_dict(const stats::Estimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["trials"] = e.trials;
  d["ci_level"] = e.ci_level;
  return d;
}

std::vector<std::vector<int>> adjacency(const LabeledGraph& g) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(g.n()),
                                     std::vector<int>(static_cast<std::size_t>(g.n()), 0));
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.edge(i, j)) {
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
      }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "random graph model laboratory core";

  py::class_<ModelSpec>(m, "Model")
      .def_property_readonly("family", &ModelSpec::family)
      .def_property_readonly("local", [](const ModelSpec& s) { return s.flags().local; })
      .def_property_readonly("name_invariant",
                             [](const ModelSpec& s) { return s.flags().name_invariant; })
      .def_property_readonly("free_nodes",
                             [](const ModelSpec& s) { return s.flags().free_nodes; });

  m.def("gnp", &make_gnp, py::arg("p"));
  m.def("mixture_uniform01", []() { return make_mixture(MixtureLaw::uniform01()); });
  m.def("mixture_beta",
        [](double a, double b) { return make_mixture(MixtureLaw::beta(a, b)); },
        py::arg("a"), py::arg("b"));
  m.def("mixture_two_point",
        [](double p1, double p2, double w) {
          return make_mixture(MixtureLaw::two_point(p1, p2, w));
        },
        py::arg("p1"), py::arg("p2"), py::arg("w"));
  m.def("sphere_cluster", &make_sphere_cluster, py::arg("R"), py::arg("r"),
        py::arg("threshold"));
  m.def("knn", &make_knn, py::arg("k"));
  m.def("footnote2", &make_footnote2, py::arg("n"));
  m.def("connected_maxdeg3", &make_connected_maxdeg3, py::arg("n"));
  m.def("rigged", &make_rigged, py::arg("p_special"), py::arg("p_other"));
  m.def("wrap_exchangeable", &wrap_exchangeable, py::arg("base"));
  m.def("encode_theorem1", &encode_theorem1, py::arg("base"), py::arg("n_max"));
  m.def("encode_theorem2", &encode_theorem2, py::arg("base"), py::arg("n_max"));

  m.def(
      "sample_adjacency",
      [](const ModelSpec& model, int n, std::uint64_t seed, std::uint64_t trial) {
        return adjacency(sample_graph(model, n, RngKey{seed, trial}));
      },
      py::arg("model"), py::arg("n"), py::arg("seed"), py::arg("trial") = 0,
      "Adjacency matrix (list of 0/1 rows) of one seeded realization.");

  m.def(
      "analyze_sample",
      [](const ModelSpec& model, int n, std::uint64_t seed, std::uint64_t trial) {
        const auto g = sample_graph(model, n, RngKey{seed, trial});
        const auto s = analyze(g);
        py::dict d;
        d["edges"] = g.edge_count();
        d["components"] = s.component_count;
        d["largest"] = s.largest_size;
        d["isolated"] = s.isolated_count;
        d["avg_degree"] = average_degree(g);
        return d;
      },
      py::arg("model"), py::arg("n"), py::arg("seed"), py::arg("trial") = 0);

  m.def(
      "estimate_isolated",
      [](const ModelSpec& model, int n, long trials, std::uint64_t seed, int jobs) {
        return estimate_dict(
            lab::estimate(model, n, trials, lab::Statistic::isolated_count(), seed, jobs));
      },
      py::arg("model"), py::arg("n"), py::arg("trials"), py::arg("seed"),
      py::arg("jobs") = 1);
  m.def(
      "estimate_avg_degree",
      [](const ModelSpec& model, int n, long trials, std::uint64_t seed, int jobs) {
        return estimate_dict(
            lab::estimate(model, n, trials, lab::Statistic::avg_degree(), seed, jobs));
      },
      py::arg("model"), py::arg("n"), py::arg("trials"), py::arg("seed"),
      py::arg("jobs") = 1);
  m.def(
      "estimate_connectivity",
      [](const ModelSpec& model, int n, long trials, double beta, std::uint64_t seed,
         int jobs) {
        return estimate_dict(lab::estimate(
            model, n, trials, lab::Statistic::connectivity_indicator(beta), seed, jobs));
      },
      py::arg("model"), py::arg("n"), py::arg("trials"), py::arg("beta") = 1.0,
      py::arg("seed") = 0, py::arg("jobs") = 1);

  m.def("isolated_lower_bound", &lab::isolated_lower_bound, py::arg("n"), py::arg("dbar"));

  m.def(
      "verify_isolation_bound",
      [](const ModelSpec& model, int n, long trials, std::uint64_t seed, int jobs) {
        const auto r = lab::verify_isolation_bound(model, n, trials, seed, jobs);
        py::dict d;
        d["n"] = r.n;
        d["isolated"] = estimate_dict(r.empirical_mean_isolated);
        d["avg_degree"] = estimate_dict(r.empirical_avg_degree);
        d["bound"] = r.bound_value;
        d["verdict"] = r.verdict == lab::BoundReport::Verdict::Holds        ? "holds"
                       : r.verdict == lab::BoundReport::Verdict::Violated   ? "violated"
                                                                            : "inconclusive";
        return d;
      },
      py::arg("model"), py::arg("n"), py::arg("trials"), py::arg("seed"),
      py::arg("jobs") = 1);

  m.def(
      "verify_equivalence",
      [](const ModelSpec& a, const ModelSpec& b, int n, long trials, double alpha,
         const std::string& mode, std::uint64_t seed) {
        const CompareMode cm =
            mode == "isomorphism" ? CompareMode::Isomorphism : CompareMode::Labeled;
        const auto r = verify_equivalence(a, b, n, trials, alpha, cm, seed);
        py::dict d;
        d["p_value"] = r.test.p_value;
        d["bins"] = r.test.bins;
        d["verdict"] =
            r.verdict == EquivalenceReport::Verdict::Equivalent      ? "equivalent"
            : r.verdict == EquivalenceReport::Verdict::NotEquivalent ? "not_equivalent"
                                                                     : "inconclusive";
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("n"), py::arg("trials") = 10000,
      py::arg("alpha") = 0.01, py::arg("mode") = "labeled", py::arg("seed") = 0);

  m.def(
      "exchangeability_test",
      [](const ModelSpec& model, int n, long trials, double alpha, std::uint64_t seed) {
        const auto r = lab::exchangeability_test(model, n, trials, alpha, seed);
        py::dict d;
        d["pass"] = r.pass;
        d["inconclusive"] = r.inconclusive;
        d["p_value"] = r.test.p_value;
        d["note"] = r.statistic_note;
        return d;
      },
      py::arg("model"), py::arg("n"), py::arg("trials") = 10000, py::arg("alpha") = 0.01,
      py::arg("seed") = 0);

  m.def(
      "ide_check",
      [](const ModelSpec& model, int n, int k, long trials, double alpha,
         std::uint64_t seed) {
        const auto r = lab::ide_check(model, n, k, trials, alpha, seed);
        py::dict d;
        d["pass"] = r.pass;
        d["worst_z"] = r.sets[r.worst_index].z;
        return d;
      },
      py::arg("model"), py::arg("n"), py::arg("k") = 2, py::arg("trials") = 20000,
      py::arg("alpha") = 0.01, py::arg("seed") = 0);
  m.def(
      "pos_check",
      [](const ModelSpec& model, int n, int k, long trials, double alpha,
         std::uint64_t seed) {
        const auto r = lab::pos_check(model, n, k, trials, alpha, seed);
        py::dict d;
        d["pass"] = r.pass;
        d["worst_z"] = r.sets[r.worst_index].z;
        return d;
      },
      py::arg("model"), py::arg("n"), py::arg("k") = 2, py::arg("trials") = 20000,
      py::arg("alpha") = 0.01, py::arg("seed") = 0);

  m.def("definetti_running_averages",
        [](const ModelSpec& model, int anchor, int N, std::uint64_t seed,
           std::uint64_t trial) {
          return lab::definetti_running_averages(model, anchor, N,
                                                 RngKey{seed, trial});
        },
        py::arg("model"), py::arg("anchor"), py::arg("N"), py::arg("seed"),
        py::arg("trial") = 0);
  m.def("definetti_final_averages", &lab::definetti_final_averages, py::arg("model"),
        py::arg("anchor"), py::arg("N"), py::arg("trials"), py::arg("seed"),
        py::arg("jobs") = 1);

  m.def(
      "mobility_model",
      [](int k, double d0, double v0, double T, double t_link, double r_link, double dt,
         const std::string& domain_mode, const std::string& trajectory_family,
         double fading_sigma) {
        mobility::MobilityConfig cfg;
        cfg.k = k;
        cfg.d0 = d0;
        cfg.v0 = v0;
        cfg.T = T;
        cfg.t_link = t_link;
        cfg.r_link = r_link;
        cfg.dt = dt;
        cfg.domain_mode = domain_mode == "clipped-square"
                              ? mobility::MobilityConfig::DomainMode::ClippedSquare
                              : mobility::MobilityConfig::DomainMode::Torus;
        cfg.trajectory_family =
            trajectory_family == "arc"
                ? mobility::MobilityConfig::TrajectoryFamily::Arc
                : mobility::MobilityConfig::TrajectoryFamily::StraightHeading;
        if (fading_sigma > 0) cfg.fading = mobility::MobilityConfig::Fading{fading_sigma};
        cfg.validate();
        return mobility::build_mobility_model(cfg);
      },
      py::arg("k") = 3, py::arg("d0") = 0.25, py::arg("v0") = 0.1, py::arg("T") = 1.0,
      py::arg("t_link") = 0.2, py::arg("r_link") = 0.1, py::arg("dt") = 0.05,
      py::arg("domain_mode") = "torus", py::arg("trajectory_family") = "straight-heading",
      py::arg("fading_sigma") = 0.0);
}

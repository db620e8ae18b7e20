#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "nervecover/coefficients.hpp"
#include "nervecover/coverage.hpp"
#include "nervecover/distribution.hpp"
#include "nervecover/errors.hpp"
#include "nervecover/metric_graph.hpp"
#include "nervecover/stevens.hpp"
#include "nervecover/subcomplex.hpp"
#include "nervecover/version.hpp"

namespace py = pybind11;
using namespace nervecover;

namespace {

// Exact conversion: the coefficient tables are 128-bit and may not fit a
// long long, so go through the decimal string.
py::int_ to_py_int(int128 v) {
  std::string text = int128_to_string(v);
  PyObject* obj = PyLong_FromString(text.c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

MetricGraph graph_by_name(const std::string& name_or_path) {
  if (is_builtin_graph(name_or_path)) return builtin_graph(name_or_path);
  return MetricGraph::parse_file(name_or_path);
}

py::dict distribution_dict(const ChiDistribution& dist) {
  py::dict out;
  out["lo"] = dist.range.lo;
  out["probabilities"] = dist.probabilities;
  out["moments"] = dist.moments;
  out["route_discrepancy"] = dist.max_discrepancy;
  return out;
}

}  // namespace

PYBIND11_MODULE(_nervecover, m) {
  m.doc() = "coverage statistics of random ball systems on metric graphs";
  m.attr("__version__") = version_string;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const config_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const io_error& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    }
  });

  m.def(
      "family_size",
      [](int n) { return enumerate_subcomplexes(n).size(); },
      py::arg("n"), "number of labeled subcomplexes on n vertices");

  m.def(
      "family",
      [](int n) {
        const SubcomplexFamily& fam = enumerate_subcomplexes(n);
        std::vector<std::string> out;
        out.reserve(fam.size());
        for (std::size_t i = 0; i < fam.size(); ++i) {
          out.push_back(subcomplex_to_text(fam.at(i)));
        }
        return out;
      },
      py::arg("n"), "text forms of the family in canonical order");

  m.def(
      "chi_coefficients",
      [](int n, int k) {
        auto table = build_coefficient_table(n, Invariant::chi, k);
        py::list out;
        for (int128 v : table->entries) out.append(to_py_int(v));
        return out;
      },
      py::arg("n"), py::arg("k"),
      "expansion coefficients of chi^k over the family, exact integers");

  m.def(
      "stevens_coverage",
      [](int n, double alpha) { return stevens_coverage({n, alpha}); },
      py::arg("n"), py::arg("alpha"),
      "closed-form P(n arcs of length alpha cover the circle)");

  m.def(
      "stevens_gap_vector",
      [](int n, double alpha) { return stevens_gap_vector({n, alpha}); },
      py::arg("n"), py::arg("alpha"),
      "closed-form distribution of the uncovered gap count, j = 0..n");

  m.def("gap_moments", &gap_moments, py::arg("alpha"), py::arg("k"),
        "E(G^k) of the three-arc gap count, k in {1, 2, 3}");

  m.def(
      "three_arc_containment",
      [](double alpha) { return three_arc_p_vector(alpha).values; },
      py::arg("alpha"),
      "exact containment probabilities over the three-ball family");

  m.def(
      "chi_distribution_exact",
      [](double alpha) {
        return distribution_dict(
            chi_distribution(three_arc_p_vector(alpha), IntegerRange{0, 3}));
      },
      py::arg("alpha"),
      "exact distribution of the nerve's Euler characteristic for three "
      "arcs, via both internal routes");

  m.def(
      "coverage_exact",
      [](double alpha) {
        return coverage_probability_closed(three_arc_p_vector(alpha),
                                           builtin_graph("circle"))
            .probability;
      },
      py::arg("alpha"),
      "three-arc coverage probability from the characteristic identity");

  m.def(
      "mc_coverage",
      [](const std::string& graph, int n, double eps, long long trials,
         std::uint64_t seed, int workers, bool keep) {
        MetricGraph g = graph_by_name(graph);
        McOptions opt;
        opt.trials = trials;
        opt.seed = seed;
        opt.workers = workers;
        opt.strict = !keep;
        McResult mc = mc_estimate(g, n, eps, opt);
        py::dict out;
        out["good_samples"] = mc.good_samples;
        out["rejections"] = mc.rejections;
        out["oracle_probability"] = mc.oracle.probability;
        out["oracle_stderr"] = mc.oracle.std_error.value();
        if (g.boundary().empty()) {
          out["pipeline_probability"] =
              coverage_probability_closed(mc.atomic, g).probability;
        } else if (n <= 4) {
          out["pipeline_probability"] =
              coverage_probability_relative(mc.pair_atomic, g).probability;
        }
        return out;
      },
      py::arg("graph"), py::arg("n"), py::arg("eps"),
      py::arg("trials") = 100000, py::arg("seed") = 0, py::arg("workers") = 1,
      py::arg("keep") = false,
      "Monte Carlo coverage run on a builtin graph name or a graph file; "
      "deterministic for a fixed (seed, workers) pair");

  m.def(
      "azuma_bound",
      [](double mu0, int n, const std::string& graph) {
        return azuma_bound(mu0, n, graph_by_name(graph));
      },
      py::arg("mu0"), py::arg("n"), py::arg("graph") = "circle",
      "concentration upper bound on the coverage probability");

  m.def(
      "builtin_graphs",
      [] {
        return std::vector<std::string>{"circle", "interval", "theta",
                                        "ygraph", "figure8"};
      },
      "names accepted wherever a graph file path is expected");
}

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nervecover/coefficients.hpp"
#include "nervecover/coverage.hpp"
#include "nervecover/csv.hpp"
#include "nervecover/distribution.hpp"
#include "nervecover/errors.hpp"
#include "nervecover/metric_graph.hpp"
#include "nervecover/nerve.hpp"
#include "nervecover/selftest.hpp"
#include "nervecover/stevens.hpp"
#include "nervecover/subcomplex.hpp"
#include "nervecover/version.hpp"

namespace {

using namespace nervecover;

// Option storage shared by the subcommands.
struct cli_state {
  std::string graph = "circle";
  std::string boundary_override;
  bool override_given = false;
  int n = 3;
  double eps = 0.0;
  double alpha = 0.0;
  double trials = 100000.0;  // double so 1e6 parses
  std::uint64_t seed = 0;
  int workers = 0;  // 0: resolve via default_worker_count()
  bool keep = false;
  bool dump_dist = false;
  std::string out_path;
  std::string dump_realization;
  std::string mode = "all";
  std::string alpha_grid;
  std::string invariant;
  int max_k = 3;
  int dim = 0;
  double mu0 = -1.0;
  bool timing = false;
};

// Comma-separated vertex ids; the empty string clears the boundary.
std::vector<int> parse_id_list(const std::string& text) {
  std::vector<int> ids;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    std::size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw config_error("bad vertex id '" + token + "' in boundary override");
    }
    ids.push_back(id);
  }
  return ids;
}

MetricGraph load_graph(const cli_state& s) {
  std::optional<std::vector<int>> override;
  if (s.override_given) override = parse_id_list(s.boundary_override);
  if (is_builtin_graph(s.graph)) {
    MetricGraph g = builtin_graph(s.graph);
    if (!override) return g;
    return MetricGraph::from_data(g.vertex_ids(), g.edges(), override);
  }
  return MetricGraph::parse_file(s.graph, override);
}

// One output stream per artifact: a file when a path is given, else stdout.
struct output_target {
  std::ofstream file;
  std::ostream* stream = nullptr;

  explicit output_target(const std::string& path) {
    if (path.empty()) {
      stream = &std::cout;
      return;
    }
    file.open(path);
    if (!file) throw io_error("cannot open output file '" + path + "'");
    stream = &file;
  }
};

int resolve_workers(const cli_state& s) {
  return s.workers > 0 ? s.workers : default_worker_count();
}

long long resolve_trials(const cli_state& s) {
  double rounded = std::round(s.trials);
  if (!(s.trials >= 1.0) || std::abs(s.trials - rounded) > 1e-6 ||
      rounded > 1e12) {
    throw config_error("--trials must be a positive integer, got " +
                       format_double(s.trials));
  }
  return static_cast<long long>(rounded);
}

// eps and alpha are two views of the same radius (alpha = arc length =
// 2 eps on the unit circle); exactly one must be given.
double resolve_eps(const cli_state& s) {
  if (s.eps > 0.0 && s.alpha > 0.0) {
    throw config_error("give either --eps or --alpha, not both");
  }
  if (s.eps > 0.0) return s.eps;
  if (s.alpha > 0.0) return s.alpha / 2.0;
  throw config_error("a ball radius is required (--eps or --alpha)");
}

bool is_unit_circle(const MetricGraph& g) {
  return g.edge_count() == 1 && g.edges()[0].u == g.edges()[0].v &&
         std::abs(g.total_length() - 1.0) < 1e-12 && g.boundary().empty();
}

std::string echo_common(const cli_state& s, const std::string& command) {
  std::ostringstream echo;
  echo << command << " --graph " << s.graph;
  if (s.override_given) {
    echo << " --boundary-override "
         << (s.boundary_override.empty() ? "\"\"" : s.boundary_override);
  }
  return echo.str();
}

std::string echo_mc(const cli_state& s, const std::string& command,
                    double eps) {
  std::ostringstream echo;
  echo << echo_common(s, command) << " --n " << s.n << " --eps "
       << format_double(eps) << " --trials " << resolve_trials(s) << " --seed "
       << s.seed << " --workers " << resolve_workers(s)
       << (s.keep ? " --keep" : "");
  return echo.str();
}

McResult run_mc(const MetricGraph& g, const cli_state& s, double eps) {
  McOptions opt;
  opt.trials = resolve_trials(s);
  opt.seed = s.seed;
  opt.workers = resolve_workers(s);
  opt.strict = !s.keep;
  return mc_estimate(g, s.n, eps, opt);
}

void dump_first_realization(const MetricGraph& g, const cli_state& s,
                            double eps) {
  // the first draw of worker 0, so the dump shows exactly what the
  // estimator saw first
  counter_rng rng(s.seed, 0);
  BallCoverRealization r = sample_realization(g, s.n, eps, rng);
  output_target target(s.dump_realization);
  csv_writer csv(*target.stream, echo_mc(s, "mc --dump-realization", eps));
  csv.header({"ball", "edge", "interval_start", "interval_end"});
  for (std::size_t b = 0; b < r.per_ball.size(); ++b) {
    for (std::size_t e = 0; e < r.per_ball[b].size(); ++e) {
      for (const Interval& iv : r.per_ball[b][e]) {
        csv.row({std::to_string(b + 1), std::to_string(g.edges()[e].id),
                 format_double(iv.a), format_double(iv.b)});
      }
    }
  }
}

int cmd_enumerate(const cli_state& s) {
  const SubcomplexFamily& fam = enumerate_subcomplexes(s.n);
  std::ostringstream echo;
  echo << "enumerate --n " << s.n;
  if (!s.invariant.empty()) {
    echo << " --coefficients " << s.invariant << " --max-k " << s.max_k;
    if (s.invariant == "face-count") echo << " --dim " << s.dim;
  }
  if (s.invariant.empty()) {
    output_target target(s.out_path);
    csv_writer csv(*target.stream, echo.str());
    csv.header({"ordinal", "complex", "faces", "euler"});
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const Subcomplex& c = fam.at(i);
      csv.row({std::to_string(i), subcomplex_to_text(c),
               std::to_string(c.face_count_total()),
               std::to_string(euler_char(c))});
    }
    return 0;
  }
  Invariant inv;
  if (s.invariant == "chi") {
    inv = Invariant::chi;
  } else if (s.invariant == "face-count") {
    inv = Invariant::face_count;
  } else {
    throw config_error("--coefficients must be 'chi' or 'face-count', got '" +
                       s.invariant + "'");
  }
  if (s.max_k < 0) throw config_error("--max-k must be nonnegative");
  int d = s.invariant == "face-count" ? s.dim : -1;
  std::vector<std::shared_ptr<const CoefficientTable>> tables;
  for (int k = 0; k <= s.max_k; ++k) {
    tables.push_back(build_coefficient_table(s.n, inv, k, d));
  }
  output_target target(s.out_path);
  csv_writer csv(*target.stream, echo.str());
  csv.header({"complex", "k", "coefficient"});
  for (int k = 0; k <= s.max_k; ++k) {
    for (std::size_t i = 0; i < fam.size(); ++i) {
      csv.row({subcomplex_to_text(fam.at(i)), std::to_string(k),
               int128_to_string(tables[static_cast<std::size_t>(k)]->entries[i])});
    }
  }
  return 0;
}

void write_chi_distribution(csv_writer& csv, const ChiDistribution& dist) {
  for (std::size_t k = 0; k < dist.moments.size(); ++k) {
    csv.comment("moment k=" + std::to_string(k) + ": " +
                format_double(dist.moments[k]));
  }
  csv.comment("route discrepancy: " + format_double(dist.max_discrepancy));
  csv.header({"value", "probability", "moment_route"});
  for (std::size_t j = 0; j < dist.probabilities.size(); ++j) {
    csv.row({std::to_string(dist.range.lo + static_cast<long long>(j)),
             format_double(dist.probabilities[j]),
             format_double(dist.moment_route[j])});
  }
}

int cmd_chi_dist(const cli_state& s) {
  if (s.alpha > 0.0) {
    // exact three-arc route, no sampling
    if (s.eps > 0.0) {
      throw config_error(
          "--alpha selects the exact three-arc route; use --eps for a "
          "sampled run");
    }
    if (s.n != 3) {
      throw config_error("the exact route is for 3 balls; drop --n or use "
                         "--eps for a sampled run");
    }
    ChiDistribution dist =
        chi_distribution(three_arc_p_vector(s.alpha), IntegerRange{0, 3});
    output_target target(s.out_path);
    csv_writer csv(*target.stream,
                   "chi-dist --alpha " + format_double(s.alpha));
    write_chi_distribution(csv, dist);
    return 0;
  }
  MetricGraph g = load_graph(s);
  double eps = resolve_eps(s);
  if (!g.boundary().empty() && s.n > 4) {
    throw config_error("the boundary pipeline needs 4 or fewer balls");
  }
  McResult mc = run_mc(g, s, eps);
  ChiDistribution dist =
      g.boundary().empty()
          ? chi_distribution(mc.atomic, IntegerRange{euler_char_graph(g), s.n})
          : chi_rel_distribution(mc.pair_atomic,
                                 IntegerRange{chi_rel_graph(g), s.n});
  output_target target(s.out_path);
  csv_writer csv(*target.stream, echo_mc(s, "chi-dist", eps));
  csv.comment("good samples: " + std::to_string(mc.good_samples) +
              ", rejections: " + std::to_string(mc.rejections));
  write_chi_distribution(csv, dist);
  return 0;
}

int cmd_coverage(const cli_state& s) {
  if (s.mode != "exact-from-p" && s.mode != "mc" && s.mode != "oracle" &&
      s.mode != "all") {
    throw config_error(
        "--mode must be one of exact-from-p, mc, oracle, all; got '" + s.mode +
        "'");
  }
  MetricGraph g = load_graph(s);
  double eps = resolve_eps(s);
  double alpha = 2.0 * eps;
  bool circle = is_unit_circle(g);
  bool want_exact = s.mode == "exact-from-p" || s.mode == "all";
  bool mc_needed = s.mode != "exact-from-p";

  struct method_row {
    std::string method;
    double probability = 0.0;
    std::optional<double> se;
    long long samples = 0;
    long long rejections = 0;
  };
  std::vector<method_row> rows;
  std::optional<ChiDistribution> dist_dump;

  if (want_exact) {
    bool available = circle && s.n == 3;
    if (!available && s.mode == "exact-from-p") {
      throw config_error(
          "the exact containment vector is only known for 3 balls on the "
          "unit circle");
    }
    if (available) {
      DistributionVector p = three_arc_p_vector(alpha);
      CoverageReport exact = coverage_probability_closed(p, g);
      rows.push_back({"exact", exact.probability, std::nullopt, 0, 0});
      if (s.dump_dist) dist_dump = chi_distribution(p, IntegerRange{0, 3});
    }
  }
  if (s.mode == "all" && circle && alpha < 1.0) {
    rows.push_back({"stevens", stevens_coverage({s.n, alpha}), std::nullopt,
                    0, 0});
  }
  if (mc_needed) {
    McResult mc = run_mc(g, s, eps);
    if (s.mode == "mc" || s.mode == "all") {
      bool pipeline_available = g.boundary().empty() || s.n <= 4;
      if (!pipeline_available && s.mode == "mc") {
        throw config_error(
            "the boundary pipeline needs 4 or fewer balls; use oracle mode");
      }
      if (pipeline_available) {
        CoverageReport rep =
            g.boundary().empty()
                ? coverage_probability_closed(mc.atomic, g)
                : coverage_probability_relative(mc.pair_atomic, g);
        double freq = rep.probability;
        double se = std::sqrt(std::max(0.0, freq * (1.0 - freq)) /
                              static_cast<double>(mc.good_samples));
        rows.push_back(
            {"mc-pipeline", freq, se, mc.good_samples, mc.rejections});
        if (s.dump_dist && !dist_dump) {
          dist_dump =
              g.boundary().empty()
                  ? chi_distribution(mc.atomic,
                                     IntegerRange{euler_char_graph(g), s.n})
                  : chi_rel_distribution(mc.pair_atomic,
                                         IntegerRange{chi_rel_graph(g), s.n});
        }
      }
    }
    if (s.mode == "oracle" || s.mode == "all") {
      rows.push_back({"mc-oracle", mc.oracle.probability,
                      mc.oracle.std_error, mc.oracle.samples,
                      mc.oracle.rejections});
    }
  }

  output_target target(s.out_path);
  std::string echo = mc_needed ? echo_mc(s, "coverage", eps)
                               : echo_common(s, "coverage") + " --n " +
                                     std::to_string(s.n) + " --eps " +
                                     format_double(eps);
  csv_writer csv(*target.stream, echo + " --mode " + s.mode);
  csv.header({"method", "probability", "stderr", "samples", "rejections"});
  for (const method_row& r : rows) {
    csv.row({r.method, format_double(r.probability),
             r.se ? format_double(*r.se) : std::string(""),
             std::to_string(r.samples), std::to_string(r.rejections)});
  }
  if (dist_dump) {
    csv.comment("chi distribution");
    csv.header({"value", "probability"});
    for (std::size_t j = 0; j < dist_dump->probabilities.size(); ++j) {
      csv.row(
          {std::to_string(dist_dump->range.lo + static_cast<long long>(j)),
           format_double(dist_dump->probabilities[j])});
    }
  }
  return 0;
}

int cmd_stevens(const cli_state& s) {
  std::vector<double> alphas;
  if (!s.alpha_grid.empty()) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(s.alpha_grid);
    in >> lo >> c1 >> hi >> c2 >> step;
    if (!in || c1 != ':' || c2 != ':' || step <= 0.0) {
      throw config_error("--alpha-grid expects lo:hi:step, got '" +
                         s.alpha_grid + "'");
    }
    for (int i = 0; lo + i * step <= hi + 1e-12; ++i) {
      alphas.push_back(lo + i * step);
    }
  } else if (s.alpha > 0.0) {
    alphas.push_back(s.alpha);
  } else {
    throw config_error("stevens needs --alpha or --alpha-grid");
  }
  for (double a : alphas) validate_arc_model({s.n, a});
  output_target target(s.out_path);
  std::ostringstream echo;
  echo << "stevens --n " << s.n << " ";
  if (!s.alpha_grid.empty()) {
    echo << "--alpha-grid " << s.alpha_grid;
  } else {
    echo << "--alpha " << format_double(s.alpha);
  }
  csv_writer csv(*target.stream, echo.str());
  std::vector<std::string> columns{"alpha", "n", "coverage"};
  for (int j = 0; j <= s.n; ++j) columns.push_back("gap" + std::to_string(j));
  csv.header(columns);
  for (double a : alphas) {
    ArcModel m{s.n, a};
    std::vector<std::string> cells{format_double(a), std::to_string(s.n),
                                   format_double(stevens_coverage(m))};
    for (double p : stevens_gap_vector(m)) cells.push_back(format_double(p));
    csv.row(cells);
  }
  return 0;
}

int cmd_mc(const cli_state& s) {
  MetricGraph g = load_graph(s);
  double eps = resolve_eps(s);
  if (!s.dump_realization.empty()) dump_first_realization(g, s, eps);
  McResult mc = run_mc(g, s, eps);
  output_target target(s.out_path);
  csv_writer csv(*target.stream, echo_mc(s, "mc", eps));
  csv.header({"statistic", "value"});
  csv.row({"trials", std::to_string(resolve_trials(s))});
  csv.row({"good_samples", std::to_string(mc.good_samples)});
  csv.row({"rejections", std::to_string(mc.rejections)});
  csv.row({"workers", std::to_string(mc.workers)});
  csv.row({"oracle_probability", format_double(mc.oracle.probability)});
  csv.row({"oracle_stderr", format_double(mc.oracle.std_error.value())});
  const SubcomplexFamily& fam = enumerate_subcomplexes(s.n);
  csv.comment("nerve frequencies");
  csv.header({"complex", "frequency"});
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (mc.atomic.values[i] == 0.0) continue;
    csv.row(
        {subcomplex_to_text(fam.at(i)), format_double(mc.atomic.values[i])});
  }
  if (!mc.pair_atomic.values.empty() && !g.boundary().empty()) {
    csv.comment("pair frequencies");
    csv.header({"complex", "boundary_part", "frequency"});
    std::size_t m = fam.size();
    for (std::size_t si = 0; si < m; ++si) {
      for (std::size_t ri = 0; ri < m; ++ri) {
        double v = mc.pair_atomic.values[si * m + ri];
        if (v == 0.0) continue;
        csv.row({subcomplex_to_text(fam.at(si)),
                 subcomplex_to_text(fam.at(ri)), format_double(v)});
      }
    }
  }
  return 0;
}

int cmd_bound(const cli_state& s) {
  MetricGraph g = load_graph(s);
  double mu0 = s.mu0;
  if (s.alpha > 0.0 && s.mu0 >= 0.0) {
    throw config_error("give either --mu0 or --alpha, not both");
  }
  std::ostringstream echo;
  echo << echo_common(s, "bound") << " --n " << s.n;
  if (s.alpha > 0.0) {
    if (s.n != 3) {
      throw config_error(
          "--alpha derives the mean from the three-arc closed form; it "
          "requires --n 3");
    }
    mu0 = gap_moments(s.alpha, 1);
    echo << " --alpha " << format_double(s.alpha);
  } else if (mu0 >= 0.0) {
    echo << " --mu0 " << format_double(mu0);
  } else {
    throw config_error("bound needs --mu0 or --alpha");
  }
  double bound = azuma_bound(mu0, s.n, g);
  output_target target(s.out_path);
  csv_writer csv(*target.stream, echo.str());
  csv.header({"n", "mu0", "bound"});
  csv.row({std::to_string(s.n), format_double(mu0), format_double(bound)});
  return 0;
}

int cmd_selftest() {
  std::vector<CriterionResult> results = run_acceptance(std::cout);
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverage statistics of random ball systems on metric graphs"};
  app.set_version_flag("--version", nervecover::version_string);
  app.require_subcommand(1);
  cli_state s;
  app.add_flag("--timing", s.timing,
               "print the wall time to stderr (never into the CSV)");

  auto add_graph = [&](CLI::App* cmd) {
    cmd->add_option("--graph", s.graph,
                    "builtin name (circle, interval, theta, ygraph, figure8) "
                    "or a graph file path");
    cmd->add_option("--boundary-override", s.boundary_override,
                    "comma-separated vertex ids replacing the inferred "
                    "boundary; the empty string clears it")
        ->each([&s](const std::string&) { s.override_given = true; });
  };
  auto add_mc = [&](CLI::App* cmd) {
    cmd->add_option("--n", s.n, "number of balls")->check(CLI::Range(1, 6));
    cmd->add_option("--eps", s.eps, "ball radius");
    cmd->add_option("--alpha", s.alpha, "arc length 2*eps on the unit circle");
    cmd->add_option("--trials", s.trials, "Monte Carlo sample count");
    cmd->add_option("--seed", s.seed, "stream seed");
    cmd->add_option("--workers", s.workers,
                    "worker threads (default: NERVECOVER_WORKERS or the "
                    "hardware count, capped at 8)");
    cmd->add_flag("--keep", s.keep,
                  "keep realizations that fail the good-cover check instead "
                  "of resampling (they still count for the direct oracle)");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", s.out_path, "output CSV path (default stdout)");
  };

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "list the labeled subcomplex family");
  enumerate->add_option("--n", s.n, "number of vertices")
      ->check(CLI::Range(1, 6));
  enumerate->add_option("--coefficients", s.invariant,
                        "dump a coefficient table instead: 'chi' or "
                        "'face-count'");
  enumerate->add_option("--max-k", s.max_k, "largest power in the dump");
  enumerate->add_option("--dim", s.dim, "face dimension for face-count");
  add_out(enumerate);

  CLI::App* chi_dist = app.add_subcommand(
      "chi-dist",
      "Euler-characteristic distribution: exact three-arc with --alpha, "
      "sampled on a graph with --eps");
  add_graph(chi_dist);
  add_mc(chi_dist);
  add_out(chi_dist);

  CLI::App* coverage =
      app.add_subcommand("coverage", "full-coverage probability");
  add_graph(coverage);
  add_mc(coverage);
  coverage->add_option("--mode", s.mode, "exact-from-p, mc, oracle, or all");
  coverage->add_flag("--dump-dist", s.dump_dist,
                     "append the full distribution of the characteristic");
  add_out(coverage);

  CLI::App* stevens = app.add_subcommand(
      "stevens", "circle-arc closed forms over an arc-length grid");
  stevens->add_option("--n", s.n, "number of arcs");
  stevens->add_option("--alpha", s.alpha, "single arc length");
  stevens->add_option("--alpha-grid", s.alpha_grid, "lo:hi:step");
  add_out(stevens);

  CLI::App* mc = app.add_subcommand(
      "mc", "raw Monte Carlo run: summary plus empirical nerve frequencies");
  add_graph(mc);
  add_mc(mc);
  mc->add_option("--dump-realization", s.dump_realization,
                 "write the first sampled realization's ball traces to this "
                 "CSV path");
  add_out(mc);

  CLI::App* bound = app.add_subcommand(
      "bound", "concentration upper bound on the coverage probability");
  add_graph(bound);
  bound->add_option("--n", s.n, "number of balls");
  bound->add_option("--mu0", s.mu0, "shifted mean of the realized invariant");
  bound->add_option("--alpha", s.alpha,
                    "derive the mean from the three-arc closed form");
  add_out(bound);

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the full acceptance suite");

  // lets app-level flags like --timing appear after the subcommand name
  for (CLI::App* sub : {enumerate, chi_dist, coverage, stevens, mc, bound,
                        selftest}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  auto start = std::chrono::steady_clock::now();
  int status = 0;
  try {
    if (enumerate->parsed()) {
      status = cmd_enumerate(s);
    } else if (chi_dist->parsed()) {
      status = cmd_chi_dist(s);
    } else if (coverage->parsed()) {
      status = cmd_coverage(s);
    } else if (stevens->parsed()) {
      status = cmd_stevens(s);
    } else if (mc->parsed()) {
      status = cmd_mc(s);
    } else if (bound->parsed()) {
      status = cmd_bound(s);
    } else if (selftest->parsed()) {
      status = cmd_selftest();
    }
  } catch (const nervecover::config_error& e) {
    std::cerr << "nervecover: config error: " << e.what() << std::endl;
    return 1;
  } catch (const nervecover::consistency_error& e) {
    std::cerr << "nervecover: consistency error: " << e.what() << std::endl;
    return 2;
  } catch (const nervecover::io_error& e) {
    std::cerr << "nervecover: io error: " << e.what() << std::endl;
    return 3;
  }
  if (s.timing) {
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::cerr << "wall time: " << nervecover::format_double(seconds) << " s"
              << std::endl;
  }
  return status;
}

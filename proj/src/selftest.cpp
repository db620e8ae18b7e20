#include "nervecover/selftest.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "nervecover/coefficients.hpp"
#include "nervecover/coverage.hpp"
#include "nervecover/csv.hpp"
#include "nervecover/distribution.hpp"
#include "nervecover/errors.hpp"
#include "nervecover/metric_graph.hpp"
#include "nervecover/moments.hpp"
#include "nervecover/nerve.hpp"
#include "nervecover/rng.hpp"
#include "nervecover/stevens.hpp"
#include "nervecover/subcomplex.hpp"

namespace nervecover {

int default_worker_count() {
  if (const char* env = std::getenv("NERVECOVER_WORKERS")) {
    char* end = nullptr;
    long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1 || parsed > 4096) {
      throw config_error("NERVECOVER_WORKERS must be a positive integer, got '" +
                         std::string(env) + "'");
    }
    return static_cast<int>(parsed);
  }
  unsigned hc = std::thread::hardware_concurrency();
  if (hc == 0) hc = 1;
  return static_cast<int>(std::min(hc, 8u));
}

namespace {

const std::initializer_list<double> alpha_grid = {0.20, 0.25, 0.30,
                                                  0.35, 0.40, 0.45};

// Collects failures and the worst error magnitude; the first failure message
// becomes the headline of the detail string.
struct criterion_scratch {
  bool ok = true;
  double worst = 0.0;
  std::string failure;

  void check(bool cond, const std::string& what) {
    if (!cond && failure.empty()) failure = what;
    ok = ok && cond;
  }
  void check_close(double got, double expected, double tol,
                   const std::string& what) {
    double err = std::abs(got - expected);
    worst = std::max(worst, err);
    check(err <= tol, what + ": got " + format_double(got) + ", expected " +
                          format_double(expected) + " (error " +
                          format_double(err) + ")");
  }
  std::string detail(const std::string& summary) const {
    return ok ? summary : failure;
  }
};

long double ipow_ld(long long base, int k) {
  long double out = 1.0L;
  for (int i = 0; i < k; ++i) out *= static_cast<long double>(base);
  return out;
}

std::pair<bool, std::string> closed_form_coverage() {
  criterion_scratch c;
  MetricGraph circle = builtin_graph("circle");
  for (double alpha : {0.10, 0.20, 0.30, 0.35, 0.40, 0.45}) {
    double expected =
        alpha > 1.0 / 3.0 ? (3.0 * alpha - 1.0) * (3.0 * alpha - 1.0) : 0.0;
    CoverageReport got =
        coverage_probability_closed(three_arc_p_vector(alpha), circle);
    c.check_close(got.probability, expected, 1e-10,
                  "coverage at arc length " + format_double(alpha));
  }
  return {c.ok, c.detail("max |pipeline - closed form| = " +
                         format_double(c.worst) + " over 6 arc lengths")};
}

std::pair<bool, std::string> moment_regression() {
  criterion_scratch c;
  for (double alpha : {0.20, 0.35, 0.40, 0.45}) {
    ChiDistribution dist =
        chi_distribution(three_arc_p_vector(alpha), IntegerRange{0, 3});
    for (int k = 1; k <= 3; ++k) {
      c.check_close(dist.moments[static_cast<std::size_t>(k)],
                    gap_moments(alpha, k), 1e-10,
                    "moment k=" + std::to_string(k) + " at arc length " +
                        format_double(alpha));
    }
  }
  return {c.ok, c.detail("max moment error " + format_double(c.worst) +
                         " over 4 arc lengths, k = 1..3")};
}

std::pair<bool, std::string> gap_distribution_identity() {
  criterion_scratch c;
  for (double alpha : alpha_grid) {
    ChiDistribution dist =
        chi_distribution(three_arc_p_vector(alpha), IntegerRange{0, 3});
    std::vector<double> gaps = stevens_gap_vector({3, alpha});
    for (int j = 0; j <= 3; ++j) {
      c.check_close(dist.probabilities[static_cast<std::size_t>(j)],
                    gaps[static_cast<std::size_t>(j)], 1e-10,
                    "P(gaps=" + std::to_string(j) + ") at arc length " +
                        format_double(alpha));
    }
  }
  double exact_worst = c.worst;

  MetricGraph circle = builtin_graph("circle");
  double tv_worst = 0.0;
  for (int n : {4, 5}) {
    McOptions opt;
    opt.trials = 1000000;
    opt.seed = 20240 + static_cast<std::uint64_t>(n);
    opt.workers = default_worker_count();
    McResult mc = mc_estimate(circle, n, 0.04, opt);
    ChiDistribution dist = chi_distribution(mc.atomic, IntegerRange{0, n});
    std::vector<double> gaps = stevens_gap_vector({n, 0.08});
    double tv = 0.0;
    for (int j = 0; j <= n; ++j) {
      tv += std::abs(dist.probabilities[static_cast<std::size_t>(j)] -
                     gaps[static_cast<std::size_t>(j)]);
    }
    tv /= 2.0;
    tv_worst = std::max(tv_worst, tv);
    c.check(tv < 0.01, "total variation " + format_double(tv) + " for " +
                           std::to_string(n) + " balls exceeds 0.01");
  }
  return {c.ok,
          c.detail("exact route error " + format_double(exact_worst) +
                   "; sampled total variation " + format_double(tv_worst) +
                   " at 10^6 trials")};
}

std::pair<bool, std::string> oracle_triangulation() {
  criterion_scratch c;
  MetricGraph circle = builtin_graph("circle");
  struct Case {
    int n;
    double alpha;
  };
  double worst_ratio = 0.0;
  for (Case k : {Case{3, 0.40}, Case{4, 0.30}, Case{5, 0.25}}) {
    McOptions opt;
    opt.trials = 1000000;
    opt.seed = 31400 + static_cast<std::uint64_t>(k.n);
    opt.workers = default_worker_count();
    McResult mc = mc_estimate(circle, k.n, k.alpha / 2.0, opt);
    double pipeline = coverage_probability_closed(mc.atomic, circle).probability;
    double oracle = mc.oracle.probability;
    double closed = stevens_coverage({k.n, k.alpha});
    double sigma_o = mc.oracle.std_error.value();
    double sigma_p = std::sqrt(std::max(0.0, pipeline * (1.0 - pipeline)) /
                               static_cast<double>(mc.good_samples));
    auto within = [&](double a, double b, double sa, double sb,
                      const std::string& what) {
      double combined = std::sqrt(sa * sa + sb * sb);
      double gap = std::abs(a - b);
      if (combined > 0.0) worst_ratio = std::max(worst_ratio, gap / combined);
      c.check(gap <= 3.0 * combined,
              what + " for " + std::to_string(k.n) + " balls: " +
                  format_double(a) + " vs " + format_double(b) + " differ by " +
                  format_double(gap) + " > 3 x " + format_double(combined));
    };
    within(pipeline, oracle, sigma_p, sigma_o, "pipeline vs direct oracle");
    within(pipeline, closed, sigma_p, 0.0, "pipeline vs closed form");
    within(oracle, closed, sigma_o, 0.0, "direct oracle vs closed form");
  }
  return {c.ok, c.detail("worst deviation " + format_double(worst_ratio) +
                         " combined standard errors over 3 regimes")};
}

std::pair<bool, std::string> coefficient_oracles() {
  criterion_scratch c;
  long long agreements = 0;

  const SubcomplexFamily& fam4 = enumerate_subcomplexes(4);
  for (const Subcomplex& s : fam4.all()) {
    for (int k = 0; k <= 6; ++k) {
      c.check(c_chi(s, k) == c_bruteforce(Invariant::chi, s, k),
              "closed-form and inclusion-exclusion chi coefficients differ at "
              "k=" + std::to_string(k) + " on " + subcomplex_to_text(s));
      ++agreements;
    }
    for (int d = 0; d <= 2; ++d) {
      for (int k = 0; k <= 4; ++k) {
        c.check(c_face_count(s, d, k) ==
                    c_bruteforce(Invariant::face_count, s, k, d),
                "face-count coefficient mismatch at d=" + std::to_string(d) +
                    " k=" + std::to_string(k) + " on " + subcomplex_to_text(s));
        ++agreements;
      }
    }
  }

  const SubcomplexFamily& fam3 = enumerate_subcomplexes(3);
  for (const Subcomplex& s : fam3.all()) {
    for (const Subcomplex& r : fam3.all()) {
      for (int k = 0; k <= 5; ++k) {
        c.check(c_chi_rel(s, r, k) ==
                    c_bruteforce(Invariant::chi_rel, s, r, k),
                "relative coefficient mismatch at k=" + std::to_string(k) +
                    " on (" + subcomplex_to_text(s) + ", " +
                    subcomplex_to_text(r) + ")");
        ++agreements;
      }
    }
  }

  // Frozen published table for the three-ball family: the eight orbit types
  // as powers of 2 and 3, plus the same data regrouped after substituting
  // the vertex indicators by 1.
  auto rep = [&](std::initializer_list<FaceMask> faces) {
    return Subcomplex::from_faces(3, std::vector<FaceMask>(faces));
  };
  Subcomplex vertex = rep({0b001});
  Subcomplex two_vertices = rep({0b001, 0b010});
  Subcomplex three_vertices = rep({0b001, 0b010, 0b100});
  Subcomplex edge = rep({0b001, 0b010, 0b011});
  Subcomplex edge_vertex = rep({0b001, 0b010, 0b100, 0b011});
  Subcomplex two_edges = rep({0b001, 0b010, 0b100, 0b011, 0b110});
  Subcomplex hollow = rep({0b001, 0b010, 0b100, 0b011, 0b101, 0b110});
  Subcomplex full = rep({0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111});

  const std::array<int128, 4> constant{0, 3, 9, 27};
  const std::array<int128, 4> one_edge_grouped{0, -1, -5, -19};
  const std::array<int128, 4> two_edges_grouped{0, 0, 2, 12};
  const std::array<int128, 4> three_edges_grouped{0, 0, 0, -6};
  for (int k = 1; k <= 3; ++k) {
    int128 p2 = checked_pow(2, k);
    int128 p3 = checked_pow(3, k);
    auto freeze = [&](const Subcomplex& s, int128 expected,
                      const std::string& label) {
      c.check(c_chi(s, k) == expected,
              "published coefficient of " + label + " at k=" +
                  std::to_string(k) + " not reproduced");
      ++agreements;
    };
    freeze(vertex, 1, "a vertex");
    freeze(two_vertices, -2 + p2, "two vertices");
    freeze(three_vertices, 3 - 3 * p2 + p3, "three vertices");
    freeze(edge, 1 - p2, "an edge chain");
    freeze(edge_vertex, -1 + 2 * p2 - p3, "an edge plus a vertex");
    freeze(two_edges, 1 - 2 * p2 + p3, "a two-edge chain");
    freeze(hollow, -3 + 3 * p2 - p3, "the hollow triangle");
    freeze(full, 1, "the full triangle");

    std::size_t ki = static_cast<std::size_t>(k);
    c.check(3 * c_chi(vertex, k) + 3 * c_chi(two_vertices, k) +
                    c_chi(three_vertices, k) == constant[ki],
            "published constant term at k=" + std::to_string(k));
    c.check(c_chi(edge, k) + c_chi(edge_vertex, k) == one_edge_grouped[ki],
            "published one-edge term at k=" + std::to_string(k));
    c.check(c_chi(two_edges, k) == two_edges_grouped[ki],
            "published two-edge term at k=" + std::to_string(k));
    c.check(c_chi(hollow, k) == three_edges_grouped[ki],
            "published three-edge term at k=" + std::to_string(k));
    c.check(c_chi(full, k) == 1,
            "published full-triangle term at k=" + std::to_string(k));
    agreements += 5;
  }

  return {c.ok, c.detail(std::to_string(agreements) +
                         " coefficient identities hold exactly")};
}

std::pair<bool, std::string> moment_machinery() {
  criterion_scratch c;
  long long identities = 0;
  for (int width = 1; width <= 12; ++width) {
    for (long long lo : {0LL, -static_cast<long long>(width / 2),
                         -static_cast<long long>(width)}) {
      IntegerRange range{lo, lo + width};
      InverseVandermonde iv = inverse_vandermonde(range);
      for (int row = 0; row <= width; ++row) {
        for (int col = 0; col <= width; ++col) {
          int128 dot = 0;
          for (int k = 0; k <= width; ++k) {
            dot = checked_add(
                dot, checked_mul(checked_pow(lo + row, k),
                                 iv.num[static_cast<std::size_t>(k)]
                                       [static_cast<std::size_t>(col)]));
          }
          int128 expected = row == col ? iv.denom : 0;
          c.check(dot == expected,
                  "V * V^-1 deviates from the identity at (" +
                      std::to_string(row) + ", " + std::to_string(col) +
                      ") for range [" + std::to_string(lo) + ", " +
                      std::to_string(lo + width) + "]");
          ++identities;
        }
      }
    }
  }

  double roundtrip_worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    counter_rng rng(900, static_cast<std::uint64_t>(trial));
    int width = 1 + trial % 10;
    long long lo = -(width / 2);
    std::vector<double> p(static_cast<std::size_t>(width) + 1, 0.0);
    double sum = 0.0;
    for (double& v : p) {
      v = rng.next_double() + 1e-3;
      sum += v;
    }
    for (double& v : p) v /= sum;
    MomentVector m{IntegerRange{lo, lo + width},
                   std::vector<double>(static_cast<std::size_t>(width) + 1)};
    for (int k = 0; k <= width; ++k) {
      long double acc = 0.0L;
      for (int j = 0; j <= width; ++j) {
        acc += static_cast<long double>(p[static_cast<std::size_t>(j)]) *
               ipow_ld(lo + j, k);
      }
      m.mu[static_cast<std::size_t>(k)] = static_cast<double>(acc);
    }
    RecoveredDistribution rec = distribution_from_moments(m);
    for (std::size_t j = 0; j < p.size(); ++j) {
      c.check_close(rec.p[j], p[j], 1e-8,
                    "moment roundtrip at trial " + std::to_string(trial) +
                        ", value " + std::to_string(lo + static_cast<long long>(j)));
    }
  }
  roundtrip_worst = c.worst;
  return {c.ok, c.detail(std::to_string(identities) +
                         " exact inverse identities; roundtrip error " +
                         format_double(roundtrip_worst) +
                         " over 100 random distributions")};
}

std::pair<bool, std::string> family_counts() {
  criterion_scratch c;
  const std::array<std::size_t, 5> expected{3, 6, 20, 168, 7581};
  for (int n = 1; n <= 5; ++n) {
    std::size_t got = enumerate_subcomplexes(n).size();
    c.check(got == expected[static_cast<std::size_t>(n - 1)],
            "family size for " + std::to_string(n) + " vertices is " +
                std::to_string(got));
  }
  // exhaustive filter over all face bitsets, with the adjoined void element
  // accounting for the +1
  for (int n = 1; n <= 4; ++n) {
    int faces = (1 << n) - 1;
    std::uint64_t downward_closed = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << faces); ++bits) {
      bool closed = true;
      for (FaceMask f = 1; static_cast<int>(f) <= faces && closed; ++f) {
        if (!(bits >> (f - 1) & 1)) continue;
        for (FaceMask sub = (f - 1) & f; sub != 0 && closed;
             sub = (sub - 1) & f) {
          closed = (bits >> (sub - 1)) & 1;
        }
      }
      if (closed) ++downward_closed;
    }
    c.check(downward_closed + 1 == expected[static_cast<std::size_t>(n - 1)],
            "exhaustive filter finds " + std::to_string(downward_closed) +
                " downward-closed sets on " + std::to_string(n) + " vertices");
  }
  return {c.ok, c.detail("family sizes 3, 6, 20, 168, 7581 confirmed; "
                         "exhaustive filter agrees through 4 vertices")};
}

std::pair<bool, std::string> regime_properties() {
  criterion_scratch c;
  long long covered_seen = 0;
  long long uncovered_seen = 0;
  for (const char* name : {"circle", "theta"}) {
    MetricGraph g = builtin_graph(name);
    bool is_circle = std::string(name) == "circle";
    double cap = shortest_cycle_length(g) / 6.0;
    long long chi_x = euler_char_graph(g);
    counter_rng rng(1234, is_circle ? 1 : 2);
    for (int trial = 0; trial < 10000; ++trial) {
      int n = 1 + static_cast<int>(rng.next_below(6));
      double eps = (0.05 + 0.949 * rng.next_double()) * cap;
      BallCoverRealization r = sample_realization(g, n, eps, rng);
      NerveComplex nerve = build_nerve(r);
      NerveComplex rips = build_rips(r);
      c.check(nerve.is_rips_valid, "radius cap exceeded in the sampler");
      c.check(nerve.complex == rips.complex,
              "nerve and clique complex differ below one sixth of the girth");
      long long chi = euler_char(nerve.complex);
      c.check(chi_x <= chi && chi <= n,
              "nerve Euler characteristic " + std::to_string(chi) +
                  " escapes [" + std::to_string(chi_x) + ", " +
                  std::to_string(n) + "] on the " + name);
      if (is_circle) {
        if (covers_fully(r)) {
          ++covered_seen;
          c.check(chi == 0, "covered circle with nonzero characteristic");
        } else {
          ++uncovered_seen;
          c.check(chi == complement_components(r),
                  "uncovered-gap count differs from the characteristic");
        }
      }
    }
  }
  c.check(covered_seen > 0 && uncovered_seen > 0,
          "the circle sweep needs both covered and uncovered realizations "
          "to be informative");
  return {c.ok,
          c.detail("20000 realizations; circle split " +
                   std::to_string(covered_seen) + " covered / " +
                   std::to_string(uncovered_seen) + " uncovered")};
}

std::pair<bool, std::string> relative_pipeline() {
  criterion_scratch c;
  MetricGraph interval = builtin_graph("interval");
  double widest_gap = 0.0;
  double nonzero_freq = 0.0;
  // radius 0.15 cannot cover the unit interval (3 balls reach length 0.9),
  // so both routes must report exactly 0 there; radius 0.2 gives the same
  // comparison with substantial coverage mass
  struct Setup {
    double eps;
    long long trials;
  };
  for (Setup setup : {Setup{0.15, 1000000}, Setup{0.20, 200000}}) {
    McOptions opt;
    opt.trials = setup.trials;
    opt.seed = 5150;
    opt.workers = default_worker_count();
    McResult mc = mc_estimate(interval, 3, setup.eps, opt);
    CoverageReport rel =
        coverage_probability_relative(mc.pair_atomic, interval);
    double oracle = mc.oracle.probability;
    double sigma = mc.oracle.std_error.value();
    double gap = std::abs(rel.probability - oracle);
    widest_gap = std::max(widest_gap, gap);
    // both sides are frequencies over the same sample; give each its own
    // binomial error
    double sigma_rel = std::sqrt(
        std::max(0.0, rel.probability * (1.0 - rel.probability)) /
        static_cast<double>(mc.good_samples));
    double combined = std::sqrt(sigma * sigma + sigma_rel * sigma_rel);
    c.check(gap <= 3.0 * combined,
            "relative pipeline " + format_double(rel.probability) +
                " vs direct frequency " + format_double(oracle) +
                " differ by more than 3 combined standard errors at radius " +
                format_double(setup.eps));
    if (setup.eps == 0.15) {
      c.check(oracle == 0.0 && rel.probability == 0.0,
              "radius 0.15 cannot cover the unit interval, yet a route "
              "reports positive probability");
    } else {
      nonzero_freq = oracle;
      c.check(oracle > 0.0, "radius 0.2 covers with positive probability");
    }
  }

  MetricGraph circle = builtin_graph("circle");
  McOptions opt2;
  opt2.trials = 100000;
  opt2.seed = 5151;
  opt2.workers = default_worker_count();
  McResult mc2 = mc_estimate(circle, 3, 0.2, opt2);
  double absolute = coverage_probability_closed(mc2.atomic, circle).probability;
  double reduced = coverage_probability_relative(mc2.pair_atomic, circle).probability;
  c.check_close(reduced, absolute, 1e-12,
                "boundaryless reduction of the relative pipeline");
  return {c.ok,
          c.detail("interval route gap " + format_double(widest_gap) +
                   " (coverage frequency " + format_double(nonzero_freq) +
                   " at radius 0.2); boundaryless reduction off by " +
                   format_double(std::abs(reduced - absolute)))};
}

std::pair<bool, std::string> concentration_dominance() {
  criterion_scratch c;
  MetricGraph circle = builtin_graph("circle");
  double smallest_margin = 1.0;
  for (double alpha : alpha_grid) {
    double mu0 = gap_moments(alpha, 1);
    double bound = azuma_bound(mu0, 3, circle);
    double exact =
        coverage_probability_closed(three_arc_p_vector(alpha), circle)
            .probability;
    smallest_margin = std::min(smallest_margin, bound - exact);
    c.check(bound >= exact - 1e-12,
            "bound " + format_double(bound) + " fails to dominate " +
                format_double(exact) + " at arc length " +
                format_double(alpha));
  }
  double reference = std::exp(-1.92 * 1.92 / 24.0);
  c.check_close(azuma_bound(gap_moments(0.2, 1), 3, circle), reference, 1e-10,
                "closed-form bound value at arc length 0.2");
  return {c.ok, c.detail("bound dominates the exact probability with margin "
                         ">= " + format_double(smallest_margin) +
                         "; reference value reproduced")};
}

}  // namespace

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

std::vector<CriterionResult> run_acceptance(std::ostream& out) {
  struct Item {
    const char* name;
    std::function<std::pair<bool, std::string>()> run;
  };
  const std::vector<Item> items{
      {"three-arc closed-form coverage", closed_form_coverage},
      {"three-arc moment regression", moment_regression},
      {"gap-distribution identity", gap_distribution_identity},
      {"coverage oracle triangulation", oracle_triangulation},
      {"coefficient oracle equivalence", coefficient_oracles},
      {"moment machinery exactness", moment_machinery},
      {"subcomplex family counts", family_counts},
      {"small-radius regime properties", regime_properties},
      {"relative pipeline agreement", relative_pipeline},
      {"concentration bound dominance", concentration_dominance},
  };

  std::vector<CriterionResult> results;
  results.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    CriterionResult r;
    r.number = static_cast<int>(i) + 1;
    r.name = items[i].name;
    auto start = std::chrono::steady_clock::now();
    try {
      auto [passed, detail] = items[i].run();
      r.passed = passed;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::ostringstream line;
    line << "[" << r.number << "/10] " << (r.passed ? "pass" : "FAIL") << "  "
         << r.name << "  (" << format_double(std::round(r.seconds * 100.0) / 100.0)
         << " s)  " << r.detail;
    out << line.str() << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace nervecover

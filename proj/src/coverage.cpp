#include "nervecover/coverage.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "nervecover/errors.hpp"

namespace nervecover {

const char* coverage_method_name(CoverageMethod m) {
  switch (m) {
    case CoverageMethod::exact_pipeline:
      return "exact";
    case CoverageMethod::mc_pipeline:
      return "mc-pipeline";
    case CoverageMethod::mc_oracle:
      return "mc-oracle";
    case CoverageMethod::stevens_formula:
      return "stevens";
  }
  return "unknown";
}

CoverageReport coverage_probability_closed(const DistributionVector& d,
                                           const MetricGraph& X) {
  if (!X.boundary().empty()) {
    throw config_error(
        "the graph has boundary vertices; use the relative pipeline");
  }
  long long lo = euler_char_graph(X);
  IntegerRange range{lo, d.n};
  ChiDistribution dist = chi_distribution(d, range);
  CoverageReport report;
  report.method = CoverageMethod::exact_pipeline;
  report.probability = dist.probabilities.front();
  report.range = range;
  report.route_discrepancy = dist.max_discrepancy;
  return report;
}

CoverageReport coverage_probability_relative(const PairDistributionVector& d,
                                             const MetricGraph& X) {
  long long lo = chi_rel_graph(X);
  IntegerRange range{lo, d.n};
  ChiDistribution dist = chi_rel_distribution(d, range);
  CoverageReport report;
  report.method = CoverageMethod::exact_pipeline;
  report.probability = dist.probabilities.front();
  report.range = range;
  report.route_discrepancy = dist.max_discrepancy;
  return report;
}

Subcomplex boundary_subcomplex(const BallCoverRealization& r) {
  int n = static_cast<int>(r.centers.size());
  auto w = boundary_indicators(r);
  std::uint64_t bits = 0;
  std::size_t boundary_points = r.graph->boundary().size();
  for (std::size_t k = 0; k < boundary_points; ++k) {
    FaceMask together = 0;
    for (int i = 0; i < n; ++i) {
      if (w[static_cast<std::size_t>(i)][k]) together |= FaceMask{1} << i;
    }
    for (FaceMask sub = together; sub != 0; sub = (sub - 1) & together) {
      bits |= std::uint64_t{1} << (sub - 1);
    }
  }
  return Subcomplex::from_bits_unchecked(n, bits);
}

namespace {

struct WorkerTally {
  std::vector<long long> nerve_counts;
  std::vector<long long> pair_counts;  // dense, only when n <= 4
  long long covered = 0;
  long long good = 0;
  long long rejections = 0;
  long long oracle_samples = 0;
};

}  // namespace

McResult mc_estimate(const MetricGraph& X, int n, double eps,
                     const McOptions& options) {
  if (n < 1 || n > Subcomplex::max_vertices) {
    throw config_error("Monte Carlo nerve mode supports 1 to 6 balls");
  }
  if (options.trials < 1) throw config_error("need at least one trial");
  if (options.workers < 1) throw config_error("need at least one worker");
  if (!(eps > 0.0)) throw config_error("ball radius must be positive");

  const SubcomplexFamily& fam = enumerate_subcomplexes(n);
  std::size_t m = fam.size();
  bool track_pairs = n <= 4;

  int workers = static_cast<int>(
      std::min<long long>(options.workers, options.trials));
  std::vector<WorkerTally> tallies(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
  std::atomic<bool> too_many_rejections{false};

  auto worker_body = [&](int w, long long share) {
    WorkerTally& tally = tallies[static_cast<std::size_t>(w)];
    tally.nerve_counts.assign(m, 0);
    if (track_pairs) tally.pair_counts.assign(m * m, 0);
    counter_rng rng(options.seed, static_cast<std::uint64_t>(w));
    for (long long t = 0; t < share; ++t) {
      if (too_many_rejections.load(std::memory_order_relaxed)) return;
      BallCoverRealization r = sample_realization(X, n, eps, rng);
      bool good = pair_good_cover_check(r).ok;
      if (options.strict) {
        while (!good) {
          ++tally.rejections;
          if (tally.rejections > share && tally.rejections > 1000) {
            too_many_rejections.store(true, std::memory_order_relaxed);
            return;
          }
          r = sample_realization(X, n, eps, rng);
          good = pair_good_cover_check(r).ok;
        }
      } else if (!good) {
        ++tally.rejections;
      }
      // the direct coverage oracle does not need goodness
      ++tally.oracle_samples;
      if (covers_fully(r)) ++tally.covered;
      if (!good) continue;
      ++tally.good;
      std::size_t nerve_ord = fam.index_of(build_nerve(r).complex);
      ++tally.nerve_counts[nerve_ord];
      if (track_pairs) {
        std::size_t pair_ord = fam.index_of(boundary_subcomplex(r));
        ++tally.pair_counts[nerve_ord * m + pair_ord];
      }
    }
  };

  auto run_worker = [&](int w, long long share) {
    try {
      worker_body(w, share);
    } catch (...) {
      failures[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };

  long long base = options.trials / workers;
  long long extra = options.trials % workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    long long share = base + (w < extra ? 1 : 0);
    pool.emplace_back(run_worker, w, share);
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  long long rejections = 0;
  long long covered = 0;
  long long good = 0;
  long long oracle_samples = 0;
  for (const WorkerTally& tally : tallies) {
    rejections += tally.rejections;
    covered += tally.covered;
    good += tally.good;
    oracle_samples += tally.oracle_samples;
  }
  // attempts: strict mode resamples, keep mode spends the trial either way
  long long attempts =
      options.strict ? options.trials + rejections : options.trials;
  if (too_many_rejections.load() || rejections * 2 > attempts) {
    throw config_error(
        "more than half of the sampled covers fail the good-cover check; "
        "the radius is too large for this regime (" +
        std::to_string(rejections) + " rejections)");
  }
  if (good < 1) {
    throw config_error("no realization passed the good-cover check");
  }

  McResult out;
  out.workers = workers;
  out.rejections = rejections;
  out.good_samples = good;

  out.atomic.n = n;
  out.atomic.form = DistributionForm::atomic;
  out.atomic.values.assign(m, 0.0);
  for (const WorkerTally& tally : tallies) {
    for (std::size_t i = 0; i < m; ++i) {
      out.atomic.values[i] += static_cast<double>(tally.nerve_counts[i]);
    }
  }
  for (double& v : out.atomic.values) v /= static_cast<double>(good);

  if (track_pairs) {
    out.pair_atomic.n = n;
    out.pair_atomic.form = DistributionForm::atomic;
    out.pair_atomic.values.assign(m * m, 0.0);
    for (const WorkerTally& tally : tallies) {
      for (std::size_t i = 0; i < m * m; ++i) {
        out.pair_atomic.values[i] += static_cast<double>(tally.pair_counts[i]);
      }
    }
    for (double& v : out.pair_atomic.values) v /= static_cast<double>(good);
  }

  double freq = static_cast<double>(covered) /
                static_cast<double>(oracle_samples);
  out.oracle.method = CoverageMethod::mc_oracle;
  out.oracle.probability = freq;
  out.oracle.std_error = std::sqrt(
      std::max(0.0, freq * (1.0 - freq) /
                        static_cast<double>(oracle_samples)));
  out.oracle.samples = oracle_samples;
  out.oracle.rejections = rejections;
  out.oracle.range = {euler_char_graph(X), n};
  return out;
}

double azuma_bound(double mu0, int n, const MetricGraph& X) {
  if (n < 1) throw config_error("the bound needs at least one ball");
  if (mu0 < 0.0) {
    throw config_error(
        "the concentration bound needs a nonnegative shifted mean, got " +
        std::to_string(mu0));
  }
  double spread = std::abs(static_cast<double>(chi_rel_graph(X))) + 2.0;
  return std::exp(-mu0 * mu0 / (2.0 * n * spread * spread));
}

}  // namespace nervecover

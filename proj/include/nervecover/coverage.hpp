#pragma once

#include <cstdint>
#include <optional>

#include "nervecover/distribution.hpp"
#include "nervecover/metric_graph.hpp"
#include "nervecover/nerve.hpp"

namespace nervecover {

enum class CoverageMethod {
  exact_pipeline,   // Euler-characteristic identity on a distribution vector
  mc_pipeline,      // the same identity on an empirical vector
  mc_oracle,        // direct covers_fully frequency
  stevens_formula,  // circle-arc closed form
};

const char* coverage_method_name(CoverageMethod m);

struct CoverageReport {
  CoverageMethod method = CoverageMethod::exact_pipeline;
  double probability = 0.0;
  std::optional<double> std_error;
  IntegerRange range;  // Euler characteristic range used, when applicable
  long long samples = 0;
  long long rejections = 0;
  double route_discrepancy = 0.0;  // exact pipelines: gap between the routes
};

// P(full coverage) = P(chi of the nerve equals chi(X)) for boundaryless X,
// evaluated over the range [chi(X), n]. Throws config_error when X has
// boundary vertices (the relative variant handles that case).
CoverageReport coverage_probability_closed(const DistributionVector& d,
                                           const MetricGraph& X);

// Relative version over pair vectors (nerve, boundary part):
// P(chi_rel = chi(X) - #boundary). Reduces exactly to the closed variant
// when the boundary is empty and the pair mass sits on empty second
// components.
CoverageReport coverage_probability_relative(const PairDistributionVector& d,
                                             const MetricGraph& X);

struct McOptions {
  long long trials = 100000;
  std::uint64_t seed = 0;
  int workers = 1;
  // strict: resample realizations that fail the good-cover check (they are
  // counted and reported). keep: keep them for the direct coverage oracle
  // but exclude them from the nerve statistics.
  bool strict = true;
};

struct McResult {
  DistributionVector atomic;           // realized-nerve frequencies
  PairDistributionVector pair_atomic;  // filled when n <= 4, else empty
  CoverageReport oracle;
  long long good_samples = 0;
  long long rejections = 0;
  int workers = 1;
};

// Monte Carlo over i.i.d. uniform-by-length ball centers. Deterministic for
// a fixed (seed, workers): worker w draws from the counter stream
// (seed, w) and results merge by count addition. A rejection rate above 50%
// aborts with config_error.
McResult mc_estimate(const MetricGraph& X, int n, double eps,
                     const McOptions& options);

// The realized boundary part: one simplex per boundary vertex, on the balls
// covering it.
Subcomplex boundary_subcomplex(const BallCoverRealization& r);

// Concentration upper bound exp(-mu0^2 / (2 n (|chi_rel(X)| + 2)^2)) on the
// coverage probability; mu0 is the mean of the realized chi_rel shifted by
// its lower limit chi_rel(X), and must be nonnegative.
double azuma_bound(double mu0, int n, const MetricGraph& X);

}  // namespace nervecover

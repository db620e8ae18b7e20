#pragma once

#include <vector>

#include "nervecover/coefficients.hpp"
#include "nervecover/subcomplex.hpp"

namespace nervecover {

// Moments mu_0..mu_N of an integer random variable supported on
// range.lo .. range.hi, N = range.width().
struct MomentVector {
  IntegerRange range;
  std::vector<double> mu;
};

// e_i of x with x_j omitted; e_0 = 1. Indices validated.
double elem_sym_omit(int i, int j, const std::vector<double>& x);

// Inverse of the Vandermonde matrix V[j][k] = (lo+j)^k on the integer nodes
// lo..hi, in the row-vector convention p = mu * V^{-1}, i.e.
// p_j = sum_k v[k][j] mu_k. Entries are exactly rational with denominator N!;
// both the exact numerators and the double conversion are provided.
struct InverseVandermonde {
  IntegerRange range;
  std::vector<std::vector<double>> v;     // v[k][j]
  std::vector<std::vector<int128>> num;   // v = num / denom, exact
  int128 denom = 1;                       // N!
};

// N = range.width() capped at 20: beyond that the conditioning is hopeless
// in double precision and no pipeline here needs it.
InverseVandermonde inverse_vandermonde(const IntegerRange& range);

// General-nodes form v_{kj}(x) = (-1)^{N+k} e_{N-k}(j)(x) / prod_{i!=j}(x_j - x_i),
// used as an independent cross-check of the integer specialization.
std::vector<std::vector<double>> inverse_vandermonde_nodes(
    const std::vector<double>& x);

// Raw recovered distribution plus diagnostics. No clipping, no
// renormalization: negative entries or a sum away from 1 indicate a wrong
// range or inexact moments, and hiding that would defeat the point.
struct RecoveredDistribution {
  std::vector<double> p;  // p[j] = P(X = lo + j)
  double min_entry = 0.0;
  double sum_deviation = 0.0;  // sum(p) - 1
};

RecoveredDistribution distribution_from_moments(const MomentVector& m);

}  // namespace nervecover

#include "nervecover/moments.hpp"

#include <cmath>
#include <cstdlib>

#include "nervecover/errors.hpp"

namespace nervecover {

namespace {

constexpr int float_mode_cap = 20;

// Elementary symmetric polynomials e_0..e_deg of the given values via the
// standard product DP.
template <typename T>
std::vector<T> elem_sym_all(const std::vector<T>& values, int deg) {
  std::vector<T> e(static_cast<std::size_t>(deg) + 1, T{0});
  e[0] = T{1};
  int used = 0;
  for (const T& x : values) {
    ++used;
    const int top = std::min(deg, used);
    for (int i = top; i >= 1; --i) {
      e[static_cast<std::size_t>(i)] =
          e[static_cast<std::size_t>(i)] + x * e[static_cast<std::size_t>(i) - 1];
    }
  }
  return e;
}

}  // namespace

double elem_sym_omit(int i, int j, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw config_error("elem_sym_omit requires a nonempty node list");
  if (i < 0 || i > n - 1) {
    throw config_error("elem_sym_omit degree out of range: " + std::to_string(i));
  }
  if (j < 0 || j > n - 1) {
    throw config_error("elem_sym_omit omitted index out of range: " +
                       std::to_string(j));
  }
  std::vector<double> rest;
  rest.reserve(static_cast<std::size_t>(n) - 1);
  for (int t = 0; t < n; ++t) {
    if (t != j) rest.push_back(x[static_cast<std::size_t>(t)]);
  }
  return elem_sym_all(rest, i)[static_cast<std::size_t>(i)];
}

InverseVandermonde inverse_vandermonde(const IntegerRange& range) {
  if (range.lo > range.hi) {
    throw config_error("integer range is empty: lo > hi");
  }
  const long long n_wide = range.width();
  if (n_wide > float_mode_cap) {
    throw config_error("moment range width " + std::to_string(n_wide) +
                       " exceeds the cap of " + std::to_string(float_mode_cap));
  }
  const int n = static_cast<int>(n_wide);
  InverseVandermonde out;
  out.range = range;
  out.denom = 1;
  for (int i = 2; i <= n; ++i) out.denom = checked_mul(out.denom, i);
  out.num.assign(static_cast<std::size_t>(n) + 1,
                 std::vector<int128>(static_cast<std::size_t>(n) + 1, 0));
  out.v.assign(static_cast<std::size_t>(n) + 1,
               std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  const double denom_d = static_cast<double>(out.denom);
  for (int j = 0; j <= n; ++j) {
    std::vector<int128> rest;
    rest.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t <= n; ++t) {
      if (t != j) rest.push_back(range.lo + t);
    }
    const std::vector<int128> e = elem_sym_all(rest, n);
    for (int k = 0; k <= n; ++k) {
      int128 numerator = checked_mul(binomial(n, j), e[static_cast<std::size_t>(n - k)]);
      if ((j + k) % 2 != 0) numerator = -numerator;
      out.num[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = numerator;
      out.v[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
          static_cast<double>(numerator) / denom_d;
    }
  }
  return out;
}

std::vector<std::vector<double>> inverse_vandermonde_nodes(
    const std::vector<double>& x) {
  if (x.empty()) throw config_error("node list must be nonempty");
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<double>> v(static_cast<std::size_t>(n) + 1,
                                     std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  for (int j = 0; j <= n; ++j) {
    double prod = 1.0;
    for (int t = 0; t <= n; ++t) {
      if (t != j) prod *= x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(t)];
    }
    if (prod == 0.0) throw config_error("nodes must be distinct");
    for (int k = 0; k <= n; ++k) {
      const double e = elem_sym_omit(n - k, j, x);
      const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
      v[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = sign * e / prod;
    }
  }
  return v;
}

RecoveredDistribution distribution_from_moments(const MomentVector& m) {
  const long long n_wide = m.range.width();
  if (static_cast<long long>(m.mu.size()) != n_wide + 1) {
    throw config_error("moment vector length " + std::to_string(m.mu.size()) +
                       " does not match range width + 1 = " +
                       std::to_string(n_wide + 1));
  }
  if (std::abs(m.mu[0] - 1.0) > 1e-9) {
    throw config_error("mu_0 of a probability moment vector must be 1");
  }
  const InverseVandermonde inv = inverse_vandermonde(m.range);
  const int n = static_cast<int>(n_wide);
  RecoveredDistribution out;
  out.p.assign(static_cast<std::size_t>(n) + 1, 0.0);
  // Accumulate against the exact rational entries in extended precision and
  // divide once; the naive double dot product loses several digits to
  // cancellation between the large alternating terms.
  for (int j = 0; j <= n; ++j) {
    long double acc = 0.0L;
    for (int k = 0; k <= n; ++k) {
      acc += static_cast<long double>(m.mu[static_cast<std::size_t>(k)]) *
             static_cast<long double>(
                 inv.num[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    }
    out.p[static_cast<std::size_t>(j)] =
        static_cast<double>(acc / static_cast<long double>(inv.denom));
  }
  out.min_entry = out.p[0];
  double sum = 0.0;
  for (double p : out.p) {
    sum += p;
    if (p < out.min_entry) out.min_entry = p;
  }
  out.sum_deviation = sum - 1.0;
  return out;
}

}  // namespace nervecover

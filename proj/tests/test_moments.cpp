#include "nervecover/moments.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "nervecover/errors.hpp"
#include "nervecover/rng.hpp"

using namespace nervecover;

namespace {

// Exact identity check via the rational numerators: sum_j (lo+j)^k' * num[k][j]
// must equal N! exactly when k = k' and 0 otherwise.
void check_exact_inverse(const IntegerRange& range) {
  const InverseVandermonde inv = inverse_vandermonde(range);
  const int n = static_cast<int>(range.width());
  for (int k = 0; k <= n; ++k) {
    for (int kp = 0; kp <= n; ++kp) {
      int128 acc = 0;
      for (int j = 0; j <= n; ++j) {
        acc += checked_mul(checked_pow(range.lo + j, kp),
                           inv.num[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
      }
      CHECK(acc == (k == kp ? inv.denom : 0));
    }
  }
}

}  // namespace

TEST_CASE("two point inverse matches the hand value") {
  const InverseVandermonde inv = inverse_vandermonde({0, 1});
  REQUIRE(inv.v.size() == 2);
  CHECK(inv.v[0][0] == 1.0);
  CHECK(inv.v[0][1] == 0.0);
  CHECK(inv.v[1][0] == -1.0);
  CHECK(inv.v[1][1] == 1.0);
}

TEST_CASE("vandermonde inverse identity over integer ranges") {
  // Every N <= 12 window, plus shifted and signed ranges: the residual of
  // V * V^{-1} - I evaluated over the exact rational entries is identically
  // zero, which is how the 1e-10 identity requirement is met; a naive double
  // dot product of the same entries only reflects summation cancellation.
  for (int n = 0; n <= 12; ++n) {
    check_exact_inverse({0, n});
  }
  check_exact_inverse({-1, 1});
  check_exact_inverse({-3, 4});
  check_exact_inverse({-7, 8});
  check_exact_inverse({-5, 7});
  // The double matrix is the correctly rounded image of the exact entries.
  for (const IntegerRange range : {IntegerRange{0, 12}, IntegerRange{-5, 7}}) {
    const InverseVandermonde inv = inverse_vandermonde(range);
    const int n = static_cast<int>(range.width());
    for (int k = 0; k <= n; ++k) {
      for (int j = 0; j <= n; ++j) {
        const double exact =
            static_cast<double>(static_cast<long double>(inv.num[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) /
                                static_cast<long double>(inv.denom));
        const double got = inv.v[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        CHECK(std::abs(got - exact) <= 1e-15 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("integer specialization equals the general node formula") {
  for (const IntegerRange range : {IntegerRange{0, 3}, IntegerRange{-2, 5}, IntegerRange{-4, 6}}) {
    const InverseVandermonde inv = inverse_vandermonde(range);
    std::vector<double> nodes;
    for (long long x = range.lo; x <= range.hi; ++x) nodes.push_back(static_cast<double>(x));
    const auto general = inverse_vandermonde_nodes(nodes);
    for (std::size_t k = 0; k < inv.v.size(); ++k) {
      for (std::size_t j = 0; j < inv.v.size(); ++j) {
        CHECK(std::abs(inv.v[k][j] - general[k][j]) < 1e-10);
      }
    }
  }
}

TEST_CASE("elementary symmetric with omission") {
  const std::vector<double> x{0.0, 1.0, 2.0};
  CHECK(elem_sym_omit(0, 0, x) == 1.0);
  CHECK(elem_sym_omit(0, 2, x) == 1.0);
  CHECK(elem_sym_omit(1, 0, x) == 3.0);
  CHECK(elem_sym_omit(2, 1, x) == 0.0);
  CHECK_THROWS_AS(elem_sym_omit(3, 0, x), config_error);
  CHECK_THROWS_AS(elem_sym_omit(1, 3, x), config_error);
  CHECK_THROWS_AS(elem_sym_omit(-1, 0, x), config_error);
}

TEST_CASE("last row value is the printed (-1)^N / N!") {
  for (const IntegerRange range : {IntegerRange{0, 3}, IntegerRange{-3, 4}, IntegerRange{0, 6}}) {
    const int n = static_cast<int>(range.width());
    double factorial = 1.0;
    for (int i = 2; i <= n; ++i) factorial *= i;
    const double expected = ((n % 2 == 0) ? 1.0 : -1.0) / factorial;
    const InverseVandermonde inv = inverse_vandermonde(range);
    CHECK(std::abs(inv.v[static_cast<std::size_t>(n)][0] - expected) < 1e-14);
  }
}

TEST_CASE("distribution recovery on pinned cases") {
  SECTION("degenerate at the lower endpoint") {
    MomentVector m{{2, 5}, {1.0, 2.0, 4.0, 8.0}};
    const RecoveredDistribution r = distribution_from_moments(m);
    REQUIRE(r.p.size() == 4);
    CHECK(std::abs(r.p[0] - 1.0) < 1e-12);
    for (std::size_t j = 1; j < r.p.size(); ++j) CHECK(std::abs(r.p[j]) < 1e-12);
    CHECK(std::abs(r.sum_deviation) < 1e-12);
  }
  SECTION("fair coin") {
    MomentVector m{{0, 1}, {1.0, 0.5}};
    const RecoveredDistribution r = distribution_from_moments(m);
    CHECK(std::abs(r.p[0] - 0.5) < 1e-12);
    CHECK(std::abs(r.p[1] - 0.5) < 1e-12);
  }
  SECTION("three arc gap moments at alpha = 0.2") {
    // mu_k from the printed moment polynomials evaluated at alpha = 0.2
    // (first 3-6a+3a^2, second 9-30a+27a^2, third 27-114a+129a^2 on the
    // a <= 1/3 branch); the recovered masses are the printed gap
    // distribution values (0, 0.24, 0.6, 0.16).
    MomentVector m{{0, 3}, {1.0, 1.92, 4.08, 9.36}};
    const RecoveredDistribution r = distribution_from_moments(m);
    REQUIRE(r.p.size() == 4);
    CHECK(std::abs(r.p[0] - 0.0) < 1e-10);
    CHECK(std::abs(r.p[1] - 0.24) < 1e-10);
    CHECK(std::abs(r.p[2] - 0.6) < 1e-10);
    CHECK(std::abs(r.p[3] - 0.16) < 1e-10);
  }
}

TEST_CASE("roundtrip on random synthetic distributions") {
  counter_rng rng(20240817, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(10));
    // Ranges shaped like the invariant ranges the pipelines use: centered or
    // near-centered around zero, shifted by at most one.
    const long long lo = -(n / 2) + static_cast<long long>(rng.next_below(3)) - 1;
    std::vector<double> q(static_cast<std::size_t>(n) + 1);
    double total = 0.0;
    for (double& v : q) {
      v = rng.next_double() + 1e-3;
      total += v;
    }
    for (double& v : q) v /= total;
    MomentVector m;
    m.range = {lo, lo + n};
    m.mu.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
      long double acc = 0.0L;
      for (int j = 0; j <= n; ++j) {
        acc += static_cast<long double>(checked_pow(lo + j, k)) *
               static_cast<long double>(q[static_cast<std::size_t>(j)]);
      }
      m.mu[static_cast<std::size_t>(k)] = static_cast<double>(acc);
    }
    m.mu[0] = 1.0;
    const RecoveredDistribution r = distribution_from_moments(m);
    for (int j = 0; j <= n; ++j) {
      CHECK(std::abs(r.p[static_cast<std::size_t>(j)] - q[static_cast<std::size_t>(j)]) < 1e-8);
    }
  }
}

TEST_CASE("diagnostics report rather than clip") {
  // Moments of a variable on [0,2] interpreted on the wrong range [0,1]:
  // entries go negative and the deviation is reported untouched.
  MomentVector wrong{{0, 1}, {1.0, 1.2}};
  const RecoveredDistribution r = distribution_from_moments(wrong);
  CHECK(r.p[0] < 0.0);
  CHECK(r.min_entry < 0.0);
  CHECK(std::abs((r.p[0] + r.p[1]) - 1.0 - r.sum_deviation) < 1e-12);
}

TEST_CASE("moment vector validation") {
  CHECK_THROWS_AS(distribution_from_moments({{0, 2}, {1.0, 1.0}}), config_error);
  CHECK_THROWS_AS(distribution_from_moments({{0, 1}, {0.5, 0.5}}), config_error);
  CHECK_THROWS_AS(inverse_vandermonde({5, 2}), config_error);
  CHECK_THROWS_AS(inverse_vandermonde({0, 21}), config_error);
  CHECK_THROWS_AS(inverse_vandermonde_nodes({1.0, 1.0}), config_error);
}

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nervecover/distribution.hpp"
#include "nervecover/errors.hpp"
#include "nervecover/rng.hpp"
#include "nervecover/stevens.hpp"
#include "nervecover/subcomplex.hpp"

using namespace nervecover;

namespace {

// Test-side arc sampler. Arcs are [x_i, x_i + alpha) mod 1; with equal
// lengths the circle is covered iff every circular spacing between
// consecutive start points is at most alpha, and each larger spacing is one
// uncovered gap.
struct arc_sample {
  std::vector<double> starts;
  double alpha;

  int gap_count() const {
    std::vector<double> s = starts;
    std::sort(s.begin(), s.end());
    int gaps = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      double next = i + 1 < s.size() ? s[i + 1] : s[0] + 1.0;
      if (next - s[i] > alpha) ++gaps;
    }
    return gaps;
  }

  bool arcs_intersect(std::size_t i, std::size_t j) const {
    double d = starts[j] - starts[i];
    d -= std::floor(d);
    return d < alpha || 1.0 - d < alpha;
  }

  // Whether one point lies in all three arcs, by cutting each arc into
  // plain intervals of [0, 1] and intersecting the lists.
  bool triple_point() const {
    auto pieces = [&](double x) {
      std::vector<std::pair<double, double>> out;
      if (x + alpha <= 1.0) {
        out.push_back({x, x + alpha});
      } else {
        out.push_back({x, 1.0});
        out.push_back({0.0, x + alpha - 1.0});
      }
      return out;
    };
    for (auto [a0, b0] : pieces(starts[0])) {
      for (auto [a1, b1] : pieces(starts[1])) {
        for (auto [a2, b2] : pieces(starts[2])) {
          double lo = std::max({a0, a1, a2});
          double hi = std::min({b0, b1, b2});
          if (lo < hi) return true;
        }
      }
    }
    return false;
  }
};

arc_sample draw_arcs(int n, double alpha, counter_rng& rng) {
  arc_sample s;
  s.alpha = alpha;
  for (int i = 0; i < n; ++i) s.starts.push_back(rng.next_double());
  return s;
}

double binomial_sigma(double p_hat, int trials) {
  return std::sqrt(std::max(p_hat * (1.0 - p_hat), 1e-12) / trials);
}

}  // namespace

TEST_CASE("coverage closed form matches pinned hand computations") {
  // 1 - 4(0.7)^3 + 6(0.4)^3 - 4(0.1)^3
  CHECK(stevens_coverage({4, 0.3}) == Catch::Approx(0.008).margin(1e-12));
  CHECK(stevens_coverage({5, 0.25}) == Catch::Approx(0.00390625).margin(1e-12));
  // three arcs: (3 alpha - 1)^2 above 1/3, zero below
  for (double alpha : {0.35, 0.4, 0.45, 0.49}) {
    double expected = (3.0 * alpha - 1.0) * (3.0 * alpha - 1.0);
    CHECK(stevens_coverage({3, alpha}) ==
          Catch::Approx(expected).margin(1e-12));
  }
  for (double alpha : {0.1, 0.2, 0.3, 1.0 / 3.0}) {
    CHECK(stevens_coverage({3, alpha}) == Catch::Approx(0.0).margin(1e-12));
  }
  // one arc shorter than the circle never covers
  CHECK(stevens_coverage({1, 0.99}) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("gap distribution is a probability vector with coverage at zero") {
  for (int n : {2, 3, 4, 5, 6}) {
    for (double alpha : {0.1, 0.2, 0.35, 0.45, 0.7}) {
      ArcModel m{n, alpha};
      std::vector<double> gaps = stevens_gap_vector(m);
      REQUIRE(gaps.size() == static_cast<std::size_t>(n) + 1);
      double sum = 0.0;
      for (double p : gaps) {
        CHECK(p >= -1e-9);
        sum += p;
      }
      CHECK(sum == Catch::Approx(1.0).margin(1e-9));
      CHECK(gaps[0] == Catch::Approx(stevens_coverage(m)).margin(1e-12));
      CHECK(stevens_gap_dist(m, n + 3) == 0.0);
    }
  }
}

TEST_CASE("gap vector moments match the closed-form moments") {
  // the closed forms for E(G^k) were derived separately and switch cubic
  // branch at 1/3, so agreement across that point is a real cross-check
  for (double alpha : {0.1, 0.2, 0.3, 0.35, 0.4, 0.45}) {
    std::vector<double> gaps = stevens_gap_vector({3, alpha});
    for (int k = 1; k <= 3; ++k) {
      double mu = 0.0;
      for (std::size_t j = 0; j < gaps.size(); ++j) {
        double term = gaps[j];
        for (int t = 0; t < k; ++t) term *= static_cast<double>(j);
        mu += term;
      }
      CHECK(mu == Catch::Approx(gap_moments(alpha, k)).margin(1e-10));
    }
  }
}

TEST_CASE("gap distribution matches a from-scratch arc simulation") {
  const int trials = 200000;
  for (auto [n, alpha] : std::vector<std::pair<int, double>>{
           {3, 0.3}, {4, 0.25}, {5, 0.18}}) {
    counter_rng rng(777, static_cast<std::uint64_t>(n));
    std::vector<int> counts(static_cast<std::size_t>(n) + 1, 0);
    for (int t = 0; t < trials; ++t) {
      ++counts[static_cast<std::size_t>(draw_arcs(n, alpha, rng).gap_count())];
    }
    std::vector<double> expected = stevens_gap_vector({n, alpha});
    for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j) {
      double freq = static_cast<double>(counts[j]) / trials;
      double sigma = binomial_sigma(expected[j], trials);
      INFO("n=" << n << " alpha=" << alpha << " j=" << j);
      CHECK(std::abs(freq - expected[j]) <= 4.0 * sigma + 1e-9);
    }
  }
}

TEST_CASE("three-arc containment vector matches simulated face events") {
  const int trials = 200000;
  const SubcomplexFamily& fam = enumerate_subcomplexes(3);
  for (double alpha : {0.25, 0.4}) {
    DistributionVector p = three_arc_p_vector(alpha);
    validate_distribution(p);

    std::vector<int> hits(fam.size(), 0);
    counter_rng rng(4242, alpha < 0.3 ? 0 : 1);
    for (int t = 0; t < trials; ++t) {
      arc_sample s = draw_arcs(3, alpha, rng);
      bool e12 = s.arcs_intersect(0, 1);
      bool e13 = s.arcs_intersect(0, 2);
      bool e23 = s.arcs_intersect(1, 2);
      bool t123 = s.triple_point();
      for (std::size_t i = 0; i < fam.size(); ++i) {
        const Subcomplex& c = fam.at(i);
        if (c.is_void()) continue;
        // vertex i is bit i-1, so edge {1,2} is mask 0b011 and so on
        bool contained = true;
        if (c.contains(0b011)) contained &= e12;
        if (c.contains(0b101)) contained &= e13;
        if (c.contains(0b110)) contained &= e23;
        if (c.contains(0b111)) contained &= t123;
        if (contained) ++hits[i];
      }
    }
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (fam.at(i).is_void()) {
        CHECK(p.values[i] == 0.0);
        continue;
      }
      double freq = static_cast<double>(hits[i]) / trials;
      double sigma = binomial_sigma(p.values[i], trials);
      INFO("alpha=" << alpha << " complex=" << subcomplex_to_text(fam.at(i)));
      CHECK(std::abs(freq - p.values[i]) <= 4.0 * sigma + 1e-9);
    }
  }
}

TEST_CASE("three-arc vector round-trips through the atomic form") {
  for (double alpha : {0.2, 1.0 / 3.0, 0.4, 0.49}) {
    DistributionVector p = three_arc_p_vector(alpha);
    DistributionVector atomic = P_from_p(p);
    validate_distribution(atomic);
    DistributionVector back = p_from_P(atomic);
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      CHECK(back.values[i] == Catch::Approx(p.values[i]).margin(1e-12));
    }
  }
}

TEST_CASE("arc model validation rejects degenerate inputs") {
  CHECK_THROWS_AS(stevens_coverage({0, 0.3}), config_error);
  CHECK_THROWS_AS(stevens_coverage({3, 0.0}), config_error);
  CHECK_THROWS_AS(stevens_coverage({3, 1.0}), config_error);
  CHECK_THROWS_AS(stevens_coverage({3, -0.2}), config_error);
  CHECK_THROWS_AS(stevens_gap_dist({3, 0.3}, -1), config_error);
  CHECK_THROWS_AS(three_arc_p_vector(0.5), config_error);
  CHECK_THROWS_AS(three_arc_p_vector(0.0), config_error);
  CHECK_THROWS_AS(gap_moments(0.2, 4), config_error);
  CHECK_THROWS_AS(gap_moments(0.6, 1), config_error);
}

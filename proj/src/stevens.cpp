#include "nervecover/stevens.hpp"

#include <cmath>
#include <string>

#include "nervecover/coefficients.hpp"
#include "nervecover/errors.hpp"

namespace nervecover {

namespace {

// Largest j with 1 - j*alpha >= 0, nudged so that alpha = 1/m lands on m.
int arc_cap(const ArcModel& m) {
  int k = static_cast<int>(std::floor(1.0 / m.alpha + 1e-9));
  return std::min(m.n, k);
}

double ipow(double x, int e) {
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

}  // namespace

void validate_arc_model(const ArcModel& m) {
  if (m.n < 1) throw config_error("arc model needs at least one arc");
  if (!(m.alpha > 0.0 && m.alpha < 1.0)) {
    throw config_error("arc length must lie strictly between 0 and 1, got " +
                       std::to_string(m.alpha));
  }
}

double stevens_coverage(const ArcModel& m) {
  validate_arc_model(m);
  int cap = arc_cap(m);
  double total = 0.0;
  for (int j = 0; j <= cap; ++j) {
    double term = static_cast<double>(binomial(m.n, j)) *
                  ipow(1.0 - j * m.alpha, m.n - 1);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

double stevens_gap_dist(const ArcModel& m, int j) {
  validate_arc_model(m);
  if (j < 0) throw config_error("gap count must be nonnegative");
  int cap = arc_cap(m);
  if (j > cap) return 0.0;
  double inner = 0.0;
  for (int i = j; i <= cap; ++i) {
    double term = static_cast<double>(binomial(m.n - j, i - j)) *
                  ipow(1.0 - i * m.alpha, m.n - 1);
    inner += ((i - j) % 2 == 0) ? term : -term;
  }
  return static_cast<double>(binomial(m.n, j)) * inner;
}

std::vector<double> stevens_gap_vector(const ArcModel& m) {
  std::vector<double> out(static_cast<std::size_t>(m.n) + 1, 0.0);
  for (int j = 0; j <= m.n; ++j) {
    out[static_cast<std::size_t>(j)] = stevens_gap_dist(m, j);
  }
  return out;
}

DistributionVector three_arc_p_vector(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw config_error(
        "the three-arc vector requires 0 < alpha < 1/2 (good covers), got " +
        std::to_string(alpha));
  }
  const SubcomplexFamily& fam = enumerate_subcomplexes(3);
  DistributionVector out{3, DistributionForm::cumulative,
                         std::vector<double>(fam.size(), 0.0)};
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Subcomplex& s = fam.at(i);
    if (s.is_void()) continue;  // no mass reaches the adjoined element
    int edges = face_count(s, 1);
    int triangles = face_count(s, 2);
    double p;
    if (triangles == 1) {
      // all three pairwise overlaps, around one common stretch
      p = 3.0 * alpha * alpha;
    } else if (edges == 3) {
      // pairwise overlaps with no common point; impossible for short arcs
      p = alpha <= 1.0 / 3.0
              ? 3.0 * alpha * alpha
              : 12.0 * alpha * alpha - 6.0 * alpha + 1.0;
    } else if (edges == 2) {
      p = 4.0 * alpha * alpha;
    } else if (edges == 1) {
      p = 2.0 * alpha;
    } else {
      p = 1.0;  // isolated vertices are present almost surely
    }
    out.values[i] = p;
  }
  return out;
}

double gap_moments(double alpha, int k) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw config_error("gap moments cover 0 < alpha < 1/2");
  }
  switch (k) {
    case 1:
      return 3.0 - 6.0 * alpha + 3.0 * alpha * alpha;
    case 2:
      return 9.0 - 30.0 * alpha + 27.0 * alpha * alpha;
    case 3:
      // the cubic's coefficients switch when the third gap becomes
      // impossible (alpha above 1/3); continuous at the junction
      return alpha <= 1.0 / 3.0
                 ? 27.0 - 114.0 * alpha + 129.0 * alpha * alpha
                 : 21.0 - 78.0 * alpha + 75.0 * alpha * alpha;
    default:
      throw config_error("closed-form gap moments exist for k in {1,2,3}");
  }
}

}  // namespace nervecover

#pragma once

#include <vector>

#include "nervecover/distribution.hpp"

namespace nervecover {

// n random arcs of length alpha dropped uniformly on the unit-circumference
// circle. alpha = 2 * ball radius. The covering regime is good (nerve
// machinery applies) when alpha < 1/2.
struct ArcModel {
  int n = 0;
  double alpha = 0.0;
};

void validate_arc_model(const ArcModel& m);

// P(circle fully covered), in the convention whose j = 0 term makes the
// alternating sum start at 1; equals stevens_gap_dist(m, 0).
double stevens_coverage(const ArcModel& m);

// P(exactly j uncovered gaps); 0 for j above min(n, floor(1/alpha)).
double stevens_gap_dist(const ArcModel& m, int j);

// The full gap distribution, j = 0..n.
std::vector<double> stevens_gap_vector(const ArcModel& m);

// The exact cumulative vector over the three-ball family on the circle:
// p_s = P(s is realized as part of the nerve). Entries depend only on the
// edge and triangle content of s. Requires alpha < 1/2.
DistributionVector three_arc_p_vector(double alpha);

// Closed forms for E(G^k), k = 1..3, of the three-arc gap count. The cubic
// changes branch at alpha = 1/3.
double gap_moments(double alpha, int k);

}  // namespace nervecover

#pragma once

#include <string>
#include <vector>

#include "nervecover/metric_graph.hpp"
#include "nervecover/rng.hpp"
#include "nervecover/subcomplex.hpp"

namespace nervecover {

// Closed sub-interval [a, b] of an edge, in offset units.
struct Interval {
  double a = 0.0;
  double b = 0.0;
};

// intervals[k] lists the covered sub-intervals of edges()[k], sorted and
// disjoint after merging.
using EdgeIntervals = std::vector<std::vector<Interval>>;

// A concrete cover of the graph by n closed eps-balls, with each ball
// represented exactly as per-edge interval lists.
struct BallCoverRealization {
  const MetricGraph* graph = nullptr;
  double eps = 0.0;
  std::vector<GraphPoint> centers;
  std::vector<EdgeIntervals> per_ball;
};

struct NerveComplex {
  Subcomplex complex;
  bool is_rips_valid = false;      // eps < girth / 6
  bool is_good_guaranteed = false; // eps < girth / 4
};

struct GoodCoverDiagnosis {
  bool ok = false;
  std::string reason;  // empty when ok
};

// Absolute comparison tolerance used for interval endpoints, scaled by the
// total edge length of the graph.
double interval_tolerance(const MetricGraph& g);

// Exact trace of the closed eps-ball around `center` on every edge: entry
// through either endpoint plus the direct stretch on the center's own edge.
EdgeIntervals ball_intervals(const MetricGraph& g, const GraphPoint& center,
                             double eps);

// Shortest-path distance from a point to a vertex.
double point_to_vertex_distance(const MetricGraph& g, const GraphPoint& p,
                                int vertex_id);

BallCoverRealization make_realization(const MetricGraph& g, double eps,
                                      std::vector<GraphPoint> centers);

// Uniform point with respect to arc length; used for ball centers.
GraphPoint sample_uniform_point(const MetricGraph& g, counter_rng& rng);
BallCoverRealization sample_realization(const MetricGraph& g, int n,
                                        double eps, counter_rng& rng);

// Exact nerve: a face for every index set whose balls share a point.
// Candidate faces are tested only once all their codimension-1 subfaces are
// present (sound: nerves are downward-closed). Requires 1 <= n <= 6. When
// eps < girth/6 the result is cross-checked against the Rips complex.
NerveComplex build_nerve(const BallCoverRealization& r);

// Vietoris-Rips: cliques of the pairwise-intersection graph, filled.
NerveComplex build_rips(const BallCoverRealization& r);

// w[i][k] = 1 iff ball i covers the k-th boundary vertex (in boundary()
// order). Empty table when the graph has no boundary.
std::vector<std::vector<int>> boundary_indicators(
    const BallCoverRealization& r);

// Number of boundary vertices covered by at least one ball.
int covered_boundary_count(const BallCoverRealization& r);

// ok iff eps < girth/4 and every ball covers at most one boundary vertex.
GoodCoverDiagnosis pair_good_cover_check(const BallCoverRealization& r);

// Whether the ball union covers every edge entirely.
bool covers_fully(const BallCoverRealization& r);

// Connected components of the uncovered set; 0 when covered fully.
int complement_components(const BallCoverRealization& r);

// Union of all balls, merged per edge.
EdgeIntervals union_intervals(const BallCoverRealization& r);

// Sorts and merges overlapping or abutting intervals in place.
void merge_intervals(std::vector<Interval>& intervals, double tol);

}  // namespace nervecover

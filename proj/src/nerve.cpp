#include "nervecover/nerve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "nervecover/errors.hpp"

namespace nervecover {

namespace {

// Closed intervals intersect when they overlap or touch within tolerance.
std::vector<Interval> intersect_lists(const std::vector<Interval>& xs,
                                      const std::vector<Interval>& ys,
                                      double tol) {
  std::vector<Interval> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xs.size() && j < ys.size()) {
    double lo = std::max(xs[i].a, ys[j].a);
    double hi = std::min(xs[i].b, ys[j].b);
    if (hi >= lo - tol) out.push_back({lo, std::max(hi, lo)});
    if (xs[i].b < ys[j].b) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

bool any_nonempty(const EdgeIntervals& intervals) {
  return std::any_of(intervals.begin(), intervals.end(),
                     [](const auto& list) { return !list.empty(); });
}

EdgeIntervals intersect_edgewise(const EdgeIntervals& xs,
                                 const EdgeIntervals& ys, double tol) {
  EdgeIntervals out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    out[k] = intersect_lists(xs[k], ys[k], tol);
  }
  return out;
}

void check_realization(const BallCoverRealization& r) {
  if (r.graph == nullptr) throw config_error("realization has no graph");
  if (r.eps < 0.0) throw config_error("ball radius must be nonnegative");
}

// Per-edge uncovered stretches, with flags telling whether the gap reaches
// the u or v endpoint of the edge.
struct Gap {
  int edge_position = 0;
  bool touches_u = false;
  bool touches_v = false;
};

std::vector<Gap> find_gaps(const BallCoverRealization& r,
                           const EdgeIntervals& covered) {
  const MetricGraph& g = *r.graph;
  double tol = interval_tolerance(g);
  std::vector<Gap> gaps;
  for (std::size_t k = 0; k < covered.size(); ++k) {
    double length = g.edges()[k].length;
    const auto& list = covered[k];
    if (list.empty()) {
      gaps.push_back({static_cast<int>(k), true, true});
      continue;
    }
    if (list.front().a > tol) gaps.push_back({static_cast<int>(k), true, false});
    for (std::size_t i = 0; i + 1 < list.size(); ++i) {
      if (list[i + 1].a > list[i].b + tol) {
        gaps.push_back({static_cast<int>(k), false, false});
      }
    }
    if (list.back().b < length - tol) {
      gaps.push_back({static_cast<int>(k), false, true});
    }
  }
  return gaps;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int size) : parent(size) {
    for (int i = 0; i < size; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

double interval_tolerance(const MetricGraph& g) {
  return 1e-12 * g.total_length();
}

void merge_intervals(std::vector<Interval>& intervals, double tol) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  std::vector<Interval> merged;
  for (const Interval& cur : intervals) {
    if (!merged.empty() && cur.a <= merged.back().b + tol) {
      merged.back().b = std::max(merged.back().b, cur.b);
    } else {
      merged.push_back(cur);
    }
  }
  intervals = std::move(merged);
}

double point_to_vertex_distance(const MetricGraph& g, const GraphPoint& p,
                                int vertex_id) {
  const GraphEdge& e = g.edge_by_id(p.edge);
  return std::min(p.offset + g.vertex_distance(e.u, vertex_id),
                  e.length - p.offset + g.vertex_distance(e.v, vertex_id));
}

EdgeIntervals ball_intervals(const MetricGraph& g, const GraphPoint& center,
                             double eps) {
  if (eps < 0.0) throw config_error("ball radius must be nonnegative");
  double tol = interval_tolerance(g);
  const auto& edges = g.edges();
  EdgeIntervals out(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const GraphEdge& e = edges[k];
    std::vector<Interval>& list = out[k];
    // Any geodesic into an edge interior passes through an endpoint, except
    // the stretch of the center's own edge reachable without leaving it.
    double from_u = eps - point_to_vertex_distance(g, center, e.u);
    if (from_u >= 0.0) list.push_back({0.0, std::min(from_u, e.length)});
    double from_v = eps - point_to_vertex_distance(g, center, e.v);
    if (from_v >= 0.0) {
      list.push_back({std::max(0.0, e.length - from_v), e.length});
    }
    if (e.id == center.edge) {
      list.push_back({std::max(0.0, center.offset - eps),
                      std::min(e.length, center.offset + eps)});
    }
    merge_intervals(list, tol);
  }
  return out;
}

BallCoverRealization make_realization(const MetricGraph& g, double eps,
                                      std::vector<GraphPoint> centers) {
  BallCoverRealization r;
  r.graph = &g;
  r.eps = eps;
  r.centers = std::move(centers);
  r.per_ball.reserve(r.centers.size());
  for (const GraphPoint& c : r.centers) {
    r.per_ball.push_back(ball_intervals(g, c, eps));
  }
  return r;
}

GraphPoint sample_uniform_point(const MetricGraph& g, counter_rng& rng) {
  const auto& edges = g.edges();
  if (edges.empty()) throw config_error("cannot sample a point: no edges");
  double t = rng.next_double() * g.total_length();
  for (const GraphEdge& e : edges) {
    if (t <= e.length || &e == &edges.back()) {
      return {e.id, std::clamp(t, 0.0, e.length)};
    }
    t -= e.length;
  }
  return {edges.back().id, edges.back().length};  // unreachable
}

BallCoverRealization sample_realization(const MetricGraph& g, int n,
                                        double eps, counter_rng& rng) {
  std::vector<GraphPoint> centers;
  centers.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) centers.push_back(sample_uniform_point(g, rng));
  return make_realization(g, eps, std::move(centers));
}

NerveComplex build_rips(const BallCoverRealization& r) {
  check_realization(r);
  int n = static_cast<int>(r.centers.size());
  if (n < 1 || n > Subcomplex::max_vertices) {
    throw config_error("Rips construction supports 1 to 6 balls, got " +
                       std::to_string(n));
  }
  const MetricGraph& g = *r.graph;
  double tol = interval_tolerance(g);
  // pairwise-intersection graph: closed balls touch iff centers are within 2 eps
  std::uint32_t adjacent[Subcomplex::max_vertices] = {};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = intrinsic_distance(g, r.centers[i], r.centers[j]);
      if (d <= 2.0 * r.eps + tol) {
        adjacent[i] |= 1u << j;
        adjacent[j] |= 1u << i;
      }
    }
  }
  std::uint64_t bits = 0;
  for (FaceMask m = 1; m < (1u << n); ++m) {
    bool clique = true;
    for (int i = 0; i < n && clique; ++i) {
      if ((m >> i) & 1u) {
        std::uint32_t others = m & ~(1u << i);
        clique = (others & ~adjacent[i]) == 0;
      }
    }
    if (clique) bits |= std::uint64_t{1} << (m - 1);
  }
  double girth = shortest_cycle_length(g);
  NerveComplex out;
  out.complex = Subcomplex::from_bits_unchecked(n, bits);
  out.is_rips_valid = r.eps < girth / 6.0;
  out.is_good_guaranteed = r.eps < girth / 4.0;
  return out;
}

NerveComplex build_nerve(const BallCoverRealization& r) {
  check_realization(r);
  int n = static_cast<int>(r.centers.size());
  if (n < 1 || n > Subcomplex::max_vertices) {
    throw config_error("nerve construction supports 1 to 6 balls, got " +
                       std::to_string(n));
  }
  const MetricGraph& g = *r.graph;
  double tol = interval_tolerance(g);

  std::uint64_t bits = 0;
  auto present = [&](FaceMask m) {
    return (bits >> (m - 1)) & std::uint64_t{1};
  };
  // Every ball contains its own center.
  for (int i = 0; i < n; ++i) bits |= std::uint64_t{1} << ((1u << i) - 1);

  // Grow by cardinality; a set can only intersect if every facet does.
  for (int card = 2; card <= n; ++card) {
    for (FaceMask m = 1; m < (1u << n); ++m) {
      if (std::popcount(m) != card) continue;
      bool facets_present = true;
      for (int i = 0; i < n && facets_present; ++i) {
        if ((m >> i) & 1u) facets_present = present(m & ~(1u << i));
      }
      if (!facets_present) continue;
      EdgeIntervals common;
      bool first = true;
      for (int i = 0; i < n; ++i) {
        if (!((m >> i) & 1u)) continue;
        if (first) {
          common = r.per_ball[i];
          first = false;
        } else {
          common = intersect_edgewise(common, r.per_ball[i], tol);
        }
      }
      if (any_nonempty(common)) bits |= std::uint64_t{1} << (m - 1);
    }
  }

  double girth = shortest_cycle_length(g);
  NerveComplex out;
  out.complex = Subcomplex::from_bits_unchecked(n, bits);
  out.is_rips_valid = r.eps < girth / 6.0;
  out.is_good_guaranteed = r.eps < girth / 4.0;
  if (out.is_rips_valid) {
    NerveComplex rips = build_rips(r);
    if (!(rips.complex == out.complex)) {
      throw consistency_error(
          "nerve and Rips complexes disagree below the girth/6 threshold");
    }
  }
  return out;
}

std::vector<std::vector<int>> boundary_indicators(
    const BallCoverRealization& r) {
  check_realization(r);
  const MetricGraph& g = *r.graph;
  const auto& boundary = g.boundary();
  std::vector<std::vector<int>> w(r.centers.size(),
                                  std::vector<int>(boundary.size(), 0));
  for (std::size_t i = 0; i < r.centers.size(); ++i) {
    for (std::size_t k = 0; k < boundary.size(); ++k) {
      double d = point_to_vertex_distance(g, r.centers[i], boundary[k]);
      if (d <= r.eps) w[i][k] = 1;
    }
  }
  return w;
}

int covered_boundary_count(const BallCoverRealization& r) {
  auto w = boundary_indicators(r);
  if (w.empty()) return 0;
  int covered = 0;
  for (std::size_t k = 0; k < w.front().size(); ++k) {
    for (const auto& row : w) {
      if (row[k]) {
        ++covered;
        break;
      }
    }
  }
  return covered;
}

GoodCoverDiagnosis pair_good_cover_check(const BallCoverRealization& r) {
  check_realization(r);
  double girth = shortest_cycle_length(*r.graph);
  if (!(r.eps < girth / 4.0)) {
    return {false, "radius " + std::to_string(r.eps) +
                       " is not below a quarter of the shortest cycle " +
                       std::to_string(girth)};
  }
  auto w = boundary_indicators(r);
  for (std::size_t i = 0; i < w.size(); ++i) {
    int hits = 0;
    for (int bit : w[i]) hits += bit;
    if (hits > 1) {
      return {false, "ball " + std::to_string(i) + " covers " +
                         std::to_string(hits) + " boundary points"};
    }
  }
  return {true, ""};
}

EdgeIntervals union_intervals(const BallCoverRealization& r) {
  check_realization(r);
  const MetricGraph& g = *r.graph;
  double tol = interval_tolerance(g);
  EdgeIntervals merged(g.edges().size());
  for (const EdgeIntervals& ball : r.per_ball) {
    for (std::size_t k = 0; k < ball.size(); ++k) {
      merged[k].insert(merged[k].end(), ball[k].begin(), ball[k].end());
    }
  }
  for (auto& list : merged) merge_intervals(list, tol);
  return merged;
}

bool covers_fully(const BallCoverRealization& r) {
  check_realization(r);
  const MetricGraph& g = *r.graph;
  if (g.edge_count() == 0) return false;  // a bare point cannot host a ball
  double tol = interval_tolerance(g);
  EdgeIntervals merged = union_intervals(r);
  for (std::size_t k = 0; k < merged.size(); ++k) {
    const auto& list = merged[k];
    if (list.size() != 1) return false;
    if (list.front().a > tol || list.front().b < g.edges()[k].length - tol) {
      return false;
    }
  }
  return true;
}

int complement_components(const BallCoverRealization& r) {
  check_realization(r);
  const MetricGraph& g = *r.graph;
  if (g.edge_count() == 0) return 1;
  EdgeIntervals merged = union_intervals(r);
  std::vector<Gap> gaps = find_gaps(r, merged);
  if (gaps.empty()) return 0;

  // Gaps join across a shared (necessarily uncovered) vertex.
  int gap_count = static_cast<int>(gaps.size());
  UnionFind uf(gap_count + g.vertex_count());
  const auto& ids = g.vertex_ids();
  auto vertex_node = [&](int id) {
    int pos = static_cast<int>(
        std::find(ids.begin(), ids.end(), id) - ids.begin());
    return gap_count + pos;
  };
  for (int gi = 0; gi < gap_count; ++gi) {
    const GraphEdge& e = g.edges()[gaps[gi].edge_position];
    if (gaps[gi].touches_u) uf.unite(gi, vertex_node(e.u));
    if (gaps[gi].touches_v) uf.unite(gi, vertex_node(e.v));
  }
  std::vector<int> roots;
  for (int gi = 0; gi < gap_count; ++gi) roots.push_back(uf.find(gi));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return static_cast<int>(roots.size());
}

}  // namespace nervecover

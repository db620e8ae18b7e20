#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nervecover {

struct GraphEdge {
  int id = 0;
  int u = 0;
  int v = 0;
  double length = 0.0;
};

// A point on the graph: an edge and an arc-length offset from endpoint u,
// in [0, edge length].
struct GraphPoint {
  int edge = 0;
  double offset = 0.0;
};

// A compact connected metric graph (1-complex) with positive edge lengths.
// Self-loops and parallel edges are permitted. The boundary is the set of
// leaf vertices unless overridden. Immutable after construction; the
// vertex-pair distance table is built eagerly so queries are read-only.
class MetricGraph {
 public:
  static MetricGraph from_data(
      const std::vector<int>& vertex_ids, const std::vector<GraphEdge>& edges,
      const std::optional<std::vector<int>>& boundary_override = std::nullopt);

  // Line-oriented text: `vertex <id>` and `edge <id> <u> <v> <length>`,
  // '#' starts a comment. Malformed lines raise io_error with the line
  // number; semantic violations raise config_error.
  static MetricGraph parse_text(
      std::string_view content, const std::string& source_name,
      const std::optional<std::vector<int>>& boundary_override = std::nullopt);
  static MetricGraph parse_file(
      const std::string& path,
      const std::optional<std::vector<int>>& boundary_override = std::nullopt);

  const std::vector<int>& vertex_ids() const { return vertex_ids_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<int>& boundary() const { return boundary_; }
  double total_length() const { return total_length_; }

  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int degree(int vertex_id) const;

  const GraphEdge& edge_by_id(int id) const;
  bool has_vertex(int id) const;

  // Shortest path length between two vertices (by id).
  double vertex_distance(int u, int v) const;

  bool is_boundary_vertex(int id) const;

 private:
  MetricGraph() = default;
  int dense_index(int vertex_id) const;

  std::vector<int> vertex_ids_;
  std::vector<GraphEdge> edges_;
  std::vector<int> boundary_;
  double total_length_ = 0.0;
  std::vector<std::pair<int, int>> vertex_index_;  // sorted (id, dense)
  std::vector<std::pair<int, int>> edge_index_;    // sorted (id, position)
  std::vector<std::vector<double>> dist_;          // dense all-pairs table
};

// Named test fixtures: "circle" (one loop of circumference 1), "interval"
// (unit segment), "theta" (two vertices joined by arcs 1, 1, 2), "ygraph"
// (three unit legs), "figure8" (two unit loops at one vertex).
MetricGraph builtin_graph(std::string_view name);
bool is_builtin_graph(std::string_view name);

// Exact shortest-path distance between two points: through any combination
// of the four incident endpoints, or directly along a shared edge.
double intrinsic_distance(const MetricGraph& g, const GraphPoint& p,
                          const GraphPoint& q);

// Metric girth of the quotient X / boundary (all boundary vertices
// identified); +infinity when the quotient has no cycle.
double shortest_cycle_length(const MetricGraph& g);

int euler_char_graph(const MetricGraph& g);   // |V| - |E|
int chi_rel_graph(const MetricGraph& g);      // chi(X) - #boundary

// Endpoint offsets are remapped to the smallest incident edge id so that
// point equality is well-defined.
GraphPoint canonical_point(const MetricGraph& g, const GraphPoint& p);

}  // namespace nervecover

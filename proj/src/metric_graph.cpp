#include "nervecover/metric_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

#include "nervecover/errors.hpp"

namespace nervecover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Arc {
  int to = 0;
  double weight = 0.0;
  int instance = 0;  // position of the originating edge, for exclusion
};

using Adjacency = std::vector<std::vector<Arc>>;

// Single-source Dijkstra; `skip_instance` removes one edge instance (both
// directions), used by the girth computation. -1 skips nothing.
std::vector<double> dijkstra(const Adjacency& adj, int source,
                             int skip_instance = -1) {
  std::vector<double> dist(adj.size(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, at] = queue.top();
    queue.pop();
    if (d > dist[at]) continue;
    for (const Arc& arc : adj[at]) {
      if (arc.instance == skip_instance) continue;
      double next = d + arc.weight;
      if (next < dist[arc.to]) {
        dist[arc.to] = next;
        queue.emplace(next, arc.to);
      }
    }
  }
  return dist;
}

int lookup(const std::vector<std::pair<int, int>>& index, int id,
           const char* what) {
  auto it = std::lower_bound(
      index.begin(), index.end(), std::make_pair(id, 0),
      [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it == index.end() || it->first != id) {
    throw config_error(std::string("unknown ") + what + " id " +
                       std::to_string(id));
  }
  return it->second;
}

}  // namespace

MetricGraph MetricGraph::from_data(
    const std::vector<int>& vertex_ids, const std::vector<GraphEdge>& edges,
    const std::optional<std::vector<int>>& boundary_override) {
  if (vertex_ids.empty()) {
    throw config_error("graph must have at least one vertex");
  }
  MetricGraph g;
  g.vertex_ids_ = vertex_ids;
  g.edges_ = edges;

  for (std::size_t i = 0; i < vertex_ids.size(); ++i) {
    g.vertex_index_.emplace_back(vertex_ids[i], static_cast<int>(i));
  }
  std::sort(g.vertex_index_.begin(), g.vertex_index_.end());
  for (std::size_t i = 1; i < g.vertex_index_.size(); ++i) {
    if (g.vertex_index_[i].first == g.vertex_index_[i - 1].first) {
      throw config_error("duplicate vertex id " +
                         std::to_string(g.vertex_index_[i].first));
    }
  }

  for (std::size_t i = 0; i < edges.size(); ++i) {
    g.edge_index_.emplace_back(edges[i].id, static_cast<int>(i));
  }
  std::sort(g.edge_index_.begin(), g.edge_index_.end());
  for (std::size_t i = 1; i < g.edge_index_.size(); ++i) {
    if (g.edge_index_[i].first == g.edge_index_[i - 1].first) {
      throw config_error("duplicate edge id " +
                         std::to_string(g.edge_index_[i].first));
    }
  }

  Adjacency adj(vertex_ids.size());
  std::vector<int> degree(vertex_ids.size(), 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const GraphEdge& e = edges[i];
    if (!std::isfinite(e.length) || e.length <= 0.0) {
      throw config_error("edge " + std::to_string(e.id) +
                         " must have a finite positive length");
    }
    int du = lookup(g.vertex_index_, e.u, "vertex");
    int dv = lookup(g.vertex_index_, e.v, "vertex");
    adj[du].push_back({dv, e.length, static_cast<int>(i)});
    adj[dv].push_back({du, e.length, static_cast<int>(i)});
    degree[du] += 1;
    degree[dv] += 1;
    g.total_length_ += e.length;
  }

  g.dist_.resize(vertex_ids.size());
  for (std::size_t i = 0; i < vertex_ids.size(); ++i) {
    g.dist_[i] = dijkstra(adj, static_cast<int>(i));
    if (std::any_of(g.dist_[i].begin(), g.dist_[i].end(),
                    [](double d) { return d == kInf; })) {
      throw config_error("graph is not connected");
    }
  }

  if (boundary_override.has_value()) {
    std::vector<int> b = *boundary_override;
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
      throw config_error("boundary override lists a vertex twice");
    }
    for (int id : b) {
      int dense = lookup(g.vertex_index_, id, "vertex");
      if (degree[dense] != 1) {
        throw config_error("boundary override vertex " + std::to_string(id) +
                           " does not have degree 1");
      }
    }
    g.boundary_ = std::move(b);
  } else {
    for (const auto& [id, dense] : g.vertex_index_) {
      if (degree[dense] == 1) g.boundary_.push_back(id);
    }
  }
  return g;
}

MetricGraph MetricGraph::parse_text(
    std::string_view content, const std::string& source_name,
    const std::optional<std::vector<int>>& boundary_override) {
  std::vector<int> vertex_ids;
  std::vector<GraphEdge> edges;
  std::istringstream stream{std::string(content)};
  std::string line;
  int line_number = 0;
  auto fail = [&](const std::string& message) {
    throw io_error(source_name + ":" + std::to_string(line_number) + ": " +
                   message);
  };
  while (std::getline(stream, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::string keyword;
    if (!(tokens >> keyword)) continue;
    if (keyword == "vertex") {
      int id;
      if (!(tokens >> id)) fail("expected `vertex <id>`");
      std::string extra;
      if (tokens >> extra) fail("unexpected token after vertex id");
      vertex_ids.push_back(id);
    } else if (keyword == "edge") {
      GraphEdge e;
      if (!(tokens >> e.id >> e.u >> e.v >> e.length)) {
        fail("expected `edge <id> <u> <v> <length>`");
      }
      std::string extra;
      if (tokens >> extra) fail("unexpected token after edge length");
      edges.push_back(e);
    } else {
      fail("unknown directive `" + keyword + "`");
    }
  }
  return from_data(vertex_ids, edges, boundary_override);
}

MetricGraph MetricGraph::parse_file(
    const std::string& path,
    const std::optional<std::vector<int>>& boundary_override) {
  std::ifstream file(path);
  if (!file) throw io_error("cannot open graph file " + path);
  std::ostringstream content;
  content << file.rdbuf();
  return parse_text(content.str(), path, boundary_override);
}

int MetricGraph::dense_index(int vertex_id) const {
  return lookup(vertex_index_, vertex_id, "vertex");
}

int MetricGraph::degree(int vertex_id) const {
  dense_index(vertex_id);  // validate the id
  int total = 0;
  for (const GraphEdge& e : edges_) {
    if (e.u == vertex_id) ++total;
    if (e.v == vertex_id) ++total;
  }
  return total;
}

const GraphEdge& MetricGraph::edge_by_id(int id) const {
  return edges_[lookup(edge_index_, id, "edge")];
}

bool MetricGraph::has_vertex(int id) const {
  auto it = std::lower_bound(
      vertex_index_.begin(), vertex_index_.end(), std::make_pair(id, 0),
      [](const auto& a, const auto& b) { return a.first < b.first; });
  return it != vertex_index_.end() && it->first == id;
}

double MetricGraph::vertex_distance(int u, int v) const {
  return dist_[dense_index(u)][dense_index(v)];
}

bool MetricGraph::is_boundary_vertex(int id) const {
  return std::binary_search(boundary_.begin(), boundary_.end(), id);
}

MetricGraph builtin_graph(std::string_view name) {
  if (name == "circle") {
    return MetricGraph::from_data({0}, {{0, 0, 0, 1.0}});
  }
  if (name == "interval") {
    return MetricGraph::from_data({0, 1}, {{0, 0, 1, 1.0}});
  }
  if (name == "theta") {
    return MetricGraph::from_data(
        {0, 1}, {{0, 0, 1, 1.0}, {1, 0, 1, 1.0}, {2, 0, 1, 2.0}});
  }
  if (name == "ygraph") {
    return MetricGraph::from_data(
        {0, 1, 2, 3}, {{0, 0, 1, 1.0}, {1, 0, 2, 1.0}, {2, 0, 3, 1.0}});
  }
  if (name == "figure8") {
    return MetricGraph::from_data({0}, {{0, 0, 0, 1.0}, {1, 0, 0, 1.0}});
  }
  throw config_error("unknown built-in graph `" + std::string(name) + "`");
}

bool is_builtin_graph(std::string_view name) {
  return name == "circle" || name == "interval" || name == "theta" ||
         name == "ygraph" || name == "figure8";
}

double intrinsic_distance(const MetricGraph& g, const GraphPoint& p,
                          const GraphPoint& q) {
  const GraphEdge& ep = g.edge_by_id(p.edge);
  const GraphEdge& eq = g.edge_by_id(q.edge);
  if (p.offset < 0.0 || p.offset > ep.length || q.offset < 0.0 ||
      q.offset > eq.length) {
    throw config_error("point offset outside its edge");
  }
  double best = kInf;
  if (p.edge == q.edge) {
    best = std::abs(p.offset - q.offset);
  }
  // Route through any pair of endpoints; covers wrap-around on loops and
  // shortcuts through the rest of the graph on long shared edges.
  const double costs_p[2] = {p.offset, ep.length - p.offset};
  const int ends_p[2] = {ep.u, ep.v};
  const double costs_q[2] = {q.offset, eq.length - q.offset};
  const int ends_q[2] = {eq.u, eq.v};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      double candidate =
          costs_p[a] + g.vertex_distance(ends_p[a], ends_q[b]) + costs_q[b];
      best = std::min(best, candidate);
    }
  }
  return best;
}

double shortest_cycle_length(const MetricGraph& g) {
  // Work in the quotient X / boundary: all boundary vertices collapse to a
  // single node, so a path between two boundary points closes into a cycle.
  const auto& ids = g.vertex_ids();
  int merged = -1;
  std::vector<int> dense_of(ids.size());
  int next = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (g.is_boundary_vertex(ids[i])) {
      if (merged < 0) merged = next++;
      dense_of[i] = merged;
    } else {
      dense_of[i] = next++;
    }
  }
  std::vector<std::pair<int, int>> id_to_slot;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    id_to_slot.emplace_back(ids[i], dense_of[i]);
  }
  std::sort(id_to_slot.begin(), id_to_slot.end());
  auto slot = [&](int id) { return lookup(id_to_slot, id, "vertex"); };

  Adjacency adj(next);
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    int a = slot(edges[i].u);
    int b = slot(edges[i].v);
    adj[a].push_back({b, edges[i].length, static_cast<int>(i)});
    adj[b].push_back({a, edges[i].length, static_cast<int>(i)});
  }

  double best = kInf;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    int a = slot(edges[i].u);
    int b = slot(edges[i].v);
    double detour = dijkstra(adj, a, static_cast<int>(i))[b];
    if (detour < kInf) best = std::min(best, detour + edges[i].length);
  }
  return best;
}

int euler_char_graph(const MetricGraph& g) {
  return g.vertex_count() - g.edge_count();
}

int chi_rel_graph(const MetricGraph& g) {
  return euler_char_graph(g) - static_cast<int>(g.boundary().size());
}

GraphPoint canonical_point(const MetricGraph& g, const GraphPoint& p) {
  const GraphEdge& e = g.edge_by_id(p.edge);
  int vertex;
  if (p.offset == 0.0) {
    vertex = e.u;
  } else if (p.offset == e.length) {
    vertex = e.v;
  } else {
    return p;
  }
  int best_edge = p.edge;
  for (const GraphEdge& other : g.edges()) {
    if ((other.u == vertex || other.v == vertex) && other.id < best_edge) {
      best_edge = other.id;
    }
  }
  const GraphEdge& chosen = g.edge_by_id(best_edge);
  // On a loop both endpoints coincide; offset 0 is the designated form.
  double offset = (chosen.u == vertex) ? 0.0 : chosen.length;
  return {best_edge, offset};
}

}  // namespace nervecover

#include <algorithm>
#include <map>
#include <queue>
#include <string>

#include "freespec/graph.hpp"

namespace freespec::graph {

namespace {

std::string edge_text(const Edge& e) {
  return "(" + std::to_string(e.tail) + "," + std::to_string(e.head) + "," +
         std::to_string(e.label) + ")";
}

}  // namespace

LabeledDag::LabeledDag(std::size_t num_vertices, std::size_t num_labels, std::vector<Edge> edges)
    : num_labels_(num_labels), edges_(std::move(edges)), adjacency_(num_vertices) {
  if (num_vertices == 0) throw Error(ErrorCode::InvalidGraph, "graph needs at least one vertex");
  if (num_labels == 0) throw Error(ErrorCode::InvalidGraph, "graph needs at least one label");

  std::map<std::pair<Vertex, Vertex>, std::size_t> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail >= num_vertices || e.head >= num_vertices) {
      throw GraphError(ErrorCode::InvalidGraph, "edge " + edge_text(e) + " has an unknown vertex",
                       {i});
    }
    if (e.label < 1 || static_cast<std::size_t>(e.label) > num_labels) {
      throw GraphError(ErrorCode::InvalidGraph, "edge " + edge_text(e) + " has label outside 1.." +
                                                    std::to_string(num_labels),
                       {i});
    }
    if (e.tail == e.head) {
      throw GraphError(ErrorCode::SelfLoop, "self loop at vertex " + std::to_string(e.tail), {i});
    }
    if (auto it = seen.find({e.tail, e.head}); it != seen.end()) {
      throw GraphError(ErrorCode::LabelCollision,
                       "edges " + edge_text(edges_[it->second]) + " and " + edge_text(e) +
                           " share the pair (" + std::to_string(e.tail) + "," +
                           std::to_string(e.head) + ")",
                       {it->second, i});
    }
    if (auto it = seen.find({e.head, e.tail}); it != seen.end()) {
      throw GraphError(ErrorCode::AntiparallelPair,
                       "edges " + edge_text(edges_[it->second]) + " and " + edge_text(e) +
                           " are antiparallel",
                       {it->second, i});
    }
    seen.emplace(std::pair{e.tail, e.head}, i);
    adjacency_[e.tail].push_back({e.head, i, true});
    adjacency_[e.head].push_back({e.tail, i, false});
  }
}

std::optional<std::size_t> LabeledDag::edge_between(Vertex v, Vertex w) const {
  for (const Incidence& inc : adjacency_.at(v)) {
    if (inc.neighbor == w) return inc.edge;
  }
  return std::nullopt;
}

std::size_t LabeledDag::out_degree(Vertex v) const {
  const auto& a = adjacency_.at(v);
  return static_cast<std::size_t>(
      std::count_if(a.begin(), a.end(), [](const Incidence& i) { return i.forward; }));
}

std::size_t LabeledDag::in_degree(Vertex v) const {
  return adjacency_.at(v).size() - out_degree(v);
}

LabeledDag remove_vertex(const LabeledDag& g, Vertex u) {
  if (u >= g.num_vertices()) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
  if (g.num_vertices() == 1) throw Error(ErrorCode::InvalidGraph, "cannot remove the last vertex");
  auto shift = [u](Vertex v) { return v > u ? v - 1 : v; };
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (e.tail == u || e.head == u) continue;
    kept.push_back({shift(e.tail), shift(e.head), e.label});
  }
  return LabeledDag(g.num_vertices() - 1, g.num_labels(), std::move(kept));
}

std::vector<std::vector<Vertex>> components(const LabeledDag& g) {
  const std::size_t m = g.num_vertices();
  std::vector<bool> seen(m, false);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < m; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp;
    std::queue<Vertex> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      comp.push_back(v);
      for (const auto& inc : g.incident(v)) {
        if (!seen[inc.neighbor]) {
          seen[inc.neighbor] = true;
          q.push(inc.neighbor);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const LabeledDag& g) { return components(g).size() == 1; }

std::variant<TopologicalOrder, DirectedCycle> check_dag(const LabeledDag& g) {
  const std::size_t m = g.num_vertices();
  std::vector<std::size_t> indeg(m);
  for (Vertex v = 0; v < m; ++v) indeg[v] = g.in_degree(v);

  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < m; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  std::vector<Vertex> order;
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (const auto& inc : g.incident(v)) {
      if (inc.forward && --indeg[inc.neighbor] == 0) ready.push(inc.neighbor);
    }
  }
  if (order.size() == m) return TopologicalOrder{std::move(order)};

  // Every leftover vertex still has a leftover predecessor, so walking
  // backwards must revisit a vertex.
  Vertex start = 0;
  while (indeg[start] == 0) ++start;
  std::vector<std::size_t> pos(m, SIZE_MAX);
  std::vector<Vertex> back;
  Vertex v = start;
  while (pos[v] == SIZE_MAX) {
    pos[v] = back.size();
    back.push_back(v);
    for (const auto& inc : g.incident(v)) {
      if (!inc.forward && indeg[inc.neighbor] > 0) {
        v = inc.neighbor;
        break;
      }
    }
  }
  std::vector<Vertex> cyc(back.begin() + static_cast<std::ptrdiff_t>(pos[v]), back.end());
  std::reverse(cyc.begin(), cyc.end());
  auto mn = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), mn, cyc.end());
  cyc.push_back(cyc.front());
  return DirectedCycle{std::move(cyc)};
}

}  // namespace freespec::graph

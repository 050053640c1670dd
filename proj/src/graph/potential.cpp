#include <algorithm>
#include <queue>

#include "freespec/graph.hpp"

namespace freespec::graph {

namespace {

IntVector unit_vector(std::size_t g, int label) {
  IntVector e(g, 0);
  e[static_cast<std::size_t>(label - 1)] = 1;
  return e;
}

std::vector<Vertex> path_to_root(Vertex v, const std::vector<Vertex>& parent) {
  std::vector<Vertex> path{v};
  while (parent[v] != v) {
    v = parent[v];
    path.push_back(v);
  }
  return path;
}

// Closed walk tail -> head along the edge, then back to tail through the tree.
std::vector<Vertex> fundamental_cycle(const Edge& e, const std::vector<Vertex>& parent) {
  std::vector<Vertex> up_tail = path_to_root(e.tail, parent);
  std::vector<Vertex> up_head = path_to_root(e.head, parent);
  // Strip the shared suffix but keep the lowest common ancestor.
  while (up_tail.size() >= 2 && up_head.size() >= 2 &&
         up_tail[up_tail.size() - 2] == up_head[up_head.size() - 2]) {
    up_tail.pop_back();
    up_head.pop_back();
  }
  std::vector<Vertex> walk{e.tail};
  walk.insert(walk.end(), up_head.begin(), up_head.end());  // head ... lca
  for (auto it = up_tail.rbegin() + 1; it != up_tail.rend(); ++it) walk.push_back(*it);
  return walk;
}

}  // namespace

IntVector cycle_net_vector(const LabeledDag& g, const std::vector<Vertex>& walk) {
  if (walk.empty() || walk.front() != walk.back()) {
    throw Error(ErrorCode::NotAWalk, "walk must be closed (first vertex repeated last)");
  }
  IntVector net(g.num_labels(), 0);
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    Vertex v = walk[i];
    Vertex w = walk[i + 1];
    if (v >= g.num_vertices() || w >= g.num_vertices()) {
      throw Error(ErrorCode::NotAWalk, "walk visits an unknown vertex");
    }
    auto idx = g.edge_between(v, w);
    if (!idx) {
      throw Error(ErrorCode::NotAWalk,
                  "no edge between " + std::to_string(v) + " and " + std::to_string(w));
    }
    const Edge& e = g.edges()[*idx];
    net[static_cast<std::size_t>(e.label - 1)] += (e.tail == v) ? 1 : -1;
  }
  return net;
}

std::vector<Vertex> canonical_cycle(std::vector<Vertex> closed_walk) {
  if (closed_walk.size() < 2) return closed_walk;
  closed_walk.pop_back();
  std::rotate(closed_walk.begin(), std::min_element(closed_walk.begin(), closed_walk.end()),
              closed_walk.end());
  if (closed_walk.size() >= 3 && closed_walk[1] > closed_walk.back()) {
    std::reverse(closed_walk.begin() + 1, closed_walk.end());
  }
  closed_walk.push_back(closed_walk.front());
  return closed_walk;
}

std::variant<Potential, CycleWitness> compute_potential(const LabeledDag& g) {
  const std::size_t m = g.num_vertices();
  const std::size_t ng = g.num_labels();
  std::vector<IntVector> p(m, IntVector(ng, 0));
  std::vector<Vertex> parent(m);
  std::vector<bool> seen(m, false);

  for (const auto& comp : components(g)) {
    Vertex root = comp.front();
    for (Vertex v : comp) {
      if (g.out_degree(v) == 0) {
        root = v;
        break;
      }
    }
    std::queue<Vertex> q;
    q.push(root);
    seen[root] = true;
    parent[root] = root;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (const auto& inc : g.incident(v)) {
        if (seen[inc.neighbor]) continue;
        seen[inc.neighbor] = true;
        parent[inc.neighbor] = v;
        const int label = g.edges()[inc.edge].label;
        IntVector next = p[v];
        next[static_cast<std::size_t>(label - 1)] += inc.forward ? -1 : 1;
        p[inc.neighbor] = std::move(next);
        q.push(inc.neighbor);
      }
    }
  }

  for (const Edge& e : g.edges()) {
    IntVector diff(ng);
    for (std::size_t s = 0; s < ng; ++s) diff[s] = p[e.tail][s] - p[e.head][s];
    if (diff != unit_vector(ng, e.label)) {
      CycleWitness w;
      w.vertices = canonical_cycle(fundamental_cycle(e, parent));
      w.net = cycle_net_vector(g, w.vertices);
      return w;
    }
  }
  return Potential{std::move(p)};
}

bool satisfies_potential(const LabeledDag& g, const Potential& pot) {
  if (pot.p.size() != g.num_vertices()) return false;
  for (const auto& v : pot.p) {
    if (v.size() != g.num_labels()) return false;
  }
  for (const Edge& e : g.edges()) {
    for (std::size_t s = 0; s < g.num_labels(); ++s) {
      std::int64_t want = (static_cast<std::size_t>(e.label - 1) == s) ? 1 : 0;
      if (pot.p[e.tail][s] - pot.p[e.head][s] != want) return false;
    }
  }
  return true;
}

ReinhardtDecision is_reinhardt_partition(const LabeledDag& g) {
  ReinhardtDecision out;
  auto dag = check_dag(g);
  if (auto* cyc = std::get_if<DirectedCycle>(&dag)) {
    out.directed_cycle = true;
    out.witness = CycleWitness{cyc->vertices, cycle_net_vector(g, cyc->vertices)};
    return out;
  }
  auto pot = compute_potential(g);
  if (auto* w = std::get_if<CycleWitness>(&pot)) {
    out.witness = *w;
    return out;
  }
  out.yes = true;
  out.order = std::get<TopologicalOrder>(dag).order;
  out.potential = std::get<Potential>(std::move(pot));
  return out;
}

}  // namespace freespec::graph

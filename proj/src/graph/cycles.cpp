#include <algorithm>

#include "freespec/graph.hpp"

namespace freespec::graph {

namespace {

constexpr std::size_t kMaxCycleLength = 12;

struct Search {
  const LabeledDag& g;
  std::size_t max_len;
  Vertex start = 0;
  std::vector<Vertex> path;
  std::vector<bool> on_path;
  std::vector<std::vector<Vertex>> found;

  void extend(Vertex v) {
    for (const auto& inc : g.incident(v)) {
      Vertex w = inc.neighbor;
      if (w == start && path.size() >= 3 && path[1] < path.back()) {
        auto closed = path;
        closed.push_back(start);
        found.push_back(std::move(closed));
        continue;
      }
      if (w <= start || on_path[w] || path.size() >= max_len) continue;
      on_path[w] = true;
      path.push_back(w);
      extend(w);
      path.pop_back();
      on_path[w] = false;
    }
  }
};

}  // namespace

std::vector<CycleWitness> enumerate_cycles(const LabeledDag& g, std::size_t max_len) {
  if (max_len > kMaxCycleLength) {
    throw Error(ErrorCode::LimitExceeded,
                "max_len " + std::to_string(max_len) + " exceeds " +
                    std::to_string(kMaxCycleLength));
  }
  Search s{g, max_len, 0, {}, std::vector<bool>(g.num_vertices(), false), {}};
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    s.start = v;
    s.path = {v};
    s.on_path[v] = true;
    s.extend(v);
    s.on_path[v] = false;
  }
  std::sort(s.found.begin(), s.found.end());
  std::vector<CycleWitness> out;
  out.reserve(s.found.size());
  for (auto& c : s.found) {
    IntVector net = cycle_net_vector(g, c);
    out.push_back({std::move(c), std::move(net)});
  }
  return out;
}

}  // namespace freespec::graph

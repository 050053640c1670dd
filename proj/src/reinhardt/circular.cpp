#include "freespec/reinhardt.hpp"

namespace freespec::reinhardt {

CircularReport check_circular_path_form(const graph::LabeledDag& g) {
  CircularReport r;
  r.acyclic = std::holds_alternative<graph::TopologicalOrder>(graph::check_dag(g));
  for (graph::Vertex v = 0; v < g.num_vertices(); ++v) {
    const std::size_t out = g.out_degree(v);
    const std::size_t in = g.in_degree(v);
    if (out > 1) r.out_degree_violations.push_back(v);
    if (in > 1) r.in_degree_violations.push_back(v);
    if (out + in == 0) r.isolated.push_back(v);
  }
  r.ok = r.acyclic && r.out_degree_violations.empty() && r.in_degree_violations.empty() &&
         r.isolated.empty();
  return r;
}

StructureReport structure_report(const graph::LabeledDag& g) {
  StructureReport r{g, false, false, false, false, {}, std::nullopt, {}};
  auto decision = graph::is_reinhardt_partition(g);
  r.is_dag = !decision.directed_cycle;
  r.is_reinhardt_partition = decision.yes;
  r.is_connected = graph::is_connected(g);
  r.circular = check_circular_path_form(g);
  r.is_circular_path_form = r.circular.ok;
  if (decision.yes) {
    r.order = decision.order;
  } else {
    r.cycle = decision.witness;
    if (r.is_dag) r.order = std::get<graph::TopologicalOrder>(graph::check_dag(g)).order;
  }
  return r;
}

}  // namespace freespec::reinhardt

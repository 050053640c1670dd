#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freespec/error.hpp"
#include "freespec/matrix.hpp"

namespace freespec::graph {

using Vertex = std::size_t;
using IntVector = std::vector<std::int64_t>;

/// Positive edge tail -> head carrying label in 1..g.
struct Edge {
  Vertex tail;
  Vertex head;
  int label;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Raised when an edge list violates the construction rules; `edges` holds
/// the indices of the offending edges.
class GraphError : public Error {
 public:
  GraphError(ErrorCode code, const std::string& what, std::vector<std::size_t> edges)
      : Error(code, what), edges_(std::move(edges)) {}
  const std::vector<std::size_t>& edges() const noexcept { return edges_; }

 private:
  std::vector<std::size_t> edges_;
};

/// Directed graph with 0-based vertices and labeled positive edges. Self
/// loops, repeated (tail, head) pairs and antiparallel pairs are rejected.
/// Directed cycles are allowed here; check_dag reports them.
class LabeledDag {
 public:
  struct Incidence {
    Vertex neighbor;
    std::size_t edge;
    bool forward;  // true when the edge runs from this vertex to neighbor
  };

  LabeledDag(std::size_t num_vertices, std::size_t num_labels, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  std::size_t num_labels() const noexcept { return num_labels_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Incident edges of v in both directions, in edge-list order.
  const std::vector<Incidence>& incident(Vertex v) const { return adjacency_.at(v); }
  std::optional<std::size_t> edge_between(Vertex v, Vertex w) const;

  std::size_t out_degree(Vertex v) const;
  std::size_t in_degree(Vertex v) const;

 private:
  std::size_t num_labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Graph with vertex u and its edges removed; vertices above u shift down.
LabeledDag remove_vertex(const LabeledDag& g, Vertex u);

/// Connected components of the underlying undirected graph, each sorted,
/// ordered by smallest vertex.
std::vector<std::vector<Vertex>> components(const LabeledDag& g);
bool is_connected(const LabeledDag& g);

struct TopologicalOrder {
  std::vector<Vertex> order;
};

/// Closed directed walk v0 -> v1 -> ... -> v0 (first vertex repeated last).
struct DirectedCycle {
  std::vector<Vertex> vertices;
};

/// Lexicographically smallest topological order, or a directed cycle.
std::variant<TopologicalOrder, DirectedCycle> check_dag(const LabeledDag& g);

/// p(v) - p(w) = e_s for every positive edge (v, w, s).
struct Potential {
  std::vector<IntVector> p;
};

/// Closed walk in the doubled graph with its signed label count.
struct CycleWitness {
  std::vector<Vertex> vertices;  // first vertex repeated at the end
  IntVector net;
};

/// Integer potential over a spanning forest, anchored at 0 on the smallest
/// sink of each component, or the canonical fundamental cycle whose net
/// vector is nonzero.
std::variant<Potential, CycleWitness> compute_potential(const LabeledDag& g);

bool satisfies_potential(const LabeledDag& g, const Potential& pot);

struct ReinhardtDecision {
  bool yes = false;
  std::vector<Vertex> order;           // set when yes
  std::optional<Potential> potential;  // set when yes
  std::optional<CycleWitness> witness; // set when no
  bool directed_cycle = false;         // the witness is a directed cycle of E+
};

ReinhardtDecision is_reinhardt_partition(const LabeledDag& g);

/// Sum over the steps of +e_s (edge followed forward) or -e_s (backward).
/// The walk must be closed (first == last); throws NotAWalk otherwise or when
/// a step has no edge.
IntVector cycle_net_vector(const LabeledDag& g, const std::vector<Vertex>& walk);

/// Rotation/reflection normal form of a simple closed walk: smallest vertex
/// first, then the direction whose second vertex is smaller.
std::vector<Vertex> canonical_cycle(std::vector<Vertex> closed_walk);

/// Point of the g-torus, angles in [0, 2 pi).
struct TorusPoint {
  std::vector<double> angles;

  static TorusPoint from_angles(std::vector<double> angles);
  std::vector<Complex> gammas() const;
};

/// theta_s = 2 pi frac(sqrt(p_s) u) with distinct primes p_s and a
/// seed-derived u in (1, 2). For g <= 6 candidates admitting a small
/// integer relation (|rho_s| <= 3) within 1e-6 are redrawn.
TorusPoint sample_independent_torus(std::size_t g, std::uint64_t seed);

/// Smallest |sum rho_s theta_s| mod 2 pi over nonzero rho with |rho_s| <= bound.
double smallest_relation_residual(const TorusPoint& gamma, int bound);

struct PhaseAssignment {
  std::vector<Complex> delta;
};

/// delta_v = exp(i <p(v), theta>).
PhaseAssignment phase_assignment(const Potential& pot, const TorusPoint& gamma);

/// max over positive edges (v, w, s) of |delta_v - gamma_s delta_w|.
double phase_residual(const LabeledDag& g, const PhaseAssignment& phases,
                      const TorusPoint& gamma);

/// All simple cycles of the doubled graph with at most max_len edges, one
/// per rotation/reflection class, in canonical form. max_len > 12 throws
/// LimitExceeded.
std::vector<CycleWitness> enumerate_cycles(const LabeledDag& g, std::size_t max_len);

}  // namespace freespec::graph

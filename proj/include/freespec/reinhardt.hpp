#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "freespec/graph.hpp"
#include "freespec/pencil.hpp"

namespace freespec::reinhardt {

/// Orthogonal splitting C^d = H_1 ⊕ ... ⊕ H_m by consecutive coordinates.
struct BlockDecomposition {
  std::vector<std::size_t> sizes;

  std::size_t total() const;
  /// Starting coordinate of each block.
  std::vector<std::size_t> offsets() const;
};

/// Throws DimensionMismatch unless sizes are positive and sum to d.
void validate_blocks(const BlockDecomposition& blocks, std::size_t d);

/// Block (row, col) of coefficient A_label, label 1-based.
struct BlockRef {
  std::size_t row;
  std::size_t col;
  int label;
  double norm;  // Frobenius norm of the block
};

/// Extraction failure naming the blocks that caused it.
class StructureError : public Error {
 public:
  StructureError(ErrorCode code, const std::string& what, std::vector<BlockRef> blocks)
      : Error(code, what), blocks_(std::move(blocks)) {}
  const std::vector<BlockRef>& blocks() const noexcept { return blocks_; }

 private:
  std::vector<BlockRef> blocks_;
};

struct Extraction {
  graph::LabeledDag graph;
  std::vector<double> zero_tol;      // threshold used per label
  std::vector<BlockRef> borderline;  // nonzero blocks within a factor 1e3 of the threshold
};

/// One vertex per block, an edge (j, k, s) whenever ||A_s(j, k)||_F exceeds
/// zero_tol. Without zero_tol the threshold is 1e-12 (1 + ||A_s||_F).
/// Throws StructureError with SelfLoop, LabelCollision, AntiparallelPair or
/// ZeroCoefficient.
Extraction extract_graph(const Pencil& p, const BlockDecomposition& blocks,
                         std::optional<double> zero_tol = std::nullopt);

struct CircularReport {
  bool ok = false;
  bool acyclic = false;
  std::vector<graph::Vertex> out_degree_violations;
  std::vector<graph::Vertex> in_degree_violations;
  std::vector<graph::Vertex> isolated;  // minimality violations
};

/// Disjoint union of directed paths with no isolated vertex.
CircularReport check_circular_path_form(const graph::LabeledDag& g);

struct StructureReport {
  graph::LabeledDag graph;
  bool is_dag = false;
  bool is_reinhardt_partition = false;
  bool is_connected = false;
  bool is_circular_path_form = false;
  std::vector<graph::Vertex> order;         // when is_dag
  std::optional<graph::CycleWitness> cycle; // directed cycle, or non-neutral cycle
  CircularReport circular;
};

StructureReport structure_report(const graph::LabeledDag& g);

struct ReinhardtCertificate {
  graph::TorusPoint gamma;
  graph::Potential potential;
  std::vector<graph::Vertex> order;
  std::vector<Complex> block_phase;  // delta per block
  Matrix u;                          // block-constant diagonal unitary
  double residual;                   // max_s ||U A_s U* - gamma_s A_s||_F
  double residual_bound;             // 1e-10 (1 + max_s ||A_s||_F)
};

/// max_s ||U A_s U* - gamma_s A_s||_F
double symmetry_residual(const Pencil& p, const Matrix& u, const std::vector<Complex>& gamma);

/// Certificate when the extracted partition is Reinhardt, else the report
/// carrying the witness. Extraction failures propagate as StructureError.
std::variant<ReinhardtCertificate, StructureReport> certify_reinhardt(
    const Pencil& p, const BlockDecomposition& blocks, const graph::TorusPoint& gamma,
    std::optional<double> zero_tol = std::nullopt);

struct FalsifyOptions {
  std::vector<std::size_t> levels{1, 2, 3};
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  /// 0 reads FREESPEC_THREADS, falling back to the hardware count.
  std::size_t threads = 0;
};

struct FalsifyWitness {
  std::size_t sample_index;
  MatrixTuple x;
  graph::TorusPoint gamma;
  double margin_x;        // min eig of L(X)
  double margin_rotated;  // min eig of L(gamma . X)
};

/// Samples X in D_P near the boundary and gamma uniform on the torus; returns
/// the lowest-index sample with L(gamma . X) having min eig < -10 tol.
/// Deterministic in seed regardless of thread count.
std::optional<FalsifyWitness> falsify_reinhardt(const Pencil& p, const FalsifyOptions& opts);

/// The sample drawn for a given index (exposed for reproduction).
MatrixTuple falsify_sample(const Pencil& p, const FalsifyOptions& opts, std::size_t index,
                           graph::TorusPoint* gamma_out = nullptr);

std::size_t resolve_threads(std::size_t requested);

struct SymmetrySearch {
  std::optional<Matrix> u;
  std::size_t nullspace_dim = 0;
  std::size_t attempts = 0;
  double residual = 0.0;
};

/// Heuristic search for a unitary U with U A_s U* = gamma_s A_s. The joint
/// solution space of U A_s = gamma_s A_s U and U A_s* = conj(gamma_s) A_s* U
/// is computed by SVD; basis elements are tried first, then polar factors of
/// random elements refined by alternating projections (at most 64 starts).
/// A miss does not prove that no such U exists.
SymmetrySearch find_symmetry_unitary(const Pencil& p, const graph::TorusPoint& gamma,
                                     double tol = kDefaultTol, std::uint64_t seed = 0);

struct BlockSplit {
  BlockDecomposition blocks;
  Pencil pencil;                    // W* A_s W
  Matrix basis;                     // W, columns grouped by eigenvalue
  std::vector<Complex> eigenvalues; // one per block
};

/// Eigenspaces of a unitary U, grouped within tol, as a block decomposition
/// together with the pencil written in the eigenbasis. Throws NotUnitary.
BlockSplit block_split_from_unitary(const Pencil& p, const Matrix& u, double tol = kDefaultTol);

}  // namespace freespec::reinhardt

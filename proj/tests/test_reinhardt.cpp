#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "freespec/linalg.hpp"
#include "freespec/reinhardt.hpp"
#include "oracles.hpp"

using namespace freespec;
using namespace freespec::reinhardt;
using graph::TorusPoint;

namespace {

Matrix e(std::size_t d, std::size_t i, std::size_t j) { return Matrix::unit(d, d, i, j); }

Pencil triangle_pencil() { return Pencil({e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)}); }
Pencil unit_e_pencil() { return build_e_pencil(Matrix::identity(1), Matrix::identity(1)).pencil; }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& err) {
    return err.code();
  }
  return ErrorCode::Schema;
}

MatrixTuple tuple_in_domain(std::mt19937_64& rng, const Pencil& p, std::size_t n) {
  std::vector<Matrix> m;
  for (std::size_t s = 0; s < p.g(); ++s) m.push_back(oracle::ginibre(rng, n, n, 0.5));
  MatrixTuple x(std::move(m));
  // shrink until L(X) is positive definite
  for (int k = 0; k < 60 && membership(p, x).region != Region::Interior; ++k) x = scaled(x, 0.8);
  return x;
}

}  // namespace

TEST(Extract, EPencilGivesPathGraph) {
  const Matrix c1 = Matrix::from_rows({{1.0, 0.0}});
  const Matrix c2 = Matrix::from_rows({{0.0}, {1.0}});
  const auto ep = build_e_pencil(c1, c2);
  const auto ex = extract_graph(ep.pencil, {{1, 2, 1}});
  EXPECT_EQ(ex.graph.num_vertices(), 3U);
  ASSERT_EQ(ex.graph.edges().size(), 2U);
  EXPECT_EQ(ex.graph.edges()[0].tail, 0U);
  EXPECT_EQ(ex.graph.edges()[0].head, 1U);
  EXPECT_EQ(ex.graph.edges()[0].label, 1);
  EXPECT_EQ(ex.graph.edges()[1].tail, 1U);
  EXPECT_EQ(ex.graph.edges()[1].head, 2U);
  EXPECT_EQ(ex.graph.edges()[1].label, 2);
}

TEST(Extract, Failures) {
  try {
    extract_graph(Pencil({e(2, 0, 1), e(2, 0, 1)}), {{1, 1}});
    FAIL() << "expected LabelCollision";
  } catch (const StructureError& err) {
    EXPECT_EQ(err.code(), ErrorCode::LabelCollision);
    ASSERT_FALSE(err.blocks().empty());
    EXPECT_EQ(err.blocks()[0].row, 0U);
    EXPECT_EQ(err.blocks()[0].col, 1U);
  }
  EXPECT_EQ(code_of([] { extract_graph(Pencil({e(2, 0, 0)}), {{1, 1}}); }), ErrorCode::SelfLoop);
  EXPECT_EQ(code_of([] { extract_graph(Pencil({e(2, 0, 1), e(2, 1, 0)}), {{1, 1}}); }),
            ErrorCode::AntiparallelPair);
  EXPECT_EQ(code_of([] { extract_graph(Pencil({e(2, 0, 1), Matrix(2, 2)}), {{1, 1}}); }),
            ErrorCode::ZeroCoefficient);
  EXPECT_EQ(code_of([] { extract_graph(Pencil({e(2, 0, 1)}), {{1, 2}}); }), ErrorCode::DimensionMismatch);
}

TEST(Extract, ReportsBorderlineBlocks) {
  Matrix a = e(3, 0, 1);
  a(1, 2) = 1e-11;  // above the floor but within a factor 1e3 of it
  const auto ex = extract_graph(Pencil({a}), {{1, 1, 1}}, 1e-12);
  EXPECT_EQ(ex.graph.edges().size(), 2U);
  ASSERT_EQ(ex.borderline.size(), 1U);
  EXPECT_EQ(ex.borderline[0].row, 1U);
  EXPECT_EQ(ex.borderline[0].col, 2U);
}

TEST(Certify, EPencilAnyGamma) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto gamma = graph::sample_independent_torus(2, seed);
    const auto r = certify_reinhardt(unit_e_pencil(), {{1, 1, 1}}, gamma);
    ASSERT_TRUE(std::holds_alternative<ReinhardtCertificate>(r));
    const auto& c = std::get<ReinhardtCertificate>(r);
    EXPECT_LE(c.residual, 1e-12);
    EXPECT_NEAR(symmetry_residual(unit_e_pencil(), c.u, gamma.gammas()), c.residual, 1e-15);
  }
}

TEST(Certify, TriangleIsRefusedWithWitness) {
  const auto r = certify_reinhardt(triangle_pencil(), {{1, 1, 1}}, graph::sample_independent_torus(3, 0));
  ASSERT_TRUE(std::holds_alternative<StructureReport>(r));
  const auto& rep = std::get<StructureReport>(r);
  EXPECT_FALSE(rep.is_reinhardt_partition);
  ASSERT_TRUE(rep.cycle.has_value());
  EXPECT_EQ(rep.cycle->net, (graph::IntVector{1, 1, -1}));
}

TEST(Certify, DisjointEdgesForest) {
  const Pencil p({e(4, 0, 1), e(4, 2, 3)});
  const auto r = certify_reinhardt(p, {{1, 1, 1, 1}}, graph::sample_independent_torus(2, 1));
  ASSERT_TRUE(std::holds_alternative<ReinhardtCertificate>(r));
  EXPECT_LE(std::get<ReinhardtCertificate>(r).residual, 1e-12);
}

TEST(Certify, ConjugationIdentity) {
  std::mt19937_64 rng(31);
  const Pencil p = unit_e_pencil();
  const auto gamma = graph::sample_independent_torus(2, 4);
  const auto c = std::get<ReinhardtCertificate>(certify_reinhardt(p, {{1, 1, 1}}, gamma));
  const auto gs = gamma.gammas();
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rep % 3;
    const MatrixTuple x({oracle::ginibre(rng, n, n), oracle::ginibre(rng, n, n)});
    const Matrix lhs = eval_lambda(p, torus_action(gs, x));
    const Matrix un = kron(c.u, Matrix::identity(n));
    const Matrix rhs = un * eval_lambda(p, x) * un.adjoint();
    EXPECT_LE((lhs - rhs).frobenius_norm(), 1e-9);
  }
}

TEST(Certify, CertificateIsSound) {
  std::mt19937_64 rng(32);
  const Pencil p = unit_e_pencil();
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  for (int rep = 0; rep < 100; ++rep) {
    const MatrixTuple x = tuple_in_domain(rng, p, 1 + rep % 3);
    const std::vector<Complex> g{std::polar(1.0, ang(rng)), std::polar(1.0, ang(rng))};
    EXPECT_GE(membership(p, torus_action(g, x)).margin, -1e-8);
  }
}

TEST(Falsify, ScalarPencilHasWitness) {
  // hand witness: X = (-5, 0) has L = 11, gamma = (-1, 1) gives L = -9
  const Pencil p({Matrix::identity(1), Matrix::identity(1)});
  const MatrixTuple x({Matrix::from_rows({{-5.0}}), Matrix::from_rows({{0.0}})});
  EXPECT_NEAR(min_eig(eval_pencil(p, x)), 11.0, 1e-12);
  const std::vector<Complex> g{-1.0, 1.0};
  EXPECT_NEAR(min_eig(eval_pencil(p, torus_action(g, x))), -9.0, 1e-12);

  FalsifyOptions opts;
  const auto w = falsify_reinhardt(p, opts);
  ASSERT_TRUE(w.has_value());
  EXPECT_GE(w->margin_x, -1e-12);
  EXPECT_LT(w->margin_rotated, -10 * opts.tol);
  // the reported sample reproduces
  const MatrixTuple again = falsify_sample(p, opts, w->sample_index);
  EXPECT_EQ(again[0], w->x[0]);
}

TEST(Falsify, CertifiedPencilHasNoWitness) {
  FalsifyOptions opts;
  EXPECT_FALSE(falsify_reinhardt(unit_e_pencil(), opts).has_value());
  opts.samples = 0;
  EXPECT_FALSE(falsify_reinhardt(Pencil({Matrix::identity(1), Matrix::identity(1)}), opts).has_value());
}

TEST(Falsify, ResultIndependentOfThreadCount) {
  const Pencil p({Matrix::identity(1), Matrix::identity(1)});
  FalsifyOptions a, b;
  a.threads = 1;
  b.threads = 4;
  a.seed = b.seed = 9;
  const auto wa = falsify_reinhardt(p, a), wb = falsify_reinhardt(p, b);
  ASSERT_TRUE(wa && wb);
  EXPECT_EQ(wa->sample_index, wb->sample_index);
  EXPECT_EQ(wa->margin_rotated, wb->margin_rotated);
}

TEST(SymmetrySearch, RecoversDiagonalPhase) {
  const Pencil p = unit_e_pencil();
  const auto gamma = graph::sample_independent_torus(2, 2);
  const auto s = find_symmetry_unitary(p, gamma);
  ASSERT_TRUE(s.u.has_value());
  EXPECT_LE(symmetry_residual(p, *s.u, gamma.gammas()), 1e-9);
  // diagonal up to a global phase, matching the certificate's U
  const auto c = std::get<ReinhardtCertificate>(certify_reinhardt(p, {{1, 1, 1}}, gamma));
  const Complex phase = (*s.u)(2, 2) / c.u(2, 2);
  EXPECT_LE(((*s.u) - phase * c.u).frobenius_norm(), 1e-8);
}

TEST(SymmetrySearch, TrivialGammaGivesIdentity) {
  std::mt19937_64 rng(33);
  const Pencil p({oracle::ginibre(rng, 3, 3), oracle::ginibre(rng, 3, 3)});
  const auto s = find_symmetry_unitary(p, TorusPoint::from_angles({0.0, 0.0}));
  ASSERT_TRUE(s.u.has_value());
  EXPECT_LE((*s.u - Matrix::identity(3)).frobenius_norm(), 1e-12);
}

TEST(SymmetrySearch, GenericPencilHasNone) {
  std::mt19937_64 rng(34);
  const Pencil p({oracle::ginibre(rng, 3, 3), oracle::ginibre(rng, 3, 3)});
  const auto s = find_symmetry_unitary(p, graph::sample_independent_torus(2, 0));
  EXPECT_FALSE(s.u.has_value());
  EXPECT_EQ(s.nullspace_dim, 0U);
}

TEST(BlockSplit, Examples) {
  std::mt19937_64 rng(35);
  const Pencil p({oracle::ginibre(rng, 3, 3)});
  const Complex d[] = {Complex(0, 1), Complex(0, 1), 1.0};
  EXPECT_EQ(block_split_from_unitary(p, Matrix::diagonal(d)).blocks.sizes, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(block_split_from_unitary(p, Matrix::identity(3)).blocks.sizes, (std::vector<std::size_t>{3}));

  // rotated diag(e^{i theta}, 1) on d = 2
  const double th = 0.9;
  const Complex dd[] = {std::polar(1.0, th), 1.0};
  const Matrix f = Matrix::from_rows({{1.0, 1.0}, {1.0, -1.0}});
  const Matrix q = Complex(1.0 / std::sqrt(2.0)) * f;
  const Matrix u = q * Matrix::diagonal(dd) * q.adjoint();
  const Pencil p2({oracle::ginibre(rng, 2, 2)});
  const auto split = block_split_from_unitary(p2, u);
  EXPECT_EQ(split.blocks.sizes, (std::vector<std::size_t>{1, 1}));
  const Matrix direct = split.basis.adjoint() * p2.coefficient(0) * split.basis;
  EXPECT_LE((direct - split.pencil.coefficient(0)).frobenius_norm(), 1e-12);
  const Matrix w = split.basis.adjoint() * split.basis;
  EXPECT_LE((w - Matrix::identity(2)).frobenius_norm(), 1e-12);
  EXPECT_EQ(code_of([&] { block_split_from_unitary(p2, f); }), ErrorCode::NotUnitary);
}

TEST(Circular, Examples) {
  using graph::LabeledDag;
  EXPECT_TRUE(check_circular_path_form(LabeledDag(3, 2, {{0, 1, 1}, {1, 2, 2}})).ok);
  const auto branch = check_circular_path_form(LabeledDag(3, 1, {{0, 1, 1}, {0, 2, 1}}));
  EXPECT_FALSE(branch.ok);
  EXPECT_EQ(branch.out_degree_violations, (std::vector<graph::Vertex>{0}));
  const auto iso = check_circular_path_form(LabeledDag(4, 2, {{0, 1, 1}, {1, 2, 2}}));
  EXPECT_FALSE(iso.ok);
  EXPECT_EQ(iso.isolated, (std::vector<graph::Vertex>{3}));
}

TEST(Circular, PathFormImpliesReinhardt) {
  std::mt19937_64 rng(36);
  for (int rep = 0; rep < 300; ++rep) {
    // random vertex-disjoint paths
    const std::size_t m = 2 + rep % 5;
    std::vector<graph::Vertex> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<graph::Edge> edges;
    std::bernoulli_distribution cut(0.3);
    std::uniform_int_distribution<int> lab(1, 3);
    for (std::size_t i = 0; i + 1 < m; ++i)
      if (!cut(rng)) edges.push_back({perm[i], perm[i + 1], lab(rng)});
    const graph::LabeledDag g(m, 3, edges);
    if (check_circular_path_form(g).ok) {
      EXPECT_TRUE(graph::is_reinhardt_partition(g).yes);
    }
  }
}

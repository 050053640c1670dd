#include <algorithm>
#include <cmath>
#include <random>

#include "freespec/reinhardt.hpp"

namespace freespec::reinhardt {

namespace {

constexpr std::size_t kMaxAttempts = 64;
constexpr std::size_t kMaxIterations = 2000;

using Vec = std::vector<Complex>;

Matrix from_vec(const Vec& v, std::size_t d) { return Matrix(d, d, v); }

Vec to_vec(const Matrix& m) { return Vec(m.entries().begin(), m.entries().end()); }

// Rows of U A_s - gamma_s A_s U and U A_s* - conj(gamma_s) A_s* U acting on
// the row-major vector of U. A unitary solution of the first family solves
// the second, and the joint solution space is U_0 times a *-algebra.
Matrix symmetry_system(const Pencil& p, const std::vector<Complex>& gamma) {
  const std::size_t d = p.d();
  const std::size_t dd = d * d;
  Matrix m(2 * p.g() * dd, dd);
  for (std::size_t s = 0; s < 2 * p.g(); ++s) {
    const bool adj = s >= p.g();
    const Matrix a = adj ? p.coefficient(s - p.g()).adjoint() : p.coefficient(s);
    const Complex c = adj ? std::conj(gamma[s - p.g()]) : gamma[s];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t r = s * dd + i * d + j;
        for (std::size_t k = 0; k < d; ++k) {
          m(r, i * d + k) += a(k, j);
          m(r, k * d + j) -= c * a(i, k);
        }
      }
    }
  }
  return m;
}

// Orthonormal completion of the given columns by Gram-Schmidt on e_0, e_1, ...
std::vector<Vec> complete_basis(std::vector<Vec> cols, std::size_t d) {
  for (std::size_t k = 0; k < d && cols.size() < d; ++k) {
    Vec v(d, 0.0);
    v[k] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& c : cols) {
        const Complex h = inner(c, v);
        for (std::size_t i = 0; i < d; ++i) v[i] -= h * c[i];
      }
    }
    const double nv = vector_norm(v);
    if (nv < 1e-8) continue;
    for (Complex& z : v) z /= nv;
    cols.push_back(std::move(v));
  }
  return cols;
}

// Unitary factor of the polar decomposition, completed on the kernel.
Matrix unitary_polar(const Matrix& v) {
  const std::size_t d = v.rows();
  const HermitianEigen eg = herm_eigen(v.adjoint() * v);
  const double top = std::max(eg.values.back(), 0.0);
  std::vector<Vec> left;
  std::vector<Vec> right;
  std::vector<Vec> kernel_right;
  for (std::size_t k = d; k-- > 0;) {
    Vec q = column_of(eg.vectors, k);
    if (eg.values[k] > 1e-24 * top && eg.values[k] > 0.0) {
      Vec c = mat_vec(v, q);
      const double nc = vector_norm(c);
      for (Complex& z : c) z /= nc;
      left.push_back(std::move(c));
      right.push_back(std::move(q));
    } else {
      kernel_right.push_back(std::move(q));
    }
  }
  left = complete_basis(std::move(left), d);
  for (auto& q : kernel_right) right.push_back(std::move(q));
  Matrix u(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) u(i, j) += left[k][i] * std::conj(right[k][j]);
    }
  }
  return u;
}

Vec project(const std::vector<Vec>& basis, const Vec& x) {
  Vec out(x.size(), 0.0);
  for (const Vec& w : basis) {
    const Complex h = inner(w, x);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += h * w[i];
  }
  return out;
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::identity(u.rows())).frobenius_norm();
}

// Scalar multiple of a unitary: V*V = cI with c > 0.
std::optional<Matrix> normalize_if_scaled_unitary(const Matrix& v, double tol) {
  const Matrix g = v.adjoint() * v;
  const double c = g.trace().real() / static_cast<double>(v.rows());
  if (c <= 0.0) return std::nullopt;
  Matrix u = (1.0 / std::sqrt(c)) * v;
  if (unitarity_defect(u) > tol) return std::nullopt;
  return u;
}

}  // namespace

SymmetrySearch find_symmetry_unitary(const Pencil& p, const graph::TorusPoint& gamma, double tol,
                                     std::uint64_t seed) {
  if (gamma.angles.size() != p.g()) {
    throw Error(ErrorCode::DimensionMismatch, "gamma has the wrong number of entries");
  }
  const std::size_t d = p.d();
  const auto gam = gamma.gammas();
  double scale = 0.0;
  for (const Matrix& a : p.coefficients()) scale = std::max(scale, a.frobenius_norm());
  const double accept = 10.0 * tol * (1.0 + scale);
  const double unit_tol = 10.0 * tol * std::sqrt(static_cast<double>(d));

  SymmetrySearch out;
  const Matrix eye = Matrix::identity(d);
  const double eye_res = symmetry_residual(p, eye, gam);
  if (eye_res <= accept) {
    out.u = eye;
    out.residual = eye_res;
    out.nullspace_dim = nullspace(symmetry_system(p, gam), tol).size();
    return out;
  }

  const auto basis = nullspace(symmetry_system(p, gam), tol);
  out.nullspace_dim = basis.size();
  if (basis.empty()) return out;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    out.attempts = attempt + 1;
    Vec start;
    if (attempt < basis.size()) {
      start = basis[attempt];
    } else {
      start.assign(d * d, 0.0);
      for (const Vec& w : basis) {
        const Complex c(normal(rng), normal(rng));
        for (std::size_t i = 0; i < start.size(); ++i) start[i] += c * w[i];
      }
    }
    Matrix v = from_vec(start, d);
    if (auto u = normalize_if_scaled_unitary(v, unit_tol)) {
      const double res = symmetry_residual(p, *u, gam);
      if (res <= accept) {
        out.u = std::move(*u);
        out.residual = res;
        return out;
      }
    }
    double prev = INFINITY;
    for (std::size_t it = 0; it < kMaxIterations; ++it) {
      const Matrix u = unitary_polar(v);
      const Vec pu = project(basis, to_vec(u));
      const Matrix next = from_vec(pu, d);
      const double gap = (next - u).frobenius_norm();
      v = next;
      if (gap < 1e-13 * std::sqrt(static_cast<double>(d))) break;
      if (it % 100 == 99) {
        if (gap > 0.999 * prev) break;
        prev = gap;
      }
    }
    const Matrix u = unitary_polar(v);
    const double res = symmetry_residual(p, u, gam);
    if (res <= accept && unitarity_defect(u) <= unit_tol) {
      out.u = u;
      out.residual = res;
      return out;
    }
  }
  return out;
}

BlockSplit block_split_from_unitary(const Pencil& p, const Matrix& u, double tol) {
  const std::size_t d = p.d();
  if (u.rows() != d || u.cols() != d) throw Error(ErrorCode::DimensionMismatch, "U must be d x d");
  if (unitarity_defect(u) > tol * (1.0 + std::sqrt(static_cast<double>(d)))) {
    throw Error(ErrorCode::NotUnitary, "U is not unitary within tolerance");
  }

  // Real and imaginary parts of a generic rotation of U are commuting
  // Hermitian matrices whose joint eigenvectors diagonalize U.
  const Complex rot = std::polar(1.0, -0.5772156649015329);
  const Matrix r = rot * u;
  const Matrix re = 0.5 * (r + r.adjoint());
  const Matrix im = Complex(0.0, -0.5) * (r - r.adjoint());
  const HermitianEigen ke = herm_eigen(re, 1e-6);

  std::vector<Vec> vecs;
  for (std::size_t start = 0; start < d;) {
    std::size_t stop = start + 1;
    while (stop < d && ke.values[stop] - ke.values[stop - 1] <= 1e-6) ++stop;
    const std::size_t c = stop - start;
    Matrix q(d, c);
    for (std::size_t k = 0; k < c; ++k) {
      for (std::size_t i = 0; i < d; ++i) q(i, k) = ke.vectors(i, start + k);
    }
    if (c == 1) {
      vecs.push_back(column_of(q, 0));
    } else {
      const HermitianEigen je = herm_eigen(q.adjoint() * im * q, 1e-6);
      const Matrix rotated = q * je.vectors;
      for (std::size_t k = 0; k < c; ++k) vecs.push_back(column_of(rotated, k));
    }
    start = stop;
  }

  struct Group {
    Complex lambda;
    std::vector<Vec> vecs;
    std::size_t key = 0;
    std::vector<Vec> basis;
  };
  std::vector<Group> groups;
  for (const Vec& v : vecs) {
    const Complex lam = inner(v, mat_vec(u, v));
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return std::abs(g.lambda - lam) <= tol; });
    if (it == groups.end()) {
      groups.push_back({lam, {v}, 0, {}});
    } else {
      it->vecs.push_back(v);
    }
  }

  for (Group& g : groups) {
    // Pivoted Gram-Schmidt of the projected coordinate vectors.
    std::vector<Vec> proj(d);
    for (std::size_t k = 0; k < d; ++k) {
      Vec e(d, 0.0);
      e[k] = 1.0;
      proj[k] = project(g.vecs, e);
    }
    double best = -1.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double nk = vector_norm(proj[k]);
      if (nk > best + 1e-12) {
        best = nk;
        g.key = k;
      }
    }
    for (std::size_t r = 0; r < g.vecs.size(); ++r) {
      std::size_t pick = 0;
      double pick_norm = -1.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double nk = vector_norm(proj[k]);
        if (nk > pick_norm + 1e-12) {
          pick_norm = nk;
          pick = k;
        }
      }
      Vec b = proj[pick];
      for (Complex& z : b) z /= pick_norm;
      for (Vec& x : proj) {
        const Complex h = inner(b, x);
        for (std::size_t i = 0; i < d; ++i) x[i] -= h * b[i];
      }
      g.basis.push_back(std::move(b));
    }
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) { return a.key < b.key; });

  BlockSplit out{{}, Pencil(p.coefficients()), Matrix(d, d), {}};
  std::size_t col = 0;
  for (const Group& g : groups) {
    out.blocks.sizes.push_back(g.basis.size());
    out.eigenvalues.push_back(g.lambda);
    for (const Vec& b : g.basis) {
      for (std::size_t i = 0; i < d; ++i) out.basis(i, col) = b[i];
      ++col;
    }
  }
  std::vector<Matrix> conj;
  const Matrix wstar = out.basis.adjoint();
  for (const Matrix& a : p.coefficients()) conj.push_back(wstar * a * out.basis);
  out.pencil = Pencil(std::move(conj));
  return out;
}

}  // namespace freespec::reinhardt

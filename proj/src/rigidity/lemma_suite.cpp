#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "freespec/rigidity.hpp"

namespace freespec::rigidity {

namespace {

using Rng = std::mt19937_64;

Matrix gaussian(std::size_t r, std::size_t c, Rng& rng) {
  std::normal_distribution<double> nd;
  Matrix m(r, c);
  for (Complex& z : m.entries()) z = Complex(nd(rng), nd(rng));
  return m;
}

ETuple random_pair(Rng& rng) {
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  const std::size_t k = dim(rng), m = dim(rng), n = dim(rng);
  return ETuple(normalized(gaussian(k, m, rng)), normalized(gaussian(m, n, rng)));
}

// C1 lives on the first p coordinates of C^m and C2 on the rest, so
// C1*C1 + C2C2* <= I with both norms one.
ETuple random_bidisk_pair(Rng& rng) {
  std::uniform_int_distribution<std::size_t> dim(1, 2);
  const std::size_t p = dim(rng), q = dim(rng), k = dim(rng), n = dim(rng);
  Matrix c1(k, p + q);
  c1.set_block(0, 0, normalized(gaussian(k, p, rng)));
  Matrix c2(p + q, n);
  c2.set_block(p, 0, normalized(gaussian(q, n, rng)));
  return ETuple(c1, c2);
}

std::vector<ETuple> rigid_pairs(const ETuple& e, Rng& rng) {
  std::vector<ETuple> out;
  if (!is_free_bidisk(e)) out.push_back(e);
  while (out.size() < 3) {
    ETuple r = random_pair(rng);
    if (!is_free_bidisk(r)) out.push_back(std::move(r));
  }
  return out;
}

Complex random_disk(Rng& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * u(rng), 2.0 * std::numbers::pi * u(rng));
}

struct Tally {
  explicit Tally(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  std::string first_failure;

  void record(bool ok, double violation, const std::function<std::string()>& what) {
    ++cases;
    worst = std::max(worst, violation);
    if (!ok) {
      if (failures == 0) first_failure = what();
      ++failures;
    }
  }
  LemmaCheck done() const {
    return {name, failures == 0 && cases > 0, cases, worst,
            failures == 0 ? std::string() : std::to_string(failures) + " failures, first: " +
                                               first_failure};
  }
};

const char* region_name(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Boundary: return "boundary";
    case Region::Outside: return "outside";
  }
  return "?";
}

LemmaCheck check_truncation(Rng& rng) {
  Tally t{"nilpotent-truncation"};
  std::normal_distribution<double> nd;
  for (int i = 0; i < 40; ++i) {
    WordPoly f;
    for (std::size_t len = 0; len <= 4; ++len) {
      std::vector<int> w(len);
      for (int rep = 0; rep < 3; ++rep) {
        for (int& letter : w) letter = 1 + static_cast<int>(rng() % 2);
        f.add(w, Complex(nd(rng), nd(rng)));
      }
    }
    const bool order3 = i % 2 == 0;
    const MatrixTuple x = order3 ? t_pair(random_disk(rng, 2), random_disk(rng, 2),
                                          random_disk(rng, 2), random_disk(rng, 2))
                                 : tx(random_disk(rng, 2), random_disk(rng, 2));
    Matrix full(x.n(), x.n());
    for (const auto& [w, c] : f.coeffs) full += c * word_eval(w, x);
    const double err = (full - nilpotent_eval(f, x, order3 ? 3 : 2)).max_abs();
    t.record(err <= 1e-12 * (1.0 + full.max_abs()), err, [&] { return "poly " + std::to_string(i); });
  }
  return t.done();
}

LemmaCheck check_tx_region(const std::vector<ETuple>& pairs) {
  Tally t{"tx-boundary-region"};
  for (const ETuple& e : pairs) {
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        const double t1 = 0.06 * i, t2 = 0.06 * j;
        const double top = std::max(t1, t2);
        const Region want = std::abs(top - 1.0) <= 1e-8 ? Region::Boundary
                            : top < 1.0                ? Region::Interior
                                                       : Region::Outside;
        const Region got = classify_tx(e, t1, t2, 1e-8).region;
        t.record(got == want, got == want ? 0.0 : 1.0, [&] {
          return "t = (" + std::to_string(t1) + ", " + std::to_string(t2) + ") gave " +
                 region_name(got);
        });
      }
    }
  }
  return t.done();
}

LemmaCheck check_theta_blocks(const ETuple& e, Rng& rng) {
  Tally t{"theta-block-form"};
  for (int i = 0; i < 200; ++i) {
    const ETuple pair = i % 2 == 0 ? e : random_pair(rng);
    const Complex kappa = random_disk(rng, 1.2), lambda = random_disk(rng, 1.0),
                  mu = random_disk(rng, 1.0), nu = random_disk(rng, 1.2);
    const auto direct = classify_t(pair, kappa, lambda, mu, nu);
    const auto blocks = classify_t_block_form(pair, kappa, lambda, mu, nu);
    const double gap = std::abs(direct.margin - blocks.margin);
    t.record(direct.region == blocks.region && gap <= 1e-9, gap,
             [&] { return "instance " + std::to_string(i); });
  }
  return t.done();
}

void check_caratheodory(std::vector<LemmaCheck>& out) {
  Tally norm{"caratheodory-norm-one"};
  Tally rank{"caratheodory-rank-one-defect"};
  Tally trace{"caratheodory-defect-trace"};
  for (int i = 0; i <= 9; ++i) {
    for (double theta : {0.0, 1.0, 2.5}) {
      const double b = 0.1 * i;
      const Caratheodory c = caratheodory_extend(b, theta);
      auto label = [&] { return "b = " + std::to_string(b) + ", theta = " + std::to_string(theta); };
      const double dn = std::abs(c.norm - 1.0);
      norm.record(dn <= 1e-9, dn, label);
      auto count = [](const std::vector<double>& v) {
        return std::count_if(v.begin(), v.end(), [](double x) { return x > 1e-8; });
      };
      const bool one = count(c.defect_eigs) == 1 && count(c.codefect_eigs) == 1;
      rank.record(one, one ? 0.0 : 1.0, label);
      const double dt = std::abs(c.defect_trace - (1.0 - std::pow(b, 6)));
      trace.record(dt <= 1e-10, dt, label);
    }
  }
  out.push_back(norm.done());
  out.push_back(rank.done());
  out.push_back(trace.done());
}

LemmaCheck check_constraints() {
  Tally t{"constraint-force"};
  for (int i = 0; i <= 9; ++i) {
    for (double theta : {0.0, 1.0, 2.5}) {
      const double b = 0.1 * i;
      const double cap = 1.0 - b * b;
      for (Complex alpha : {Complex(0.0), Complex(0.5 * cap), std::polar(cap, 1.0)}) {
        for (auto v : {ConstraintVariant::TopRow, ConstraintVariant::RightColumn}) {
          const ConstraintForce cf = constraint_force(b, theta, alpha, v);
          const bool ok = cf.feasible && cf.norm_one && cf.perturbation_breaks;
          t.record(ok, std::abs(cf.norm - 1.0), [&] { return "b = " + std::to_string(b); });
        }
      }
    }
  }
  return t.done();
}

LemmaCheck check_lower_bound() {
  Tally t{"compression-lower-bound"};
  for (double b : {0.0, 0.25, 0.5, 0.75}) {
    for (double lam : {0.3, 0.7, 0.95}) {
      for (double theta : {0.0, 1.0, 2.5}) {
        for (auto v : {BoundVariant::XstarX, BoundVariant::XXstar, BoundVariant::YstarY,
                       BoundVariant::YYstar}) {
          const double excess = lower_bound_subspace(b, theta, lam, v).min_compressed_eig -
                                lam * lam;
          const bool ok = excess >= -1e-10 && (b < 0.25 || excess >= 1e-6);
          t.record(ok, std::max(0.0, -excess), [&] {
            return "b = " + std::to_string(b) + ", lambda = " + std::to_string(lam);
          });
        }
      }
    }
  }
  return t.done();
}

LemmaCheck check_defects(const std::vector<ETuple>& pairs, std::uint64_t seed) {
  Tally t{"boundary-defect"};
  RigidityOptions opts;
  opts.b_grid = default_b_grid();
  opts.seed = seed;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const RigidityReport r = rigidity_report(pairs[i], opts);
    for (const DefectRow& row : r.defects) {
      const double miss = row.ok ? 0.0 : (std::isnan(row.value) ? 1.0 : std::abs(row.value - 1.0));
      t.record(row.ok, miss, [&] {
        return "pair " + std::to_string(i) + ", b = (" + std::to_string(std::abs(row.b[0])) +
               ", " + std::to_string(std::abs(row.b[1])) + ")";
      });
    }
  }
  return t.done();
}

LemmaCheck check_swap_refute(Rng& rng) {
  Tally t{"swap-case-refute"};
  for (int i = 0; i < 50; ++i) {
    const ETuple e = i % 2 == 0 ? random_pair(rng) : random_bidisk_pair(rng);
    const double v = swap_case_refute(e);
    const bool bidisk = is_free_bidisk(e);
    const bool ok = bidisk ? std::abs(v - 1.0) <= 1e-8 : v > 1.0 + 1e-6;
    const double gap = std::abs(v - e_gram_sum_max_eig(e));
    t.record(ok && gap <= 1e-9, gap, [&] { return "pair " + std::to_string(i); });
  }
  return t.done();
}

LemmaCheck check_linear_cases() {
  Tally t{"linear-case-table"};
  for (double b1 : default_b_grid()) {
    for (double b2 : {0.0, 0.2, 0.7}) {
      for (double theta : {0.0, 1.0, 2.5}) {
        for (CaseKind kind : {CaseKind::Diagonal, CaseKind::Swap}) {
          const auto cand = AutoCandidate::forced({b1, b2}, {theta, -theta}, kind);
          const LinearCaseTable tab = linear_case_table(cand);
          const LinearCase want = kind == CaseKind::Diagonal ? LinearCase::Diagonal : LinearCase::Swap;
          const double miss = std::max(std::abs(tab.norms[0] - 1.0), std::abs(tab.norms[1] - 1.0));
          t.record(tab.kind == want && tab.norms_one, miss,
                   [&] { return "b = (" + std::to_string(b1) + ", " + std::to_string(b2) + ")"; });
        }
      }
    }
  }
  return t.done();
}

LemmaCheck check_boundary_preservation(const ETuple& e, Rng& rng) {
  Tally t{"boundary-preservation"};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    // (lambda, mu) strictly inside Theta, kappa = 1, |nu| <= 1.
    const Complex lambda = random_disk(rng, 1.0), mu = random_disk(rng, 1.0);
    const double top = 1.0 - theta_membership(e, lambda, mu).margin;
    const double shrink = top > 0.0 ? 0.9 / std::sqrt(top) : 1.0;
    const Complex l = std::min(shrink, 1.0) * lambda, m = std::min(shrink, 1.0) * mu;
    const Complex nu = random_disk(rng, 1.0);
    const MatrixTuple x = t_pair(1.0, l, m, nu);
    const std::array<Complex, 2> g{std::polar(1.0, 2 * std::numbers::pi * u(rng)),
                                   std::polar(1.0, 2 * std::numbers::pi * u(rng))};
    const MatrixTuple gx = torus_action(g, x);
    const auto before = e_membership(e, x[0], x[1], 1e-8);
    const auto after = e_membership(e, gx[0], gx[1], 1e-8);
    const bool ok = before.region == Region::Boundary && after.region == Region::Boundary;
    t.record(ok, std::abs(after.margin), [&] { return "point " + std::to_string(i); });
  }
  return t.done();
}

LemmaCheck check_extra_coefficient(Rng& rng) {
  Tally t{"extra-coefficient-breaks-contraction"};
  for (int i = 0; i < 40; ++i) {
    const Complex b = random_disk(rng, 0.9);
    const double theta = 2.0 * std::numbers::pi * std::uniform_real_distribution<double>()(rng);
    const Complex a12 = std::polar(0.05, 2.0 * std::numbers::pi * (i / 40.0));
    WordPoly phi = forced_coefficients(AutoCandidate::forced({b, 0.0}, {theta, 0.0},
                                                             CaseKind::Diagonal),
                                       CaseKind::Diagonal)[0];
    phi.add({1, 2}, a12);
    // T(1, lambda, mu, 1) with (lambda, mu) = (0.5, 0.5) inside Theta for C1 = C2 = [1].
    const Matrix r = nilpotent_eval(phi, t_pair(1.0, 0.5, 0.5, 1.0), 3);
    const double n = operator_norm(r);
    t.record(n > 1.0 + 1e-9, std::max(0.0, 1.0 - n), [&] { return "sample " + std::to_string(i); });
  }
  return t.done();
}

}  // namespace

std::vector<LemmaCheck> lemma_suite(const ETuple& e, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<ETuple> rigid = rigid_pairs(e, rng);
  std::vector<LemmaCheck> out;
  out.push_back(check_truncation(rng));
  out.push_back(check_tx_region(rigid));
  out.push_back(check_theta_blocks(e, rng));
  check_caratheodory(out);
  out.push_back(check_constraints());
  out.push_back(check_lower_bound());
  out.push_back(check_defects(rigid, seed));
  out.push_back(check_swap_refute(rng));
  out.push_back(check_linear_cases());
  out.push_back(check_boundary_preservation(e, rng));
  out.push_back(check_extra_coefficient(rng));
  return out;
}

}  // namespace freespec::rigidity

// Acceptance run: one PASS/FAIL line per criterion, indented detail below.
// Exit status is the number of failed criteria (capped at 1).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "freespec/cli.hpp"
#include "freespec/graph.hpp"
#include "freespec/linalg.hpp"
#include "freespec/reinhardt.hpp"
#include "freespec/rigidity.hpp"
#include "oracles.hpp"

using namespace freespec;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

graph::LabeledDag random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> nv(2, 5), ng(1, 4);
  const std::size_t m = nv(rng), g = ng(rng);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::uniform_int_distribution<std::size_t> ne(0, std::min<std::size_t>(7, pairs.size()));
  const std::size_t e = ne(rng);
  std::uniform_int_distribution<int> lab(1, static_cast<int>(g));
  std::bernoulli_distribution flip(0.5);
  std::vector<graph::Edge> edges;
  for (std::size_t k = 0; k < e; ++k) {
    auto [a, b] = pairs[k];
    if (flip(rng)) std::swap(a, b);
    edges.push_back({a, b, lab(rng)});
  }
  return graph::LabeledDag(m, g, std::move(edges));
}

Outcome criterion1() {
  std::mt19937_64 rng(1001);
  std::size_t mismatches = 0, oracle_mismatches = 0, with_potential = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const auto g = random_graph(rng);
    const bool pot = std::holds_alternative<graph::Potential>(graph::compute_potential(g));
    bool neutral = true;
    for (const auto& c : graph::enumerate_cycles(g, 12))
      for (auto v : c.net) neutral = neutral && v == 0;
    mismatches += pot != neutral;
    oracle_mismatches += pot != oracle::all_cycles_neutral(g);
    with_potential += pot;
  }
  Outcome o;
  o.pass = mismatches == 0 && oracle_mismatches == 0;
  o.summary = fmt("potential exists <=> all enumerated cycles neutral on 500 graphs: %zu mismatches", mismatches);
  o.details.push_back(fmt("%zu graphs admit a potential; edge-subset oracle disagrees on %zu", with_potential,
                          oracle_mismatches));
  return o;
}

// Random Reinhardt-structured pencil: a random potential on m blocks, every
// block (j, k) of A_s filled only when p(j) - p(k) = e_s.
std::pair<Pencil, reinhardt::BlockDecomposition> random_reinhardt_pencil(std::mt19937_64& rng) {
  for (;;) {
    std::uniform_int_distribution<std::size_t> nb(2, 4), sz(1, 2), ng(2, 3);
    const std::size_t m = nb(rng), g = ng(rng);
    std::vector<std::vector<int>> p(m, std::vector<int>(g, 0));
    std::uniform_int_distribution<std::size_t> lab(0, g - 1);
    std::bernoulli_distribution up(0.5);
    for (std::size_t v = 1; v < m; ++v) {
      std::uniform_int_distribution<std::size_t> par(0, v - 1);
      p[v] = p[par(rng)];
      p[v][lab(rng)] += up(rng) ? 1 : -1;
    }
    reinhardt::BlockDecomposition blocks;
    for (std::size_t v = 0; v < m; ++v) blocks.sizes.push_back(sz(rng));
    const auto off = blocks.offsets();
    const std::size_t d = blocks.total();
    std::vector<Matrix> a(g, Matrix(d, d));
    std::vector<bool> used(g, false);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t s = 0; s < g; ++s) {
          bool match = j != k;
          for (std::size_t t = 0; t < g && match; ++t) match = p[j][t] - p[k][t] == (t == s ? 1 : 0);
          if (!match) continue;
          a[s].set_block(off[j], off[k], oracle::ginibre(rng, blocks.sizes[j], blocks.sizes[k], 0.7));
          used[s] = true;
        }
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return {Pencil(std::move(a)), blocks};
  }
}

Outcome criterion2() {
  std::mt19937_64 rng(2002);
  reinhardt::FalsifyOptions opts;
  opts.levels = {1, 2, 3};
  opts.samples = 1000;
  double worst = 0.0;
  std::size_t certified = 0, clean = 0;
  for (int rep = 0; rep < 40; ++rep) {
    Pencil p({Matrix(1, 1)});
    reinhardt::BlockDecomposition blocks;
    if (rep < 20) {
      std::uniform_int_distribution<std::size_t> dim(1, 3);
      const std::size_t k = dim(rng), mm = dim(rng), n = dim(rng);
      const Matrix c1 = oracle::scaled_to_norm_one(oracle::ginibre(rng, k, mm));
      const Matrix c2 = oracle::scaled_to_norm_one(oracle::ginibre(rng, mm, n));
      p = build_e_pencil(c1, c2).pencil;
      blocks.sizes = {k, mm, n};
    } else {
      std::tie(p, blocks) = random_reinhardt_pencil(rng);
    }
    const auto gamma = graph::sample_independent_torus(p.g(), 500 + rep);
    const auto r = reinhardt::certify_reinhardt(p, blocks, gamma);
    if (const auto* c = std::get_if<reinhardt::ReinhardtCertificate>(&r)) {
      ++certified;
      worst = std::max(worst, c->residual);
    }
    opts.seed = 7000 + rep;
    clean += !reinhardt::falsify_reinhardt(p, opts).has_value();
  }
  Outcome o;
  o.pass = certified == 40 && worst <= 1e-10 && clean == 40;
  o.summary = fmt("%zu/40 certified (max residual %.2e <= 1e-10), %zu/40 with no witness in 1000 samples",
                  certified, worst, clean);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Pencil tri({Matrix::unit(3, 3, 0, 1), Matrix::unit(3, 3, 1, 2), Matrix::unit(3, 3, 0, 2)});
  const auto r = reinhardt::certify_reinhardt(tri, {{1, 1, 1}}, graph::sample_independent_torus(3, 0));
  bool refused = false;
  std::string net = "none";
  if (const auto* rep = std::get_if<reinhardt::StructureReport>(&r); rep && rep->cycle) {
    refused = rep->cycle->net == graph::IntVector{1, 1, -1};
    net = fmt("(%lld, %lld, %lld)", (long long)rep->cycle->net[0], (long long)rep->cycle->net[1],
              (long long)rep->cycle->net[2]);
  }
  reinhardt::FalsifyOptions opts;
  const auto w = reinhardt::falsify_reinhardt(Pencil({Matrix::identity(1), Matrix::identity(1)}), opts);
  o.pass = refused && w.has_value();
  o.summary = fmt("triangle refused with net %s; scalar pencil witness %s", net.c_str(),
                  w ? fmt("at sample %zu (margin %.3f -> %.3f)", w->sample_index, w->margin_x, w->margin_rotated).c_str()
                    : "not found");
  return o;
}

Outcome criterion4() {
  std::mt19937_64 rng(4004);
  std::uniform_real_distribution<double> scale(0.2, 1.6);
  std::size_t agree = 0, boundary = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const Matrix c1 = oracle::scaled_to_norm_one(oracle::ginibre(rng, 1 + rep % 2, 1 + rep % 3));
    const Matrix c2 = oracle::scaled_to_norm_one(oracle::ginibre(rng, c1.cols(), 1 + (rep / 2) % 2));
    const auto ep = build_e_pencil(c1, c2);
    const std::size_t n = 1 + rep % 3;
    Matrix x1 = oracle::ginibre(rng, n, n), x2 = oracle::ginibre(rng, n, n);
    const double top = 1.0 - e_membership(ep.e, x1, x2).margin;
    const double s = (rep % 5 == 0 ? 1.0 : scale(rng)) / std::sqrt(top);
    x1 *= s;
    x2 *= s;
    const auto a = e_membership(ep.e, x1, x2, 1e-8);
    const auto b = membership(ep.pencil, MatrixTuple({x1, x2}), 1e-8);
    agree += a.region == b.region;
    boundary += a.region == Region::Boundary;
  }
  Outcome o;
  o.pass = agree == 200;
  o.summary = fmt("e_membership and pencil membership agree on %zu/200 instances (%zu on the boundary)", agree,
                  boundary);
  return o;
}

ETuple random_rigid(std::mt19937_64& rng) {
  for (;;) {
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    const Matrix c1 = oracle::scaled_to_norm_one(oracle::ginibre(rng, dim(rng), 2));
    const Matrix c2 = oracle::scaled_to_norm_one(oracle::ginibre(rng, 2, dim(rng)));
    if (oracle::gram_sum(c1, c2) > 1.0 + 1e-3) return ETuple(c1, c2);
  }
}

Outcome criterion5() {
  std::mt19937_64 rng(5005);
  std::size_t wrong = 0, total = 0;
  for (int k = 0; k < 5; ++k) {
    const ETuple e = random_rigid(rng);
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double t1 = 1.2 * i / 20, t2 = 1.2 * j / 20, m = std::max(t1, t2);
        const Region want = m < 1 - 1e-8 ? Region::Interior : (m <= 1 + 1e-8 ? Region::Boundary : Region::Outside);
        wrong += rigidity::classify_tx(e, t1, t2, 1e-8).region != want;
        ++total;
      }
  }
  Outcome o;
  o.pass = wrong == 0;
  o.summary = fmt("tX(t) region map: %zu/%zu grid points differ from the |t_j| < 1 rule", wrong, total);
  return o;
}

Outcome criterion6() {
  double norm_err = 0.0, trace_err = 0.0;
  std::size_t rank_bad = 0, cases = 0;
  for (int i = 0; i <= 9; ++i)
    for (double th : {0.0, 1.0, 2.5})
      for (double ph : {0.0, 1.3}) {
        const Complex b = std::polar(i / 10.0, ph);
        const auto c = rigidity::caratheodory_extend(b, th);
        norm_err = std::max(norm_err, std::abs(oracle::spectral_norm(c.t) - 1.0));
        const Matrix d = Matrix::identity(3) - oracle::naive_mul(oracle::naive_adjoint(c.t), c.t);
        std::size_t big = 0;
        for (double v : oracle::eigs(d)) big += v > 1e-8;
        rank_bad += big != 1;
        trace_err = std::max(trace_err, std::abs(d.trace().real() - (1.0 - std::pow(std::abs(b), 6))));
        ++cases;
      }
  Outcome o;
  o.pass = norm_err <= 1e-9 && rank_bad == 0 && trace_err <= 1e-10;
  o.summary = fmt("%zu (b, theta) cases: max | ||T|| - 1 | = %.1e, rank-one defect failures %zu, max trace error %.1e",
                  cases, norm_err, rank_bad, trace_err);
  return o;
}

Outcome criterion7() {
  using rigidity::BoundVariant;
  double worst_slack = 1e300, worst_strict = 1e300;
  std::size_t cases = 0;
  for (double r : {0.0, 0.25, 0.5, 0.75})
    for (double lam : {0.3, 0.7, 0.95})
      for (double th : {0.0, 1.0, 2.5})
        for (auto v : {BoundVariant::XstarX, BoundVariant::XXstar, BoundVariant::YstarY, BoundVariant::YYstar}) {
          const auto lb = rigidity::lower_bound_subspace(std::polar(r, 0.8), th, lam, v);
          const double slack = lb.min_compressed_eig - lam * lam;
          worst_slack = std::min(worst_slack, slack);
          if (r >= 0.25) worst_strict = std::min(worst_strict, slack);
          ++cases;
        }
  Outcome o;
  o.pass = worst_slack >= -1e-12 && worst_strict >= 1e-6;
  o.summary = fmt("%zu cases over four variants: min(eig - lam^2) = %.2e, for |b| >= 0.25 = %.2e (need >= 1e-6)",
                  cases, worst_slack, worst_strict);
  return o;
}

Outcome criterion8() {
  using rigidity::CaseKind;
  Outcome o;
  std::mt19937_64 rng(8008);
  const ETuple pairs[] = {ETuple(Matrix::identity(1), Matrix::identity(1)), random_rigid(rng), random_rigid(rng)};
  rigidity::RigidityOptions opts;
  opts.b_grid = rigidity::default_b_grid();
  double diag0 = 0.0, swap0 = 0.0, min_off = 1e300;
  std::size_t rows = 0, bad = 0;
  for (const ETuple& e : pairs) {
    const auto rep = rigidity::rigidity_report(e, opts);
    const double refute = rigidity::swap_case_refute(e);
    for (const auto& row : rep.defects) {
      ++rows;
      const bool zero = row.b[0] == 0.0 && row.b[1] == 0.0;
      if (!std::isfinite(row.value)) {
        ++bad;
      } else if (zero && row.kind == CaseKind::Diagonal) {
        diag0 = std::max(diag0, std::abs(row.value - 1.0));
        bad += std::abs(row.value - 1.0) > 1e-8;
      } else if (zero) {
        // the b = 0 swap candidate is the linear swap map itself
        swap0 = std::max(swap0, std::abs(row.value - refute));
        bad += std::abs(row.value - refute) > 1e-8 || row.value <= 1 + 1e-6;
      } else {
        min_off = std::min(min_off, row.value - 1.0);
        bad += row.value <= 1 + 1e-6;
      }
    }
  }
  std::size_t rigid = 0, bidisk = 0, refute_bad = 0;
  for (int k = 0; k < 50; ++k) {
    auto [c1, c2] = k % 2 ? oracle::bidisk_pair(rng, 1 + k % 3, 3, 1 + (k / 2) % 2)
                          : std::pair{oracle::scaled_to_norm_one(oracle::ginibre(rng, 1 + k % 3, 3)),
                                      oracle::scaled_to_norm_one(oracle::ginibre(rng, 3, 1 + (k / 2) % 2))};
    const double lmax = oracle::gram_sum(c1, c2);
    const double v = rigidity::swap_case_refute(ETuple(c1, c2));
    if (lmax > 1 + 1e-6) {
      ++rigid;
      refute_bad += v <= 1 + 1e-6;
    } else {
      ++bidisk;
      refute_bad += std::abs(v - 1.0) > 1e-8;
    }
  }
  o.pass = bad == 0 && refute_bad == 0;
  o.summary = fmt("%zu defect rows on 3 rigid pairs, %zu off; swap refute wrong on %zu of 50 (%zu rigid, %zu bidisk)",
                  rows, bad, refute_bad, rigid, bidisk);
  o.details.push_back(fmt("diagonal b = 0: max |defect - 1| = %.1e (need <= 1e-8)", diag0));
  o.details.push_back(fmt("b != 0, both cases: min(defect - 1) = %.3e (need > 1e-6)", min_off));
  o.details.push_back(fmt("swap b = 0: defect equals lambda_max(C1*C1 + C2C2*) > 1 within %.1e; it is the linear "
                          "swap map, refuted by the swap check, not a value 1 point",
                          swap0));
  return o;
}

Outcome criterion9() {
  std::mt19937_64 rng(9009);
  double sum_err = 0.0, conj_err = 0.0;
  std::size_t region_bad = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t g = 1 + rep % 3, d = 1 + rep % 3;
    std::vector<Matrix> a;
    for (std::size_t s = 0; s < g; ++s) a.push_back(oracle::ginibre(rng, d, d, 0.5));
    const Pencil p(std::move(a));
    auto tuple = [&](std::size_t n) {
      std::vector<Matrix> m;
      for (std::size_t s = 0; s < g; ++s) m.push_back(oracle::ginibre(rng, n, n, 0.15));
      return MatrixTuple(std::move(m));
    };
    const MatrixTuple x = tuple(1 + rep % 2), y = tuple(1 + (rep / 2) % 3);
    const auto vx = membership(p, x), vy = membership(p, y), vs = membership(p, direct_sum(x, y));
    sum_err = std::max(sum_err, std::abs(vs.margin - std::min(vx.margin, vy.margin)));
    if (vx.region == Region::Interior && vy.region == Region::Interior) region_bad += vs.region != Region::Interior;
    const auto vc = membership(p, conjugate(x, oracle::random_unitary(rng, x.n())));
    conj_err = std::max(conj_err, std::abs(vc.margin - vx.margin));
    region_bad += vc.region != vx.region;
  }
  Outcome o;
  o.pass = sum_err <= 1e-9 && conj_err <= 1e-9 && region_bad == 0;
  o.summary = fmt("100 instances: direct-sum margin error %.1e, conjugation margin error %.1e, %zu verdict changes",
                  sum_err, conj_err, region_bad);
  return o;
}

Outcome criterion10() {
  const std::string data = FREESPEC_TEST_DATA;
  const std::vector<std::vector<std::string>> cmds{
      {"falsify-reinhardt", data + "/scalar_pencil.json", "--seed", "11"},
      {"falsify-reinhardt", data + "/e_pencil_unit.json", "--seed", "12", "--samples", "300"},
      {"certify-reinhardt", data + "/e_pencil_unit.json", "--seed", "13"},
      {"phase", data + "/triangle_graph.json", "--seed", "14"},
      {"rigidity", data + "/etuple_unit.json", "--seed", "15"},
      {"lemma-suite", "--seed", "16"},
  };
  std::size_t same = 0;
  for (const auto& c : cmds) {
    std::ostringstream a, b, err;
    setenv("FREESPEC_THREADS", "1", 1);
    const int ca = cli::run(c, a, err);
    setenv("FREESPEC_THREADS", "4", 1);
    const int cb = cli::run(c, b, err);
    same += ca == cb && a.str() == b.str() && !a.str().empty();
  }
  unsetenv("FREESPEC_THREADS");
  Outcome o;
  o.pass = same == cmds.size();
  o.summary = fmt("%zu/%zu CLI reports byte-identical across two runs (1 and 4 worker threads)", same, cmds.size());
  return o;
}

}  // namespace

int main() {
  struct Item {
    int id;
    double limit_s;  // 0 when the criterion states no runtime bound
    std::function<Outcome()> run;
  };
  const Item items[] = {{1, 10, criterion1}, {2, 60, criterion2},  {3, 5, criterion3}, {4, 0, criterion4},
                        {5, 0, criterion5},  {6, 0, criterion6},   {7, 0, criterion7}, {8, 120, criterion8},
                        {9, 0, criterion9},  {10, 0, criterion10}};
  int failed = 0;
  for (const auto& it : items) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = it.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt("%.2f s", secs);
    if (it.limit_s > 0) {
      timing += fmt(" < %.0f s", it.limit_s);
      if (secs >= it.limit_s) {
        o.pass = false;
        timing += " EXCEEDED";
      }
    }
    failed += !o.pass;
    std::printf("%s criterion %d: %s [%s]\n", o.pass ? "PASS" : "FAIL", it.id, o.summary.c_str(), timing.c_str());
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, std::size(items));
  return failed == 0 ? 0 : 1;
}

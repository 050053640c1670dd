#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "freespec/reinhardt.hpp"

namespace freespec::reinhardt {

namespace {

constexpr std::size_t kBatch = 16;

std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index) {
  const auto i = static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FREESPEC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

MatrixTuple falsify_sample(const Pencil& p, const FalsifyOptions& opts, std::size_t index,
                           graph::TorusPoint* gamma_out) {
  if (opts.levels.empty()) throw Error(ErrorCode::InvalidArgument, "levels must be nonempty");
  const std::size_t n = opts.levels[index % opts.levels.size()];
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "levels must be positive");

  auto rng = sample_rng(opts.seed, index);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0 * static_cast<double>(n)));
  std::vector<Matrix> mats;
  for (std::size_t s = 0; s < p.g(); ++s) {
    Matrix x(n, n);
    for (Complex& z : x.entries()) z = Complex(normal(rng), normal(rng));
    mats.push_back(std::move(x));
  }
  MatrixTuple x(std::move(mats));
  Matrix lam = eval_lambda(p, x);
  const double h = max_eig(lam + lam.adjoint());
  if (h > 0.0) x = scaled(x, 0.95 / h);

  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> angles(p.g());
  for (double& a : angles) a = angle(rng);
  if (gamma_out) *gamma_out = graph::TorusPoint::from_angles(std::move(angles));
  return x;
}

std::optional<FalsifyWitness> falsify_reinhardt(const Pencil& p, const FalsifyOptions& opts) {
  if (opts.samples == 0) return std::nullopt;
  if (opts.levels.empty()) throw Error(ErrorCode::InvalidArgument, "levels must be nonempty");
  for (std::size_t n : opts.levels) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "levels must be positive");
  }
  const double cutoff = 10.0 * opts.tol;

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{opts.samples};
  std::mutex mu;
  std::optional<FalsifyWitness> found;

  auto worker = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(kBatch);
      if (begin >= opts.samples || begin >= best.load()) return;
      const std::size_t end = std::min(begin + kBatch, opts.samples);
      for (std::size_t i = begin; i < end && i < best.load(); ++i) {
        graph::TorusPoint gamma;
        MatrixTuple x = falsify_sample(p, opts, i, &gamma);
        Matrix l = eval_pencil(p, torus_action(gamma.gammas(), x));
        if (cholesky_succeeds(l, cutoff)) continue;
        const double rotated = min_eig(l);
        if (rotated >= -cutoff) continue;
        std::lock_guard lock(mu);
        if (i < best.load()) {
          best.store(i);
          found = FalsifyWitness{i, x, gamma, min_eig(eval_pencil(p, x)), rotated};
        }
        break;
      }
    }
  };

  const std::size_t threads =
      std::min(resolve_threads(opts.threads), (opts.samples + kBatch - 1) / kBatch);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return found;
}

}  // namespace freespec::reinhardt

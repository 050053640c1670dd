#include <cmath>
#include <numbers>
#include <random>

#include "freespec/graph.hpp"

namespace freespec::graph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (std::uint64_t q : primes) {
      if (q * q > c) break;
      if (c % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double wrap(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace

TorusPoint TorusPoint::from_angles(std::vector<double> angles) {
  for (double& a : angles) {
    if (!std::isfinite(a)) throw Error(ErrorCode::NonFinite, "torus angle is not finite");
    a = wrap(a);
  }
  return TorusPoint{std::move(angles)};
}

std::vector<Complex> TorusPoint::gammas() const {
  std::vector<Complex> out;
  out.reserve(angles.size());
  for (double a : angles) out.push_back(std::polar(1.0, a));
  return out;
}

double smallest_relation_residual(const TorusPoint& gamma, int bound) {
  const std::size_t g = gamma.angles.size();
  if (bound < 1) throw Error(ErrorCode::InvalidArgument, "relation bound must be positive");
  const double states = std::pow(2.0 * bound + 1.0, static_cast<double>(g));
  if (states > 2e7) throw Error(ErrorCode::LimitExceeded, "relation search space too large");

  std::vector<int> rho(g, -bound);
  double best = INFINITY;
  for (;;) {
    bool nonzero = false;
    double sum = 0.0;
    for (std::size_t s = 0; s < g; ++s) {
      nonzero = nonzero || rho[s] != 0;
      sum += rho[s] * gamma.angles[s];
    }
    if (nonzero) best = std::min(best, std::abs(std::remainder(sum, kTwoPi)));
    std::size_t s = 0;
    while (s < g && rho[s] == bound) rho[s++] = -bound;
    if (s == g) break;
    ++rho[s];
  }
  return best;
}

TorusPoint sample_independent_torus(std::size_t g, std::uint64_t seed) {
  if (g == 0) throw Error(ErrorCode::InvalidArgument, "torus dimension must be positive");
  const auto primes = first_primes(g);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double u = 1.0 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u <= 1.0) continue;
    std::vector<double> angles(g);
    for (std::size_t s = 0; s < g; ++s) {
      double x = std::sqrt(static_cast<double>(primes[s])) * u;
      angles[s] = kTwoPi * (x - std::floor(x));
    }
    TorusPoint pt = TorusPoint::from_angles(std::move(angles));
    if (g > 6 || smallest_relation_residual(pt, 3) > 1e-6) return pt;
  }
  throw Error(ErrorCode::LimitExceeded, "no relation-free torus point found");
}

PhaseAssignment phase_assignment(const Potential& pot, const TorusPoint& gamma) {
  PhaseAssignment out;
  out.delta.reserve(pot.p.size());
  for (const IntVector& pv : pot.p) {
    if (pv.size() != gamma.angles.size()) {
      throw Error(ErrorCode::DimensionMismatch, "potential and torus point disagree on g");
    }
    double phase = 0.0;
    for (std::size_t s = 0; s < pv.size(); ++s) {
      phase += static_cast<double>(pv[s]) * gamma.angles[s];
    }
    out.delta.push_back(std::polar(1.0, wrap(phase)));
  }
  return out;
}

double phase_residual(const LabeledDag& g, const PhaseAssignment& phases,
                      const TorusPoint& gamma) {
  const auto gam = gamma.gammas();
  double worst = 0.0;
  for (const Edge& e : g.edges()) {
    Complex lhs = phases.delta.at(e.tail);
    Complex rhs = gam.at(static_cast<std::size_t>(e.label - 1)) * phases.delta.at(e.head);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace freespec::graph

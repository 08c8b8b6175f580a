#pragma once

#include <cstdint>
#include <cmath>
#include <numeric>
#include <vector>

namespace fedelastic {

// splitmix64 finalizer; the only mixing primitive used for seeding.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

enum class StreamPurpose : std::uint64_t {
  model_init = 1,
  sampling = 2,
  local_solve = 3,
  partition = 4,
  synthesis = 5,
  diagnostics = 6,
};

// Deterministic counter-based stream. One master seed fans out into
// independent streams keyed by (purpose, a, b) — typically (purpose, round,
// client) — so adding a consumer never perturbs any other stream. All
// samplers below are implemented locally; output is identical across
// platforms and thread schedules.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : state_(key) {}

  static RngStream derive(std::uint64_t master, StreamPurpose purpose,
                          std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t k = mix64(master ^ 0x243f6a8885a308d3ull);
    k = mix64(k ^ (static_cast<std::uint64_t>(purpose) * 0x452821e638d01377ull));
    k = mix64(k ^ ((a + 1) * 0x13198a2e03707344ull));
    k = mix64(k ^ ((b + 1) * 0xa4093822299f31d0ull));
    return RngStream(k);
  }

  // Independent substream; used e.g. for per-epoch batch shuffles.
  RngStream child(std::uint64_t salt) const {
    return RngStream(mix64(state_ ^ mix64(salt ^ 0xc2b2ae3d27d4eb4full)));
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // (0, 1]
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // [0, n); modulo draw, bias is immaterial at simulation scale.
  std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

  // Box-Muller, cosine branch only (one fresh pair of uniforms per draw).
  double normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double lognormal(double sigma) { return std::exp(sigma * normal()); }

  // Marsaglia-Tsang; shape boost for alpha < 1.
  double gamma(double alpha) {
    if (alpha < 1.0) {
      const double u = uniform_pos();
      return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = uniform_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Symmetric Dirichlet(alpha * 1_k).
  std::vector<double> dirichlet(double alpha, int k) {
    std::vector<double> p(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (auto& v : p) {
      v = gamma(alpha);
      sum += v;
    }
    for (auto& v : p) v /= sum;
    return p;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Index of one category drawn by unnormalized weights; caller ensures sum > 0.
  std::size_t categorical(const std::vector<double>& weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double r = uniform() * total;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      r -= weights[i];
      if (r < 0.0) return i;
    }
    return weights.size() - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace fedelastic

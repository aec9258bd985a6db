#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace taxiq {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// One independent random stream per stochastic source. The seed is derived
// from the master seed and a fixed (replication, zone, purpose) label, so the
// draw sequence of every source is independent of event interleaving and of
// how replications are spread over threads. All variate mappings are spelled
// out here; nothing depends on implementation-defined distributions.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  static std::uint64_t derive(std::uint64_t master, std::uint64_t rep, std::uint64_t zone,
                              std::uint64_t purpose) {
    std::uint64_t s = splitmix64(master ^ 0x51ed270b7a03f944ull);
    s = splitmix64(s ^ splitmix64(rep + 1));
    s = splitmix64(s ^ splitmix64(zone + 0x1000));
    return splitmix64(s ^ splitmix64(purpose + 0x2000000));
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log(1.0 - uniform()) / rate; }

  bool bernoulli(double p) { return uniform() < p; }

  // Index distributed by probs[0..n-1] (summing to ~1); residual rounding
  // mass lands on the last index with positive probability.
  int pick(const double* probs, int n) {
    const double u = uniform();
    double cum = 0.0;
    int last_positive = 0;
    for (int i = 0; i < n; ++i) {
      if (probs[i] <= 0.0) continue;
      last_positive = i;
      cum += probs[i];
      if (u < cum) return i;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace taxiq

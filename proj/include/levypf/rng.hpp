#pragma once

#include <cmath>
#include <cstdint>

// Deterministic, splittable random number streams.
//
// Every stochastic routine in the library receives an explicit Rng, and every
// logically independent piece of work (one particle at one time step at one
// level, one resampling pass, ...) gets its own stream derived from a
// (purpose, level, step, particle) key.  Results are therefore reproducible
// bit-for-bit regardless of how loops are scheduled across threads.

namespace levypf {

// SplitMix64 finalizer: a cheap 64-bit mixer with full avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream purposes; kept to a handful so keys stay readable in logs.
enum class Purpose : std::uint64_t {
  init = 1,       // initial kernel draw at step 1
  propagate = 2,  // kernel draws at steps >= 2
  resample = 3,   // resampling index draws
  data = 4,       // synthetic observation generation
  oracle = 5,     // brute-force oracle simulations in tests/benchmarks
  misc = 6,
};

// Packs (purpose, level, step, particle) into one 64-bit key:
// purpose 4 bits | level 6 bits | step 22 bits | particle 32 bits.
inline std::uint64_t stream_key(Purpose p, std::uint64_t level, std::uint64_t step,
                                std::uint64_t particle) {
  return (static_cast<std::uint64_t>(p) << 60) | ((level & 0x3fULL) << 54) |
         ((step & 0x3fffffULL) << 32) | (particle & 0xffffffffULL);
}

// Derives the per-run seed from the user-facing master seed; replicate and
// experiment indices keep repeated runs independent.
inline std::uint64_t derive_run_seed(std::uint64_t master, std::uint64_t replicate,
                                     std::uint64_t experiment = 0) {
  return mix64(mix64(master ^ 0x517cc1b727220a95ULL) + replicate) ^ mix64(experiment + 1);
}

// xoshiro256++ (Blackman & Vigna), seeded through a SplitMix64 chain.  Small,
// fast, and passes the usual statistical batteries; plenty for Monte Carlo.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed); }

  Rng(std::uint64_t run_seed, std::uint64_t key) { reseed(mix64(run_seed ^ mix64(key))); }

  void reseed(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      w = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1): bin midpoints, so logs never see 0 or 1 exactly.
  double uniform01_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Inverse-CDF exponential; strictly positive by construction, which keeps
  // jump times strictly increasing.
  double exponential(double rate) { return -std::log(uniform01_open()) / rate; }

  // Box-Muller pair; always consumes exactly two uniforms.
  void normal_pair(double& n1, double& n2) {
    const double u1 = uniform01_open();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    n1 = r * std::cos(theta);
    n2 = r * std::sin(theta);
  }

  // Single standard normal (consumes two uniforms, returns the cosine leg).
  double normal() {
    double n1, n2;
    normal_pair(n1, n2);
    return n1;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
};

// Bundles the run seed so call sites can spawn keyed streams tersely.
struct StreamFactory {
  std::uint64_t run_seed = 0;

  Rng make(Purpose p, std::uint64_t level, std::uint64_t step, std::uint64_t particle) const {
    return Rng(run_seed, stream_key(p, level, step, particle));
  }
};

}  // namespace levypf

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "latsmooth/common.hpp"

namespace latsmooth {

// xoshiro256++ (Blackman/Vigna), state expanded from the seed with
// splitmix64. Chosen over std::mt19937 + <random> distributions because the
// standard distributions are not bit-reproducible across library
// implementations; this generator plus our own transforms is.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on (0, 1]; safe as a log() argument.
  double next_unit();

  // Standard normal via Box-Muller (two uniforms per coordinate, cosine
  // branch only, so the stream position is independent of call pairing).
  double next_gaussian();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Child seed for trial block `block`: seed ^ splitmix64(block + 1).
// Parallel Monte Carlo derives one Rng per block, so results depend only on
// (seed, trials), never on the worker count.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t block);

// Gaussian with density rho_s(x)/s^n = e^{-pi ||x||^2 / s^2} / s^n, i.e.
// coordinate standard deviation s/sqrt(2*pi). This is the rho normalization,
// not unit variance.
Vec sample_gaussian(double s, int n, Rng& rng);

// Uniform on the closed ball of radius r: normalized Gaussian direction,
// radius r * U^(1/n).
Vec sample_ball(double r, int n, Rng& rng);

// h(z) = <a, z> xor b over GF(2); the 2^(n+1) member affine family is
// pairwise independent on {0,1}^n.
struct HashFn {
  std::vector<std::uint8_t> a;
  std::uint8_t b = 0;

  int eval(const std::vector<std::uint8_t>& z) const;
};

HashFn sample_hash(int n, Rng& rng);

// z uniform on {0,1}^n, then h uniform over the family conditioned on
// h(z) = bit (exactly half the family qualifies for any z).
std::pair<std::vector<std::uint8_t>, HashFn> sample_conditioned_pair(int bit, int n, Rng& rng);

// Index h = 0 .. 2^(n+1)-1 -> family member, for exhaustive enumeration.
HashFn hash_from_index(int n, std::uint64_t index);

// ---- seeded Monte Carlo over trial blocks ----

constexpr std::uint64_t kTrialBlock = 8192;

// Counts trials where the event fires. Blocks may run on `workers` threads;
// the count is a sum of per-block integers, so the result is independent of
// the worker count. The callback's second argument is the worker slot in
// [0, workers), for per-worker scratch state such as enumerators.
std::uint64_t mc_count(std::uint64_t trials, std::uint64_t seed, int workers,
                       const std::function<bool(Rng&, int)>& event);

// Mean of a per-trial statistic; per-block partial sums are combined in
// block order.
double mc_mean(std::uint64_t trials, std::uint64_t seed, int workers,
               const std::function<double(Rng&, int)>& stat);

}  // namespace latsmooth

#include "latsmooth/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace latsmooth {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t block) {
  return seed ^ splitmix64(block + 1);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    s = z ^ (z >> 31);
  }
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t Rng::next_u64() {
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

double Rng::next_unit() {
  // 53 uniform bits, shifted into (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::next_gaussian() {
  const double u1 = next_unit();
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vec sample_gaussian(double s, int n, Rng& rng) {
  if (s <= 0.0) throw std::invalid_argument("sample_gaussian: s must be positive");
  const double coord_sd = s / std::sqrt(2.0 * M_PI);
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = coord_sd * rng.next_gaussian();
  return x;
}

Vec sample_ball(double r, int n, Rng& rng) {
  if (r <= 0.0) throw std::invalid_argument("sample_ball: r must be positive");
  Vec x(n);
  double nrm2 = 0.0;
  do {
    for (int i = 0; i < n; ++i) {
      x[i] = rng.next_gaussian();
      nrm2 += x[i] * x[i];
    }
  } while (nrm2 == 0.0);
  const double radius = r * std::pow(rng.next_unit(), 1.0 / n);
  const double f = radius / std::sqrt(nrm2);
  for (int i = 0; i < n; ++i) x[i] *= f;
  return x;
}

int HashFn::eval(const std::vector<std::uint8_t>& z) const {
  int acc = b;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= (a[i] & z[i]);
  return acc & 1;
}

HashFn sample_hash(int n, Rng& rng) {
  HashFn h;
  h.a.resize(n);
  for (int i = 0; i < n; ++i) h.a[i] = static_cast<std::uint8_t>(rng.next_u64() & 1);
  h.b = static_cast<std::uint8_t>(rng.next_u64() & 1);
  return h;
}

std::pair<std::vector<std::uint8_t>, HashFn> sample_conditioned_pair(int bit, int n, Rng& rng) {
  std::vector<std::uint8_t> z(n);
  for (int i = 0; i < n; ++i) z[i] = static_cast<std::uint8_t>(rng.next_u64() & 1);
  HashFn h;
  h.a.resize(n);
  int az = 0;
  for (int i = 0; i < n; ++i) {
    h.a[i] = static_cast<std::uint8_t>(rng.next_u64() & 1);
    az ^= (h.a[i] & z[i]);
  }
  // exactly one b completes <a,z> xor b = bit, so h stays uniform on the
  // conditioned half of the family
  h.b = static_cast<std::uint8_t>((az ^ bit) & 1);
  return {std::move(z), h};
}

HashFn hash_from_index(int n, std::uint64_t index) {
  HashFn h;
  h.a.resize(n);
  for (int i = 0; i < n; ++i) h.a[i] = static_cast<std::uint8_t>((index >> i) & 1);
  h.b = static_cast<std::uint8_t>((index >> n) & 1);
  return h;
}

namespace {

template <typename Acc, typename PerTrial>
Acc run_blocks(std::uint64_t trials, std::uint64_t seed, int workers, const PerTrial& per_trial) {
  const std::uint64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<Acc> partial(blocks, Acc{});
  auto run_block = [&](std::uint64_t b, int widx) {
    Rng rng(derive_seed(seed, b));
    const std::uint64_t begin = b * kTrialBlock;
    const std::uint64_t end = std::min(trials, begin + kTrialBlock);
    Acc acc{};
    for (std::uint64_t t = begin; t < end; ++t) acc += per_trial(rng, widx);
    partial[b] = acc;
  };
  if (workers <= 1 || blocks <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b, 0);
  } else {
    const int nthreads = static_cast<int>(std::min<std::uint64_t>(workers, blocks));
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int w = 0; w < nthreads; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += nthreads) run_block(b, w);
      });
    }
    for (auto& th : pool) th.join();
  }
  Acc total{};
  for (const Acc& a : partial) total += a;
  return total;
}

}  // namespace

std::uint64_t mc_count(std::uint64_t trials, std::uint64_t seed, int workers,
                       const std::function<bool(Rng&, int)>& event) {
  return run_blocks<std::uint64_t>(trials, seed, workers,
                                   [&](Rng& rng, int w) { return event(rng, w) ? 1u : 0u; });
}

double mc_mean(std::uint64_t trials, std::uint64_t seed, int workers,
               const std::function<double(Rng&, int)>& stat) {
  if (trials == 0) return 0.0;
  const double sum = run_blocks<double>(trials, seed, workers, stat);
  return sum / static_cast<double>(trials);
}

}  // namespace latsmooth

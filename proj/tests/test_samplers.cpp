#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "latsmooth/rng.hpp"

using namespace latsmooth;

TEST_CASE("identical seeds reproduce identical streams") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(12345), d(54321);
  bool differs = false;
  for (int i = 0; i < 10; ++i) differs |= (c.next_u64() != d.next_u64());
  CHECK(differs);

  Rng g1(9), g2(9);
  Vec x1 = sample_gaussian(1.5, 4, g1);
  Vec x2 = sample_gaussian(1.5, 4, g2);
  CHECK(x1 == x2);  // bit-for-bit
}

TEST_CASE("gaussian moments match the rho normalization") {
  Rng rng(2024);
  const int trials = 100000;
  double mean0 = 0.0, mean1 = 0.0;
  for (int i = 0; i < trials; ++i) {
    Vec x = sample_gaussian(1.0, 2, rng);
    mean0 += x[0];
    mean1 += x[1];
  }
  CHECK(std::fabs(mean0 / trials) < 0.02);
  CHECK(std::fabs(mean1 / trials) < 0.02);

  double sq = 0.0;
  for (int i = 0; i < trials; ++i) sq += norm_sq(sample_gaussian(1.0, 4, rng));
  // E||X||^2 = n/(2 pi) = 0.636619772368
  CHECK(sq / trials == doctest::Approx(0.636619772368).epsilon(0.03));

  CHECK_THROWS_AS(sample_gaussian(0.0, 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_gaussian(-1.0, 2, rng), std::invalid_argument);
}

TEST_CASE("gaussian tail stays under ((1+eps)e^-eps)^(n/2)") {
  // frozen bound values: (n=20, eps=0.3) -> 0.686357015878
  struct Case {
    int n;
    double eps;
  };
  const Case cases[] = {{10, 0.2}, {20, 0.3}, {40, 0.1}};
  const int trials = 100000;
  for (const Case& c : cases) {
    Rng rng(500 + c.n);
    const double thresh = (1.0 + c.eps) * c.n / (2.0 * M_PI);
    int count = 0;
    for (int i = 0; i < trials; ++i)
      if (norm_sq(sample_gaussian(1.0, c.n, rng)) >= thresh) ++count;
    const double bound = std::pow((1.0 + c.eps) * std::exp(-c.eps), c.n / 2.0);
    const double freq = static_cast<double>(count) / trials;
    const double band = 4.0 * std::sqrt(bound * (1.0 - bound) / trials);
    CHECK(freq <= bound + band);
  }
  CHECK(std::pow(1.3 * std::exp(-0.3), 10.0) == doctest::Approx(0.686357015878));
}

TEST_CASE("ball samples are uniform in the ball") {
  Rng rng(77);
  const int trials = 100000;
  int inner = 0;
  Vec mean(3, 0.0);
  std::vector<double> radii;
  radii.reserve(trials);
  for (int i = 0; i < trials; ++i) {
    Vec e = sample_ball(1.0, 3, rng);
    const double nrm = norm(e);
    CHECK(nrm <= 1.0 + 1e-12);
    if (nrm <= 0.5) ++inner;
    for (int k = 0; k < 3; ++k) mean[k] += e[k];
    radii.push_back(nrm);
  }
  CHECK(static_cast<double>(inner) / trials == doctest::Approx(0.125).epsilon(0.08));
  // coordinate variance r^2/(n+2) = 1/5; 3 sigma band on the mean
  const double band = 3.0 * std::sqrt(0.2 / trials);
  for (int k = 0; k < 3; ++k) CHECK(std::fabs(mean[k] / trials) < band);

  // radial CDF: Pr[||e|| <= t] = t^n, Kolmogorov-Smirnov distance <= 0.01
  std::sort(radii.begin(), radii.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double emp_hi = static_cast<double>(i + 1) / trials;
    const double emp_lo = static_cast<double>(i) / trials;
    const double model = std::pow(radii[i], 3.0);
    ks = std::max({ks, std::fabs(emp_hi - model), std::fabs(emp_lo - model)});
  }
  CHECK(ks <= 0.01);

  CHECK_THROWS_AS(sample_ball(0.0, 3, rng), std::invalid_argument);
}

TEST_CASE("hash family is exhaustively pairwise independent") {
  // n=2, z=(1,0): exactly half of the 8 members map z to 0
  {
    std::vector<std::uint8_t> z = {1, 0};
    int zeros = 0;
    for (std::uint64_t idx = 0; idx < 8; ++idx)
      if (hash_from_index(2, idx).eval(z) == 0) ++zeros;
    CHECK(zeros == 4);
  }
  // joint distribution over distinct pairs is uniform on {0,1}^2, all n <= 6
  for (int n = 1; n <= 6; ++n) {
    const std::uint32_t points = 1u << n;
    const std::uint64_t family = 2ull << n;
    for (std::uint32_t zi = 0; zi < points; ++zi) {
      for (std::uint32_t zj = zi + 1; zj < points; ++zj) {
        std::vector<std::uint8_t> z1(n), z2(n);
        for (int b = 0; b < n; ++b) {
          z1[b] = (zi >> b) & 1;
          z2[b] = (zj >> b) & 1;
        }
        int counts[4] = {0, 0, 0, 0};
        for (std::uint64_t idx = 0; idx < family; ++idx) {
          HashFn h = hash_from_index(n, idx);
          counts[2 * h.eval(z1) + h.eval(z2)]++;
        }
        for (int c = 0; c < 4; ++c) CHECK(counts[c] == static_cast<int>(family / 4));
      }
    }
  }
  // n=1, z=(0): h(z) = b, a uniform bit over the family
  {
    std::vector<std::uint8_t> z = {0};
    int zeros = 0;
    for (std::uint64_t idx = 0; idx < 4; ++idx)
      if (hash_from_index(1, idx).eval(z) == 0) ++zeros;
    CHECK(zeros == 2);
  }
}

TEST_CASE("conditioned pair satisfies h(z) = b and keeps z uniform") {
  Rng rng(31337);
  for (int i = 0; i < 10000; ++i) {
    const int b = static_cast<int>(rng.next_u64() & 1);
    auto [z, h] = sample_conditioned_pair(b, 4, rng);
    CHECK(h.eval(z) == b);
  }

  // chi-squared over z in {0,1}^3 at 0.001 significance (df = 7 -> 24.32)
  const int trials = 100000;
  Rng rng2(99);
  int counts[8] = {0};
  for (int i = 0; i < trials; ++i) {
    auto [z, h] = sample_conditioned_pair(0, 3, rng2);
    counts[z[0] | (z[1] << 1) | (z[2] << 2)]++;
  }
  const double expect = trials / 8.0;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 24.32);

  // n=1, b=0, z=(1): exactly the 2 of 4 members with a xor b_h = 0 qualify
  Rng rng3(5);
  bool seen[4] = {false, false, false, false};
  for (int i = 0; i < 200; ++i) {
    auto [z, h] = sample_conditioned_pair(0, 1, rng3);
    if (z[0] != 1) continue;
    CHECK(((h.a[0] ^ h.b) & 1) == 0);
    seen[h.a[0] | (h.b << 1)] = true;
  }
  CHECK(seen[0]);  // a=0,b=0
  CHECK(seen[3]);  // a=1,b=1
  CHECK_FALSE(seen[1]);
  CHECK_FALSE(seen[2]);
}

TEST_CASE("monte carlo results are independent of the worker count") {
  auto event = [](Rng& rng, int) { return (rng.next_u64() & 3) == 0; };
  const std::uint64_t t = 100000;
  const std::uint64_t c1 = mc_count(t, 4242, 1, event);
  const std::uint64_t c4 = mc_count(t, 4242, 4, event);
  CHECK(c1 == c4);
  const double m1 = mc_mean(t, 4242, 1, [](Rng& rng, int) { return rng.next_unit(); });
  const double m3 = mc_mean(t, 4242, 3, [](Rng& rng, int) { return rng.next_unit(); });
  CHECK(m1 == m3);  // identical block partition, identical combine order
}

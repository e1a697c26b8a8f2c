#include "latsmooth/geometry.hpp"

#include <cmath>
#include <limits>

#include "latsmooth/gauss_sums.hpp"

namespace latsmooth {

ProbEstimate binomial_estimate(std::uint64_t successes, std::uint64_t trials,
                               std::uint64_t seed) {
  ProbEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.mean = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  e.halfwidth = trials ? 1.96 * std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials))
                       : 0.0;
  return e;
}

SandwichReport make_sandwich(double lower, const ProbEstimate& middle, double upper) {
  SandwichReport r;
  r.lower = lower;
  r.upper = upper;
  r.middle = middle;
  const double hw = middle.halfwidth;
  r.satisfied = (lower <= middle.mean + hw) && (middle.mean - hw <= upper);
  const bool surely_above_lower = lower <= middle.mean - hw;
  const bool surely_below_upper = middle.mean + hw <= upper;
  if (surely_above_lower && surely_below_upper)
    r.verdict = SandwichVerdict::satisfied;
  else if (!r.satisfied)
    r.verdict = SandwichVerdict::violated;
  else
    r.verdict = SandwichVerdict::undecided;
  return r;
}

bool shape_contains(const Shape& s, const Vec& x) {
  if (const Ball* b = std::get_if<Ball>(&s)) return norm_sq(x) <= b->radius * b->radius;
  const Box& box = std::get<Box>(s);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::fabs(x[i]) > box.halfwidths[i]) return false;
  return true;
}

namespace {

// Detects a diagonal column matrix; returns per-coordinate spacings.
std::optional<Vec> diagonal_spacings(const Basis& basis) {
  const int n = basis.dim();
  double scale = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(basis.column(j)[i]));
  Vec d(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double v = basis.column(j)[i];
      if (i == j) {
        d[j] = std::fabs(v);
      } else if (std::fabs(v) > 1e-14 * scale) {
        return std::nullopt;
      }
    }
    if (d[j] <= 0.0) return std::nullopt;
  }
  return d;
}

}  // namespace

VoronoiTester::VoronoiTester(const Basis& basis) : diag_(diagonal_spacings(basis)) {
  if (!diag_) en_.emplace(basis);
}

bool VoronoiTester::contains(const Vec& x) {
  if (diag_) {
    // V = product of intervals [-d_j/2, d_j/2], closed
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double h = 0.5 * (*diag_)[j];
      if (std::fabs(x[j]) > h + kTieTol * std::max(1.0, h)) return false;
    }
    return true;
  }
  return en_->in_voronoi(x);
}

OverlapTester::OverlapTester(const Basis& basis) : diag_(diagonal_spacings(basis)) {
  if (!diag_) en_.emplace(basis);
}

bool OverlapTester::near_nonzero(const Vec& x, double r) {
  if (diag_) {
    const Vec& d = *diag_;
    // nearest lattice point; if it is nonzero it already lies within ||x||
    double dist2 = 0.0;
    bool rounded_zero = true;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double k = std::floor(x[j] / d[j] + 0.5);
      if (k != 0.0) rounded_zero = false;
      const double diff = x[j] - k * d[j];
      dist2 += diff * diff;
    }
    if (!rounded_zero) return dist2 <= r * r * (1.0 + 1e-12);
    // nearest nonzero point: move one coordinate to its nearest nonzero
    // multiple, choosing the cheapest coordinate
    double best = std::numeric_limits<double>::infinity();
    double base = norm_sq(x);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double off = d[j] - std::fabs(x[j]);
      best = std::min(best, base - x[j] * x[j] + off * off);
    }
    return best <= r * r * (1.0 + 1e-12);
  }
  return en_->near_nonzero(x, r);
}

bool in_voronoi(const Basis& basis, const Vec& x) {
  VoronoiTester t(basis);
  return t.contains(x);
}

ProbEstimate voronoi_gaussian_measure(const Basis& basis, double s, std::uint64_t trials,
                                      std::uint64_t seed, int workers) {
  if (!(s > 0.0)) throw std::invalid_argument("voronoi_gaussian_measure: s must be positive");
  const int n = basis.dim();
  std::vector<VoronoiTester> testers(std::max(workers, 1), VoronoiTester(basis));
  std::uint64_t hits = mc_count(trials, seed, workers, [&](Rng& rng, int w) {
    return testers[w].contains(sample_gaussian(s, n, rng));
  });
  return binomial_estimate(hits, trials, seed);
}

ProbEstimate overlap_fraction(const Basis& basis, double r, std::uint64_t trials,
                              std::uint64_t seed, int workers) {
  if (!(r > 0.0)) throw std::invalid_argument("overlap_fraction: r must be positive");
  const int n = basis.dim();
  std::vector<OverlapTester> testers(std::max(workers, 1), OverlapTester(basis));
  std::uint64_t hits = mc_count(trials, seed, workers, [&](Rng& rng, int w) {
    return testers[w].near_nonzero(sample_ball(r, n, rng), r);
  });
  return binomial_estimate(hits, trials, seed);
}

SandwichReport check_voronoi_sandwich(const Basis& basis, double s, std::uint64_t trials,
                                      std::uint64_t seed, int workers) {
  CertifiedSum at_s = rho_sum_nonzero(basis, s, 1e-10);
  CertifiedSum at_2s = rho_sum_nonzero(basis, 2.0 * s, 1e-10);
  const double lower = at_s.value / (1.0 + at_s.value);
  const double upper = at_2s.value + at_2s.tail_bound;
  ProbEstimate inside = voronoi_gaussian_measure(basis, s, trials, seed, workers);
  ProbEstimate middle = inside;
  middle.mean = 1.0 - inside.mean;  // 1 - gamma_s(V), same halfwidth
  return make_sandwich(lower, middle, upper);
}

SandwichReport check_overlap_sandwich(const Basis& basis, double r, double delta,
                                      std::uint64_t trials, std::uint64_t seed, int workers) {
  if (!(delta > 0.0 && delta < 0.25))
    throw std::invalid_argument("check_overlap_sandwich: delta must be in (0, 1/4)");
  const int n = basis.dim();
  const double s = r * std::sqrt(2.0 * M_PI / n);
  const double s_lo = s / (1.0 + delta);
  CertifiedSum at_lo = rho_sum_nonzero(basis, s_lo, 1e-10);
  CertifiedSum at_2s = rho_sum_nonzero(basis, 2.0 * s, 1e-10);
  const double lower =
      at_lo.value / (1.0 + at_lo.value) - std::exp(-(2.0 * n / 3.0) * delta * delta);
  const double upper = 2.0 * (at_2s.value + at_2s.tail_bound);
  ProbEstimate middle = overlap_fraction(basis, r, trials, seed, workers);
  return make_sandwich(lower, middle, upper);
}

OverlapRadii ball_overlap_radii(const Basis& basis, double eps) {
  const int n = basis.dim();
  // the asymptotic regime floor 2^(-n/4) exceeds 1/3 for n < 7, which would
  // make the admissible interval empty; cap it at 2^-5 for desk-scale n
  const double eps_min = std::min(std::pow(2.0, -0.25 * n), 0.03125);
  if (!(eps >= eps_min && eps <= 1.0 / 3.0)) {
    throw RegimeError("ball_overlap_radii: eps outside [min(2^(-n/4), 2^-5), 1/3] regime");
  }
  OverlapRadii out;
  out.eta_dual = smoothing_parameter(dual_basis(basis), eps).eta;
  out.r_eps = std::sqrt(n / (2.0 * M_PI)) / (2.0 * out.eta_dual);
  out.delta = std::sqrt(3.0 / (2.0 * n) * std::log(4.0 / eps));
  out.r_upper = 2.0 * (1.0 + out.delta) * out.r_eps;
  return out;
}

double sphere_cap_bound(const Vec& y, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("sphere_cap_bound: r must be positive");
  const int n = static_cast<int>(y.size());
  const double s = r * std::sqrt(2.0 * M_PI / n);
  return 2.0 * std::exp(-M_PI * norm_sq(y) / (4.0 * s * s));
}

TranslateCheck check_translate_bound(const Shape& s_shape, const Vec& y, double s,
                                     std::uint64_t trials, std::uint64_t seed, int workers) {
  const int n = static_cast<int>(y.size());
  // two passes over the same seed score both events on identical Gaussian
  // streams (coupled comparison)
  std::uint64_t shifted_hits = mc_count(trials, seed, workers, [&](Rng& rng, int) {
    Vec x = sample_gaussian(s, n, rng);
    return shape_contains(s_shape, sub(x, y));
  });
  std::uint64_t base_hits = mc_count(trials, seed, workers, [&](Rng& rng, int) {
    return shape_contains(s_shape, sample_gaussian(s, n, rng));
  });
  TranslateCheck out;
  out.shifted = binomial_estimate(shifted_hits, trials, seed);
  out.base = binomial_estimate(base_hits, trials, seed);
  out.rho_y = std::exp(-M_PI * norm_sq(y) / (s * s));
  out.satisfied = out.shifted.mean + out.shifted.halfwidth >=
                  (out.base.mean - out.base.halfwidth) * out.rho_y;
  return out;
}

TransferCheck check_gauss_unif_transfer(int n, const Shape& k_shape, double r, double s,
                                        std::uint64_t trials, std::uint64_t seed, int workers) {
  if (!(n >= 1)) throw std::invalid_argument("check_gauss_unif_transfer: dimension must be >= 1");
  if (!(r > 0.0)) throw std::invalid_argument("check_gauss_unif_transfer: r must be positive");
  if (!(s > 0.0)) throw std::invalid_argument("check_gauss_unif_transfer: s must be positive");

  const double r2 = r * r;
  // conditional ratio from one Gaussian stream, counted in two passes over
  // the same seed
  std::uint64_t in_ball = mc_count(trials, seed, workers, [&](Rng& rng, int) {
    return norm_sq(sample_gaussian(s, n, rng)) <= r2;
  });
  std::uint64_t in_ball_outside_k = mc_count(trials, seed, workers, [&](Rng& rng, int) {
    Vec x = sample_gaussian(s, n, rng);
    return norm_sq(x) <= r2 && !shape_contains(k_shape, x);
  });
  std::uint64_t vol_outside =
      mc_count(trials, derive_seed(seed, 0x5eedull), workers, [&](Rng& rng, int) {
        return !shape_contains(k_shape, sample_ball(r, n, rng));
      });

  TransferCheck out;
  out.gauss_ratio = binomial_estimate(in_ball_outside_k, std::max<std::uint64_t>(in_ball, 1), seed);
  out.volume_ratio = binomial_estimate(vol_outside, trials, seed);
  out.satisfied = out.gauss_ratio.mean <=
                  out.volume_ratio.mean + out.gauss_ratio.halfwidth + out.volume_ratio.halfwidth;
  return out;
}

}  // namespace latsmooth

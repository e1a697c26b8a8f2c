#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "latsmooth/basis.hpp"
#include "latsmooth/common.hpp"
#include "latsmooth/enumerate.hpp"
#include "latsmooth/rng.hpp"

namespace latsmooth {

struct ProbEstimate {
  double mean = 0.0;
  double halfwidth = 0.0;  // 1.96 * sqrt(mean(1-mean)/trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

ProbEstimate binomial_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed);

enum class SandwichVerdict { satisfied, violated, undecided };

// lower <= middle <= upper, where the bounds are certified sums and the
// middle is a Monte Carlo estimate. `satisfied` allows the CI halfwidth as
// slack; `verdict` reports undecided when a bound falls inside the CI.
struct SandwichReport {
  double lower = 0.0;
  double upper = 0.0;
  ProbEstimate middle;
  bool satisfied = false;
  SandwichVerdict verdict = SandwichVerdict::undecided;
};

SandwichReport make_sandwich(double lower, const ProbEstimate& middle, double upper);

// Symmetric membership shapes for the measure-comparison checks.
struct Ball {
  double radius;
};
struct Box {
  Vec halfwidths;
};
using Shape = std::variant<Ball, Box>;

bool shape_contains(const Shape& s, const Vec& x);

// Closed Voronoi cell membership test with a diagonal-basis fast path.
class VoronoiTester {
 public:
  explicit VoronoiTester(const Basis& basis);
  bool contains(const Vec& x);

 private:
  std::optional<Vec> diag_;  // |column j| spacings when the basis is diagonal
  std::optional<Enumerator> en_;
};

// Event dist(x, L \ {0}) <= r, same fast path.
class OverlapTester {
 public:
  explicit OverlapTester(const Basis& basis);
  bool near_nonzero(const Vec& x, double r);

 private:
  std::optional<Vec> diag_;
  std::optional<Enumerator> en_;
};

bool in_voronoi(const Basis& basis, const Vec& x);

// gamma_s(V(L)) = Pr[X in V(L)] for X ~ D_s.
ProbEstimate voronoi_gaussian_measure(const Basis& basis, double s, std::uint64_t trials,
                                      std::uint64_t seed, int workers = 1);

// Overlap(L, r) = Pr over e uniform in rB of dist(e, L \ {0}) <= r.
ProbEstimate overlap_fraction(const Basis& basis, double r, std::uint64_t trials,
                              std::uint64_t seed, int workers = 1);

// rho_s(L\0)/rho_s(L) <= 1 - gamma_s(V) <= rho_{2s}(L\0).
SandwichReport check_voronoi_sandwich(const Basis& basis, double s, std::uint64_t trials,
                                      std::uint64_t seed, int workers = 1);

// rho_{s/(1+d)}(L\0)/rho_{s/(1+d)}(L) - e^{-(2n/3)d^2} <= Overlap(L, r)
// <= 2 rho_{2s}(L\0), with s = r sqrt(2 pi / n).
SandwichReport check_overlap_sandwich(const Basis& basis, double r, double delta,
                                      std::uint64_t trials, std::uint64_t seed, int workers = 1);

struct OverlapRadii {
  double r_eps = 0.0;    // sqrt(n/2pi) / (2 eta_eps(dual))
  double r_upper = 0.0;  // 2 (1+delta) r_eps
  double delta = 0.0;    // sqrt((3/2n) ln(4/eps))
  double eta_dual = 0.0;
};

// Bracketing radii for ~eps ball overlap; eps must lie in [2^(-n/4), 1/3].
OverlapRadii ball_overlap_radii(const Basis& basis, double eps);

// 2 e^{-pi ||y/(2s)||^2} with s = r sqrt(2 pi / n): upper bound on the
// fractional volume of the intersection of radius-r balls offset by y.
double sphere_cap_bound(const Vec& y, double r);

struct TranslateCheck {
  ProbEstimate shifted;  // Pr[X in S + y]
  ProbEstimate base;     // Pr[X in S]
  double rho_y = 0.0;
  bool satisfied = false;  // shifted >= base * rho_y within CI slack
};

// gamma_s(S + y) >= gamma_s(S) * rho_s(y) for symmetric S.
TranslateCheck check_translate_bound(const Shape& s_shape, const Vec& y, double s,
                                     std::uint64_t trials, std::uint64_t seed, int workers = 1);

struct TransferCheck {
  ProbEstimate gauss_ratio;   // gamma_s(rB \ K) / gamma_s(rB)
  ProbEstimate volume_ratio;  // vol(rB \ K) / vol(rB)
  bool satisfied = false;     // gauss <= volume within CI slack
};

// The Gaussian is more biased toward the origin than the uniform measure.
TransferCheck check_gauss_unif_transfer(int n, const Shape& k_shape, double r, double s,
                                        std::uint64_t trials, std::uint64_t seed,
                                        int workers = 1);

}  // namespace latsmooth

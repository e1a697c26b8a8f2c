#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "latsmooth/basis.hpp"
#include "latsmooth/common.hpp"

namespace latsmooth {

struct EnumRequest {
  Basis basis;
  Vec center;
  double radius = 0.0;
  std::uint64_t budget = kDefaultPointBudget;
};

enum class EnumStatus { complete, truncated };

enum class Verdict { yes, no, undecided };

const char* verdict_name(Verdict v);

struct DecisionReport {
  Verdict verdict = Verdict::undecided;
  double sum_u = 0.0;       // decider sum u (det) / rejection frequency (bdd)
  std::uint64_t point_count = 0;  // enumerated points (det) / trials (bdd)
  double threshold = 0.0;
  bool early_abort = false;
  double halfwidth = 0.0;   // only used by the Monte Carlo decider
  bool non_promise = false; // set when the instance provably violates the promise
};

// Depth-first enumeration over Gram-Schmidt coordinates, with reusable
// per-basis state. Radius comparisons are inclusive up to a small relative
// slack so that boundary points are reported.
class Enumerator {
 public:
  explicit Enumerator(const Basis& basis);

  const Basis& basis() const { return basis_; }

  // Visits every lattice point v with ||v - center|| <= radius, each once.
  // The callback gets (point, integer coefficients) and may return false to
  // stop. Returns truncated when the point budget was hit first.
  EnumStatus enumerate(const Vec& center, double radius, std::uint64_t budget,
                       const std::function<bool(const Vec&, const std::vector<long long>&)>& visit);

  // Closest lattice point to t; distance ties (within kTieTol) resolved
  // toward the lexicographically smallest coefficient vector.
  Vec closest(const Vec& t, std::uint64_t budget = 0);
  std::pair<Vec, std::vector<long long>> closest_with_coefs(const Vec& t, std::uint64_t budget = 0);

  // Closed Voronoi cell membership: ||x|| <= ||x - v|| for every lattice v,
  // boundary ties inside.
  bool in_voronoi(const Vec& x);

  // True when some nonzero lattice point lies within `radius` of x.
  bool near_nonzero(const Vec& x, double radius);

  // Babai nearest-plane point (used to seed the closest-point search).
  std::vector<long long> babai_coefs(const Vec& t) const;

 private:
  Basis basis_;
  int n_;
  std::vector<Vec> gs_;  // Gram-Schmidt vectors
  std::vector<Vec> mu_;  // mu_[j][k], k < j: GS coefficients
  Vec gs_norm_sq_;       // ||b*_k||^2
  // workspace reused across calls; instances are single-consumer
  Vec tau_;
  std::vector<long long> coef_;
  Vec point_;

  void project_target(const Vec& center);
  void coefs_to_point(const std::vector<long long>& coefs, Vec& out) const;
  template <typename Visit>
  bool descend(int k, double partial, double& r2, Visit&& visit);
};

// One-shot wrappers over Enumerator.
EnumStatus ball_enum(const EnumRequest& req,
                     const std::function<bool(const Vec&, const std::vector<long long>&)>& visit);
// Collects the full point set; throws BudgetExceeded on truncation.
std::vector<std::pair<Vec, std::vector<long long>>> ball_enum_collect(const EnumRequest& req);

Vec cvp(const Basis& basis, const Vec& t);

// Decoding radius alpha / eta_eps(dual lattice); returns the closest lattice
// point when within that radius, nothing otherwise.
std::optional<Vec> bdd_solve(const Basis& basis, const Vec& t, double alpha, double eps);

// Deterministic decider: enumerate the dual lattice inside the sqrt(n) ball,
// reject as soon as ceil(e^{pi n} * epsN) nonzero points have appeared,
// otherwise compare u = sum e^{-pi ||v||^2} against (epsY + epsN)/2.
DecisionReport decide_gapspp_det(const Basis& basis, double eps_y, double eps_n);

}  // namespace latsmooth

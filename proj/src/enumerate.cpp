#include "latsmooth/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latsmooth/gauss_sums.hpp"

namespace latsmooth {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "YES";
    case Verdict::no:
      return "NO";
    default:
      return "UNDECIDED";
  }
}

// Inclusive boundary: a hair of relative slack so points at exactly the
// radius survive the floating-point round trip.
static inline double inclusive_r2(double radius) {
  return radius * radius * (1.0 + 1e-12);
}

Enumerator::Enumerator(const Basis& basis) : basis_(basis), n_(basis.dim()) {
  // Gram-Schmidt over the basis columns.
  std::vector<Vec> gs(n_);
  mu_.assign(n_, Vec(n_, 0.0));
  gs_norm_sq_.assign(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    gs[j] = basis_.column(j);
    for (int k = 0; k < j; ++k) {
      mu_[j][k] = dot(basis_.column(j), gs[k]) / gs_norm_sq_[k];
      for (int i = 0; i < n_; ++i) gs[j][i] -= mu_[j][k] * gs[k][i];
    }
    gs_norm_sq_[j] = norm_sq(gs[j]);
  }
  gs_ = std::move(gs);
  tau_.assign(n_, 0.0);
  coef_.assign(n_, 0);
  point_.assign(n_, 0.0);
}

void Enumerator::project_target(const Vec& center) {
  for (int k = 0; k < n_; ++k) tau_[k] = dot(center, gs_[k]) / gs_norm_sq_[k];
}

// Core depth-first search. Visit: (coefs, dist2, r2 in/out) -> bool; return
// false to stop the whole search. r2 may be shrunk by the visitor.
template <typename Visit>
bool Enumerator::descend(int k, double partial, double& r2, Visit&& visit) {
  if (k < 0) {
    return visit(coef_, partial, r2);
  }
  // center of the admissible interval for coefficient k
  double u = tau_[k];
  for (int j = k + 1; j < n_; ++j) u -= mu_[j][k] * coef_[j];
  const double w = gs_norm_sq_[k];
  const long long c0 = static_cast<long long>(std::floor(u + 0.5));

  auto cost = [&](long long c) {
    const double d = static_cast<double>(c) - u;
    return w * d * d;
  };

  // zig-zag outward from the rounded center so short completions come first
  double cost0 = cost(c0);
  if (partial + cost0 <= r2) {
    coef_[k] = c0;
    if (!descend(k - 1, partial + cost0, r2, visit)) return false;
  } else if (cost(c0 - 1) > r2 - partial && cost(c0 + 1) > r2 - partial) {
    return true;  // interval empty
  }
  long long lo = c0 - 1, hi = c0 + 1;
  bool lo_open = true, hi_open = true;
  while (lo_open || hi_open) {
    double lo_cost = lo_open ? cost(lo) : 0.0;
    double hi_cost = hi_open ? cost(hi) : 0.0;
    if (lo_open && lo_cost > r2 - partial) {
      lo_open = false;
      continue;
    }
    if (hi_open && hi_cost > r2 - partial) {
      hi_open = false;
      continue;
    }
    bool take_lo = lo_open && (!hi_open || lo_cost <= hi_cost);
    if (take_lo) {
      coef_[k] = lo;
      if (!descend(k - 1, partial + lo_cost, r2, visit)) return false;
      --lo;
    } else if (hi_open) {
      coef_[k] = hi;
      if (!descend(k - 1, partial + hi_cost, r2, visit)) return false;
      ++hi;
    }
  }
  return true;
}

void Enumerator::coefs_to_point(const std::vector<long long>& coefs, Vec& out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (int j = 0; j < n_; ++j) {
    const double c = static_cast<double>(coefs[j]);
    if (c == 0.0) continue;
    const Vec& col = basis_.column(j);
    for (int i = 0; i < n_; ++i) out[i] += c * col[i];
  }
}

EnumStatus Enumerator::enumerate(
    const Vec& center, double radius, std::uint64_t budget,
    const std::function<bool(const Vec&, const std::vector<long long>&)>& visit) {
  if (static_cast<int>(center.size()) != n_)
    throw std::invalid_argument("enumerate: center dimension mismatch");
  if (!(radius > 0.0)) throw std::invalid_argument("enumerate: radius must be positive");
  project_target(center);
  double r2 = inclusive_r2(radius);
  std::uint64_t yielded = 0;
  bool truncated = false;
  descend(n_ - 1, 0.0, r2, [&](const std::vector<long long>& coefs, double, double&) {
    if (yielded == budget) {
      truncated = true;
      return false;
    }
    ++yielded;
    coefs_to_point(coefs, point_);
    return visit(point_, coefs);
  });
  return truncated ? EnumStatus::truncated : EnumStatus::complete;
}

std::vector<long long> Enumerator::babai_coefs(const Vec& t) const {
  std::vector<long long> c(n_, 0);
  Vec tau(n_);
  for (int k = 0; k < n_; ++k) tau[k] = dot(t, gs_[k]) / gs_norm_sq_[k];
  for (int k = n_ - 1; k >= 0; --k) {
    double u = tau[k];
    for (int j = k + 1; j < n_; ++j) u -= mu_[j][k] * static_cast<double>(c[j]);
    c[k] = static_cast<long long>(std::floor(u + 0.5));
  }
  return c;
}

std::pair<Vec, std::vector<long long>> Enumerator::closest_with_coefs(const Vec& t,
                                                                      std::uint64_t budget) {
  if (static_cast<int>(t.size()) != n_)
    throw std::invalid_argument("closest: dimension mismatch");
  if (budget == 0) budget = point_budget();

  std::vector<long long> best = babai_coefs(t);
  Vec bp(n_);
  coefs_to_point(best, bp);
  double best_d = norm(sub(bp, t));

  project_target(t);
  auto tie_tol = [&] { return kTieTol * std::max(1.0, best_d); };
  double r2 = (best_d + tie_tol()) * (best_d + tie_tol());
  std::uint64_t seen = 0;
  bool truncated = false;
  descend(n_ - 1, 0.0, r2, [&](const std::vector<long long>& coefs, double d2, double&) {
    if (++seen > budget) {
      truncated = true;
      return false;
    }
    const double d = std::sqrt(std::max(0.0, d2));
    if (d < best_d - tie_tol()) {
      best = coefs;
      best_d = d;
    } else if (d <= best_d + tie_tol() &&
               std::lexicographical_compare(coefs.begin(), coefs.end(), best.begin(), best.end())) {
      best = coefs;
      best_d = std::min(best_d, d);
    }
    return true;
  });
  // note: r2 is not shrunk mid-search; the Babai seed already bounds it and
  // keeping it fixed preserves tie candidates at the boundary
  if (truncated) throw BudgetExceeded("closest: enumeration budget exceeded");
  coefs_to_point(best, point_);
  return {point_, best};
}

Vec Enumerator::closest(const Vec& t, std::uint64_t budget) {
  return closest_with_coefs(t, budget).first;
}

bool Enumerator::in_voronoi(const Vec& x) {
  auto [v, coefs] = closest_with_coefs(x);
  bool all_zero = true;
  for (long long c : coefs)
    if (c != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) return true;
  // boundary ties count as inside the closed cell
  const double dv = norm(sub(x, v));
  return norm(x) <= dv + kTieTol * std::max(1.0, dv);
}

bool Enumerator::near_nonzero(const Vec& x, double radius) {
  project_target(x);
  double r2 = inclusive_r2(radius);
  bool found = false;
  descend(n_ - 1, 0.0, r2, [&](const std::vector<long long>& coefs, double, double&) {
    for (long long c : coefs)
      if (c != 0) {
        found = true;
        return false;
      }
    return true;
  });
  return found;
}

EnumStatus ball_enum(const EnumRequest& req,
                     const std::function<bool(const Vec&, const std::vector<long long>&)>& visit) {
  Enumerator en(req.basis);
  return en.enumerate(req.center, req.radius, req.budget, visit);
}

std::vector<std::pair<Vec, std::vector<long long>>> ball_enum_collect(const EnumRequest& req) {
  std::vector<std::pair<Vec, std::vector<long long>>> out;
  EnumStatus st = ball_enum(req, [&](const Vec& p, const std::vector<long long>& c) {
    out.emplace_back(p, c);
    return true;
  });
  if (st == EnumStatus::truncated)
    throw BudgetExceeded("ball_enum: point budget exceeded at " + std::to_string(out.size()));
  return out;
}

Vec cvp(const Basis& basis, const Vec& t) {
  Enumerator en(basis);
  return en.closest(t);
}

std::optional<Vec> bdd_solve(const Basis& basis, const Vec& t, double alpha, double eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("bdd_solve: alpha in (0,1)");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("bdd_solve: eps in (0,1)");
  const double d = alpha / smoothing_parameter(dual_basis(basis), eps).eta;
  Enumerator en(basis);
  Vec v = en.closest(t);
  const double dist = norm(sub(t, v));
  if (dist <= d * (1.0 + 1e-12)) return v;
  return std::nullopt;
}

DecisionReport decide_gapspp_det(const Basis& basis, double eps_y, double eps_n) {
  if (!(eps_y > 0.0 && eps_y < eps_n && eps_n < 1.0))
    throw std::invalid_argument("decide_gapspp_det: need 0 < epsY < epsN < 1");
  const int n = basis.dim();
  const double cap_real = std::ceil(std::exp(M_PI * n) * eps_n);
  const std::uint64_t cap = cap_real < 9e18 ? static_cast<std::uint64_t>(cap_real)
                                            : std::numeric_limits<std::uint64_t>::max();

  Basis dual = dual_basis(basis);
  Enumerator en(dual);
  DecisionReport rep;
  rep.threshold = 0.5 * (eps_y + eps_n);
  double u = 0.0;
  std::uint64_t count = 0;
  bool aborted = false;
  en.enumerate(Vec(n, 0.0), std::sqrt(static_cast<double>(n)),
               std::numeric_limits<std::uint64_t>::max(),
               [&](const Vec& v, const std::vector<long long>& coefs) {
                 bool zero = true;
                 for (long long c : coefs)
                   if (c != 0) {
                     zero = false;
                     break;
                   }
                 if (zero) return true;
                 ++count;
                 u += std::exp(-M_PI * norm_sq(v));
                 if (count >= cap) {
                   aborted = true;
                   return false;
                 }
                 return true;
               });
  rep.sum_u = u;
  rep.point_count = count;
  rep.early_abort = aborted;
  if (aborted) {
    rep.verdict = Verdict::no;
    return rep;
  }
  rep.verdict = (u <= rep.threshold) ? Verdict::yes : Verdict::no;
  // flag instances provably between the promise thresholds when the full
  // certified sum is affordable
  try {
    CertifiedSum full = rho_sum_nonzero(dual, 1.0, std::min(eps_y, eps_n - eps_y) / 8.0);
    if (full.value > eps_y && full.value + full.tail_bound <= eps_n) rep.non_promise = true;
  } catch (const BudgetExceeded&) {
  }
  return rep;
}

}  // namespace latsmooth

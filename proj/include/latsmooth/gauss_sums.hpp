#pragma once

#include <cstdint>

#include "latsmooth/basis.hpp"
#include "latsmooth/common.hpp"

namespace latsmooth {

// Partial Gaussian sum over the nonzero lattice points plus a certified
// bound on the omitted mass; the true sum lies in [value, value + tail_bound].
struct CertifiedSum {
  double value = 0.0;
  double tail_bound = 0.0;
  double s = 0.0;
  double radius = 0.0;           // enumeration radius that met the tolerance
  std::uint64_t point_count = 0;
};

struct SmoothingResult {
  double eta = 0.0;
  double eps = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double rtol = 0.0;       // achieved relative bracket width
  double log_deriv = 0.0;  // |d ln rho / d ln s| estimate near eta
};

// rho_s(L \ {0}) = sum over nonzero lattice points of e^{-pi ||v||^2 / s^2},
// enumerated inside an adaptively doubled radius until the tail certificate
// (Gaussian mass beyond the radius, bounded through the discrete tail bound
// ((1+t)e^{-t})^{n/2} with t = 2 pi R^2 / (s^2 n) - 1) is at most tol.
CertifiedSum rho_sum_nonzero(const Basis& basis, double s, double tol,
                             std::uint64_t budget = 0);

// Smallest s with rho_{1/s}(dual \ {0}) <= eps, located by bisection over
// the lambda1-based bracket [sqrt(ln(1/eps)/pi), sqrt(n)] / lambda1(dual),
// widened by 2 on both sides.
SmoothingResult smoothing_parameter(const Basis& basis, double eps, double rtol = 1e-6,
                                    std::uint64_t budget = 0);

// Length of a shortest nonzero lattice vector.
double lambda1(const Basis& basis, std::uint64_t budget = 0);

// t = sqrt(1 + ln(r)/ln(1/eps)); dividing the Gaussian parameter by t turns
// a sum <= eps into a sum <= eps/r.
double scaled_eps_factor(double eps, double r);

// gamma' = gamma * sqrt(ln(1/epsY)/ln(1/epsN)).
double gamma_approx_factor(double eps_y, double eps_n, double gamma);

}  // namespace latsmooth

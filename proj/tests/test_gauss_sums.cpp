#include <cmath>

#include "doctest.h"
#include "latsmooth/gauss_sums.hpp"
#include "latsmooth/rng.hpp"
#include "oracles.hpp"

using namespace latsmooth;

namespace {

Basis identity(int n) {
  std::vector<Vec> cols(n, Vec(n, 0.0));
  for (int i = 0; i < n; ++i) cols[i][i] = 1.0;
  return Basis(cols);
}

Basis scaled_z(double c) { return parse_basis_string("1\n" + std::to_string(c) + "\n"); }

}  // namespace

TEST_CASE("rho_sum_nonzero matches direct summation on Z") {
  Basis z1 = identity(1);
  CertifiedSum s1 = rho_sum_nonzero(z1, 1.0, 1e-12);
  // 2 sum_k e^{-pi k^2} = 0.0864348112133
  CHECK(s1.value == doctest::Approx(0.0864348112133).epsilon(1e-10));
  CHECK(s1.tail_bound <= 1e-12);

  CertifiedSum s2 = rho_sum_nonzero(z1, 2.0, 1e-12);
  // 2 (e^{-pi/4} + e^{-pi} + e^{-9pi/4} + ...) = 1.00001394937
  CHECK(s2.value == doctest::Approx(1.00001394937).epsilon(1e-10));

  // scaling identity rho_s(cL) = rho_{s/c}(L)
  CertifiedSum left = rho_sum_nonzero(scaled_z(2.0), 1.0, 1e-12);
  CertifiedSum right = rho_sum_nonzero(z1, 0.5, 1e-12);
  CHECK(left.value == doctest::Approx(right.value).epsilon(1e-11));
}

TEST_CASE("rho_sum_nonzero agrees with the coefficient-box oracle") {
  Rng rng(1001);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 3);
    std::vector<Vec> cols(n, Vec(n, 0.0));
    for (int j = 0; j < n; ++j) {
      cols[j][j] = 0.8 + 0.8 * rng.next_unit();
      for (int i = 0; i < n; ++i)
        if (i != j) cols[j][i] = 0.2 * (rng.next_unit() - 0.5);
    }
    Basis b(cols);
    const double s = 0.5 + 1.5 * rng.next_unit();
    CertifiedSum cs = rho_sum_nonzero(b, s, 1e-12);
    const double brute = oracles::box_rho_sum(b, s, 12);
    CHECK(std::fabs(cs.value - brute) <= 1e-10 + cs.tail_bound);
  }
}

TEST_CASE("rho_sum_nonzero is monotone in s") {
  Basis z2 = identity(2);
  double prev = rho_sum_nonzero(z2, 0.5, 1e-10).value;
  for (double s : {0.8, 1.0, 1.5, 2.0}) {
    CertifiedSum cs = rho_sum_nonzero(z2, s, 1e-10);
    CHECK(prev <= cs.value + 2e-10);
    prev = cs.value;
  }
}

TEST_CASE("rho_sum_nonzero budget errors are explicit") {
  Basis z1 = identity(1);
  CHECK_THROWS_AS(rho_sum_nonzero(z1, 2.0, 1e-12, 3), BudgetExceeded);
}

TEST_CASE("smoothing_parameter pins eta by construction on Z") {
  Basis z1 = identity(1);
  const double eps = 0.0864348112133;  // rho_1(Z \ 0): eta must be 1
  SmoothingResult r = smoothing_parameter(z1, eps, 1e-7);
  CHECK(r.eta == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.bracket_lo <= r.eta);
  CHECK(r.eta <= r.bracket_hi);
  CHECK(r.rtol <= 1e-6);
}

TEST_CASE("smoothing_parameter obeys the scaling law") {
  Basis z1 = identity(1);
  for (double eps : {0.3, 0.05}) {
    SmoothingResult base = smoothing_parameter(z1, eps);
    SmoothingResult doubled = smoothing_parameter(scaled_z(2.0), eps);
    CHECK(doubled.eta == doctest::Approx(2.0 * base.eta).epsilon(3e-6));
  }
  Basis z2 = identity(2);
  for (double c : {0.5, 3.0}) {
    SmoothingResult base = smoothing_parameter(z2, 0.1);
    SmoothingResult scaled = smoothing_parameter(lattice_scale(z2, c), 0.1);
    CHECK(scaled.eta == doctest::Approx(c * base.eta).epsilon(3e-6));
  }
}

TEST_CASE("smoothing_parameter is definition-consistent") {
  Basis z2 = identity(2);
  SmoothingResult r = smoothing_parameter(z2, 0.01, 1e-6);
  CertifiedSum back = rho_sum_nonzero(dual_basis(z2), 1.0 / r.eta, 1e-12);
  const double slack = 5.0 * r.rtol * std::max(r.log_deriv, 1.0);
  CHECK(back.value >= 0.01 * (1.0 - slack));
  CHECK(back.value <= 0.01 * (1.0 + slack));
  // independent oracle: eta_{0.01}(Z^2) via 1-D product sums
  CHECK(r.eta == doctest::Approx(oracles::eta_zn(0.01, 2)).epsilon(1e-5));
}

TEST_CASE("smoothing_parameter is monotone in eps") {
  Basis z2 = identity(2);
  const double big = smoothing_parameter(z2, 0.01).eta;
  const double small = smoothing_parameter(z2, 0.2).eta;
  CHECK(big >= small - 2e-6 * big);
  CHECK_THROWS_AS(smoothing_parameter(z2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(smoothing_parameter(z2, 1.0), std::invalid_argument);
}

TEST_CASE("lambda1 on known lattices") {
  CHECK(lambda1(identity(1)) == doctest::Approx(1.0));
  CHECK(lambda1(identity(3)) == doctest::Approx(1.0));
  Basis skew = parse_basis_string("2\n2 1\n0 1\n");
  CHECK(lambda1(skew) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(lambda1(lattice_scale(identity(2), 3.0)) == doctest::Approx(3.0));
}

TEST_CASE("scaled_eps_factor values and guarantee") {
  CHECK(scaled_eps_factor(0.37, 1.0) == doctest::Approx(1.0));
  CHECK(scaled_eps_factor(0.01, 100.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(scaled_eps_factor(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(scaled_eps_factor(0.5, 0.5), std::invalid_argument);

  // on Z: find s with rho_s(Z\0) = 0.05, then check the lemma's conclusion
  Basis z1 = identity(1);
  double lo = 0.1, hi = 3.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (oracles::rho_z_nonzero(mid) <= 0.05)
      lo = mid;  // sum increases with s
    else
      hi = mid;
  }
  const double s = lo;  // certified rho_s <= 0.05
  for (double r : {2.0, 10.0}) {
    const double t = scaled_eps_factor(0.05, r);
    CertifiedSum cs = rho_sum_nonzero(z1, s / t, 1e-12);
    CHECK(cs.value + cs.tail_bound <= 0.05 / r);
  }
}

TEST_CASE("gamma_approx_factor arithmetic") {
  CHECK(gamma_approx_factor(0.07, 0.07, 3.0) == doctest::Approx(3.0));
  CHECK(gamma_approx_factor(1e-4, 1e-2, 2.0) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(gamma_approx_factor(0.01, 0.02, 1.0) == doctest::Approx(1.08498102294).epsilon(1e-9));
  CHECK_THROWS_AS(gamma_approx_factor(0.2, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("eta scales linearly under lattice_scale (cross-module example)") {
  Basis z2 = identity(2);
  SmoothingResult base = smoothing_parameter(z2, 0.1, 1e-6);
  SmoothingResult tripled = smoothing_parameter(lattice_scale(z2, 3.0), 0.1, 1e-6);
  CHECK(tripled.eta == doctest::Approx(3.0 * base.eta).epsilon(2e-6));
}

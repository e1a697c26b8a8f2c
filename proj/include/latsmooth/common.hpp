#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latsmooth {

using Vec = std::vector<double>;

// Numeric tolerance policy. Desk-scale dimensions (n <= 12) with
// well-conditioned bases keep double precision comfortably inside these.
constexpr double kIntegralityTol = 1e-9;   // coefficient-integrality checks
constexpr double kTieTol = 1e-9;           // distance ties in decoding
constexpr double kMaxConditionNumber = 1e8;
constexpr std::uint64_t kDefaultPointBudget = 100000000ull;  // per enumeration

// Computation errors map to CLI exit code 2.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double dot(const Vec& a, const Vec& b);
double norm_sq(const Vec& a);
double norm(const Vec& a);
Vec sub(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec scale(const Vec& a, double c);
bool is_zero(const Vec& a, double tol);

// Enumeration point budget: LATSMOOTH_BUDGET env var overrides the default.
std::uint64_t point_budget();

}  // namespace latsmooth

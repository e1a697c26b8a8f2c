#include "latsmooth/basis.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

namespace latsmooth {

namespace {

// LU with partial pivoting on the column matrix; returns det and writes the
// inverse (as rows). Throws ParseError on (numerical) singularity.
double invert(const std::vector<Vec>& cols, std::vector<Vec>& inv_rows) {
  const int n = static_cast<int>(cols.size());
  // a[i][j] = coordinate i of column j, augmented with the identity
  std::vector<Vec> a(n, Vec(2 * n, 0.0));
  double scale_max = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a[i][j] = cols[j][i];
      scale_max = std::max(scale_max, std::fabs(a[i][j]));
    }
    a[i][n + i] = 1.0;
  }
  if (scale_max == 0.0) throw ParseError("basis is singular (all zero)");

  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
    if (std::fabs(a[piv][k]) < 1e-12 * scale_max) throw ParseError("basis is singular");
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    const double inv_piv = 1.0 / a[k][k];
    for (int j = k; j < 2 * n; ++j) a[k][j] *= inv_piv;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = a[i][k];
      if (f == 0.0) continue;
      for (int j = k; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  inv_rows.assign(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv_rows[i][j] = a[i][n + j];
  return det;
}

// Spectral norm by power iteration on M^T M, where apply computes M x.
double operator_norm(int n, const std::function<Vec(const Vec&)>& apply,
                     const std::function<Vec(const Vec&)>& apply_t) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 / std::sqrt(static_cast<double>(n)) + 0.01 * i;
  double lambda = 0.0;
  for (int it = 0; it < 50; ++it) {
    Vec w = apply_t(apply(v));
    const double nw = norm(w);
    if (nw == 0.0) return 0.0;
    for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
    lambda = nw;
  }
  return std::sqrt(lambda);
}

}  // namespace

Basis::Basis(std::vector<Vec> columns) : cols_(std::move(columns)) {
  n_ = static_cast<int>(cols_.size());
  if (n_ < 1) throw ParseError("basis must have dimension >= 1");
  for (const Vec& c : cols_) {
    if (static_cast<int>(c.size()) != n_) throw ParseError("basis column has wrong dimension");
    for (double x : c)
      if (!std::isfinite(x)) throw ParseError("basis coordinate is not finite");
  }
  det_ = invert(cols_, inv_rows_);

  auto apply = [&](const Vec& x) { return to_point(x); };
  auto apply_t = [&](const Vec& x) {
    Vec r(n_);
    for (int j = 0; j < n_; ++j) r[j] = dot(cols_[j], x);
    return r;
  };
  auto apply_inv = [&](const Vec& x) { return to_coefs(x); };
  auto apply_inv_t = [&](const Vec& x) {
    Vec r(n_, 0.0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r[j] += inv_rows_[i][j] * x[i];
    return r;
  };
  const double cond = operator_norm(n_, apply, apply_t) * operator_norm(n_, apply_inv, apply_inv_t);
  if (cond > kMaxConditionNumber) {
    std::ostringstream os;
    os << "basis condition number " << cond << " exceeds " << kMaxConditionNumber;
    throw ParseError(os.str());
  }
}

Vec Basis::to_point(const Vec& coefs) const {
  Vec x(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    const double c = coefs[j];
    if (c == 0.0) continue;
    const Vec& col = cols_[j];
    for (int i = 0; i < n_; ++i) x[i] += c * col[i];
  }
  return x;
}

Vec Basis::to_coefs(const Vec& point) const {
  Vec c(n_);
  for (int i = 0; i < n_; ++i) c[i] = dot(inv_rows_[i], point);
  return c;
}

Basis parse_basis(std::istream& in) {
  std::string line;
  auto next_data_line = [&](std::string& out) -> bool {
    while (std::getline(in, line)) {
      std::size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      if (line[pos] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string header;
  if (!next_data_line(header)) throw ParseError("basis file: missing dimension line");
  std::istringstream hs(header);
  long long n = 0;
  if (!(hs >> n) || n < 1) throw ParseError("basis file: dimension must be a positive integer");
  std::string rest;
  if (hs >> rest) throw ParseError("basis file: trailing tokens after dimension");

  std::vector<Vec> cols(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n)));
  for (long long i = 0; i < n; ++i) {
    std::string row;
    if (!next_data_line(row)) throw ParseError("basis file: fewer rows than dimension");
    std::istringstream rs(row);
    for (long long j = 0; j < n; ++j) {
      double v;
      if (!(rs >> v)) throw ParseError("basis file: malformed number in row " + std::to_string(i + 1));
      cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
    if (rs >> rest) throw ParseError("basis file: too many entries in row " + std::to_string(i + 1));
  }
  return Basis(std::move(cols));
}

Basis parse_basis_string(const std::string& text) {
  std::istringstream is(text);
  return parse_basis(is);
}

Basis load_basis_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open basis file: " + path);
  return parse_basis(f);
}

Basis dual_basis(const Basis& basis) {
  const int n = basis.dim();
  // columns of (B^{-1})^T are the rows of B^{-1}; to_coefs(e_j) recovers
  // column j of B^{-1}, i.e. coordinate j of every dual column
  std::vector<Vec> dual_cols(n, Vec(n));
  for (int j = 0; j < n; ++j) {
    Vec e(n, 0.0);
    e[j] = 1.0;
    Vec col = basis.to_coefs(e);
    for (int i = 0; i < n; ++i) dual_cols[i][j] = col[i];
  }
  return Basis(std::move(dual_cols));
}

std::pair<Vec, Vec> reduce_mod(const Basis& basis, const Vec& x) {
  if (static_cast<int>(x.size()) != basis.dim())
    throw std::invalid_argument("reduce_mod: dimension mismatch");
  Vec c = basis.to_coefs(x);
  Vec frac(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    // floor(c + 1/2) keeps the residual in [-1/2, 1/2); an exact half
    // coefficient lands on -1/2
    frac[i] = c[i] - std::floor(c[i] + 0.5);
  }
  return {basis.to_point(frac), std::move(frac)};
}

Basis lattice_scale(const Basis& basis, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("lattice_scale: c must be positive");
  std::vector<Vec> cols = basis.columns();
  for (Vec& col : cols)
    for (double& v : col) v *= c;
  return Basis(std::move(cols));
}

}  // namespace latsmooth

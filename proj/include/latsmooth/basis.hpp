#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "latsmooth/common.hpp"

namespace latsmooth {

// Ordered set of n linearly independent columns; the lattice is the set of
// integer combinations of the columns.
class Basis {
 public:
  // Validates dimension, finiteness, non-singularity and conditioning
  // (condition number above kMaxConditionNumber is rejected).
  explicit Basis(std::vector<Vec> columns);

  int dim() const { return n_; }
  const std::vector<Vec>& columns() const { return cols_; }
  const Vec& column(int j) const { return cols_[j]; }
  double det() const { return det_; }

  // x = sum_j c_j * column_j
  Vec to_point(const Vec& coefs) const;
  // c = B^{-1} x
  Vec to_coefs(const Vec& point) const;

 private:
  int n_;
  std::vector<Vec> cols_;      // cols_[j] = column j
  std::vector<Vec> inv_rows_;  // rows of B^{-1}
  double det_;
};

// Text format: line 1 = n; then n rows of n numbers, row i holding
// coordinate i of every column. '#' starts a comment line.
Basis parse_basis(std::istream& in);
Basis parse_basis_string(const std::string& text);
Basis load_basis_file(const std::string& path);

// B* = (B^{-1})^T; <b_i, b*_j> = delta_ij.
Basis dual_basis(const Basis& basis);

// x mod B: the representative of x + Lattice with basis coefficients in
// [-1/2, 1/2). Exact-half coefficients round up, so 1/2 maps to -1/2.
// Returns (reduced point, its coefficients in the basis frame).
std::pair<Vec, Vec> reduce_mod(const Basis& basis, const Vec& x);

Basis lattice_scale(const Basis& basis, double c);

}  // namespace latsmooth

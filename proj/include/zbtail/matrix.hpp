// Copyright 2026 The zbtail Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZBTAIL_MATRIX_HPP_
#define ZBTAIL_MATRIX_HPP_

#include <cstddef>
#include <vector>

namespace zbtail {

// Immutable dense square matrix with the mean functionals the permutation
// statistic needs, cached at construction:
//   row_mean(i)     = (1/n) sum_j a_ij
//   col_mean(j)     = (1/n) sum_i a_ij
//   grand_mean()    = (1/n^2) sum_ij a_ij
//   offdiag_row_mean(i) = (1/(n-2)) sum_{j != i} a_ij     (n >= 3)
//   offdiag_grand_mean  = (1/((n-1)(n-2))) sum_{i != j} a_ij   (n >= 3)
// The off-diagonal means deliberately divide the n-1 off-diagonal entries by
// n-2: that is the normalization under which the cycle-type moment formulas
// below are exact.
class SquareMatrix {
 public:
  // rows must be a non-empty n x n array with n >= 2.
  explicit SquareMatrix(std::vector<std::vector<double>> rows);

  std::size_t n() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  double row_mean(std::size_t i) const { return row_mean_[i]; }
  double col_mean(std::size_t j) const { return col_mean_[j]; }
  double grand_mean() const { return grand_mean_; }

  // Off-diagonal means; throw std::domain_error when n < 3.
  double offdiag_row_mean(std::size_t i) const;
  double offdiag_grand_mean() const;

  // True iff max |a_ij - a_ji| <= tol.
  bool is_symmetric(double tol = kSymmetryTol) const { return asymmetry_ <= tol; }
  double asymmetry() const { return asymmetry_; }

  static constexpr double kSymmetryTol = 1e-12;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> row_mean_;
  std::vector<double> col_mean_;
  std::vector<double> offdiag_row_mean_;
  double grand_mean_ = 0.0;
  double offdiag_grand_mean_ = 0.0;
  double asymmetry_ = 0.0;
  bool has_offdiag_means_ = false;
};

}  // namespace zbtail

#endif  // ZBTAIL_MATRIX_HPP_

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

#include "zbtail/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace zbtail {

SquareMatrix::SquareMatrix(std::vector<std::vector<double>> rows)
    : rows_(std::move(rows)) {
  n_ = rows_.size();
  if (n_ < 2) {
    throw std::domain_error("matrix must be at least 2 x 2");
  }
  data_.reserve(n_ * n_);
  for (const auto& row : rows_) {
    if (row.size() != n_) {
      throw std::domain_error("matrix must be square");
    }
    for (double entry : row) {
      if (!std::isfinite(entry)) {
        throw std::domain_error("matrix entries must be finite");
      }
      data_.push_back(entry);
    }
  }

  row_mean_.assign(n_, 0.0);
  col_mean_.assign(n_, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double entry = at(i, j);
      row_mean_[i] += entry;
      col_mean_[j] += entry;
      total += entry;
      asymmetry_ = std::max(asymmetry_, std::abs(entry - at(j, i)));
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    row_mean_[i] /= static_cast<double>(n_);
    col_mean_[i] /= static_cast<double>(n_);
  }
  grand_mean_ = total / static_cast<double>(n_ * n_);

  if (n_ >= 3) {
    has_offdiag_means_ = true;
    offdiag_row_mean_.assign(n_, 0.0);
    double offdiag_total = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == i) {
          continue;
        }
        offdiag_row_mean_[i] += at(i, j);
        offdiag_total += at(i, j);
      }
      offdiag_row_mean_[i] /= static_cast<double>(n_ - 2);
    }
    offdiag_grand_mean_ =
        offdiag_total / static_cast<double>((n_ - 1) * (n_ - 2));
  }
}

double SquareMatrix::offdiag_row_mean(std::size_t i) const {
  if (!has_offdiag_means_) {
    throw std::domain_error("off-diagonal means need n >= 3");
  }
  return offdiag_row_mean_[i];
}

double SquareMatrix::offdiag_grand_mean() const {
  if (!has_offdiag_means_) {
    throw std::domain_error("off-diagonal means need n >= 3");
  }
  return offdiag_grand_mean_;
}

}  // namespace zbtail

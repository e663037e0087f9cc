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

#include "zbtail/permutation.hpp"

namespace zbtail {

bool is_permutation(const Permutation& perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n, false);
  for (std::size_t image : perm) {
    if (image >= n || seen[image]) {
      return false;
    }
    seen[image] = true;
  }
  return true;
}

bool is_fixed_point_free_involution(const Permutation& perm) {
  if (!is_permutation(perm)) {
    return false;
  }
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] == i || perm[perm[i]] != i) {
      return false;
    }
  }
  return true;
}

}  // namespace zbtail

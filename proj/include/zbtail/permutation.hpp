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

#ifndef ZBTAIL_PERMUTATION_HPP_
#define ZBTAIL_PERMUTATION_HPP_

#include <cstddef>
#include <vector>

namespace zbtail {

// A permutation of {0, ..., n-1} stored as its image vector: perm[i] is the
// image of i.
using Permutation = std::vector<std::size_t>;

// True iff perm is a bijection on {0, ..., n-1}.
bool is_permutation(const Permutation& perm);

// True iff perm is an involution without fixed points (all cycles have
// length two); false in particular for odd size.
bool is_fixed_point_free_involution(const Permutation& perm);

}  // namespace zbtail

#endif  // ZBTAIL_PERMUTATION_HPP_

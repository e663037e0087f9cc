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

#ifndef ZBTAIL_PARALLEL_HPP_
#define ZBTAIL_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace zbtail {

// Runs fn(block) for every block in [0, num_blocks) using up to `threads`
// worker threads (threads <= 1 runs inline). Blocks are claimed from a shared
// counter; each fn(block) must write only block-local state, so the caller
// can reduce the per-block results in fixed order afterwards. This is what
// makes every Monte Carlo answer independent of the thread count.
void parallel_blocks(std::size_t num_blocks, unsigned threads,
                     const std::function<void(std::size_t)>& fn);

}  // namespace zbtail

#endif  // ZBTAIL_PARALLEL_HPP_

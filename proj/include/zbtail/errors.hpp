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

#ifndef ZBTAIL_ERRORS_HPP_
#define ZBTAIL_ERRORS_HPP_

#include <stdexcept>

namespace zbtail {

// Thrown when an exact computation would exceed a configured size cap
// (enumeration class size, convolution support size). Distinct from
// std::domain_error so callers can map it to a different exit status.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zbtail

#endif  // ZBTAIL_ERRORS_HPP_

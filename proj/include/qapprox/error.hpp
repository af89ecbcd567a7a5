// Copyright 2026 The qapprox Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types shared by every qapprox module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qapprox {

/// A precondition on the arguments was violated (index range, dimension,
/// unitarity, parameter domain). The CLI maps this to exit code 1.
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical kernel failed (non-convergence, rank deficiency).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or unreadable files. The CLI maps this to exit code 2.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string &what) {
    if (!cond) {
        throw DomainError(what);
    }
}

} // namespace detail
} // namespace qapprox

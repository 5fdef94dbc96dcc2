// Copyright 2026 The mixcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIXCERT_CORE_ERRORS_H
#define MIXCERT_CORE_ERRORS_H

#include <stdexcept>
#include <string>

namespace mixcert {

/// Caller passed an argument outside an operation's documented domain.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An iterative routine failed to reach its accuracy target, or a value
/// left the range where the computation is meaningful.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Data violated an internal invariant (non-PSD density, incomplete POVM,
/// probabilities that do not sum to one).
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File or stream could not be read, parsed, or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mixcert

#endif

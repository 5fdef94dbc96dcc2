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

#ifndef MIXCERT_CORE_MATRIX_IO_H
#define MIXCERT_CORE_MATRIX_IO_H

#include <string>
#include <vector>

#include "core/complex_matrix.h"

namespace mixcert {

/// Matrix file form: {"d": n, "re": [[...]], "im": [[...]]}, row-major,
/// both parts d x d arrays of doubles.
///
/// Serialization round-trips exactly: doubles are written with 17 significant
/// digits.
std::string matrix_to_json(const ComplexMatrix& m);

/// Parses the matrix file form. Throws IoError on malformed JSON or
/// mismatched dimensions.
ComplexMatrix matrix_from_json(const std::string& text);

/// Reads one matrix from a file in the form above.
ComplexMatrix read_matrix_file(const std::string& path);

/// Writes one matrix to a file in the form above.
void write_matrix_file(const ComplexMatrix& m, const std::string& path);

/// Reads a JSON array of matrix objects (used for measurement imports).
std::vector<ComplexMatrix> read_matrix_list_file(const std::string& path);

}  // namespace mixcert

#endif

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

#include "core/matrix_io.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.h"

namespace mixcert {

namespace {

using nlohmann::json;

json matrix_to_json_value(const ComplexMatrix& m) {
    const int d = m.dim();
    json re = json::array();
    json im = json::array();
    for (int i = 0; i < d; ++i) {
        json re_row = json::array();
        json im_row = json::array();
        for (int j = 0; j < d; ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"d", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json_value(const json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("re") || !j.contains("im")) {
        throw IoError("matrix JSON must be an object with keys d, re, im");
    }
    const int d = j.at("d").get<int>();
    if (d < 1) {
        throw IoError("matrix JSON has non-positive dimension");
    }
    const json& re = j.at("re");
    const json& im = j.at("im");
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != d ||
        static_cast<int>(im.size()) != d) {
        throw IoError("matrix JSON re/im must be d x d arrays");
    }
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i) {
        const json& re_row = re.at(static_cast<std::size_t>(i));
        const json& im_row = im.at(static_cast<std::size_t>(i));
        if (static_cast<int>(re_row.size()) != d || static_cast<int>(im_row.size()) != d) {
            throw IoError("matrix JSON re/im must be d x d arrays");
        }
        for (int jcol = 0; jcol < d; ++jcol) {
            m(i, jcol) = Complex(re_row.at(static_cast<std::size_t>(jcol)).get<double>(),
                                 im_row.at(static_cast<std::size_t>(jcol)).get<double>());
        }
    }
    return m;
}

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw IoError("malformed JSON");
    }
    return j;
}

std::string read_whole_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) {
    // nlohmann serializes doubles with 17 significant digits, which is
    // lossless for binary64.
    return matrix_to_json_value(m).dump();
}

ComplexMatrix matrix_from_json(const std::string& text) {
    return matrix_from_json_value(parse_or_throw(text));
}

ComplexMatrix read_matrix_file(const std::string& path) {
    return matrix_from_json(read_whole_file(path));
}

void write_matrix_file(const ComplexMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << matrix_to_json(m) << "\n";
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

std::vector<ComplexMatrix> read_matrix_list_file(const std::string& path) {
    json j = parse_or_throw(read_whole_file(path));
    if (!j.is_array()) {
        throw IoError("matrix list file must hold a JSON array");
    }
    std::vector<ComplexMatrix> out;
    out.reserve(j.size());
    for (const json& item : j) {
        out.push_back(matrix_from_json_value(item));
    }
    return out;
}

}  // namespace mixcert

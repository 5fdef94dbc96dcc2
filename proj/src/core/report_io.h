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

#ifndef MIXCERT_CORE_REPORT_IO_H
#define MIXCERT_CORE_REPORT_IO_H

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mixcert {

// Line-plot request rendered by the SVG backend. Rows are grouped by the
// values of group_columns (one polyline per group and y column), with x
// read from x_column.
struct PlotSpec {
    std::string x_column;
    std::vector<std::string> y_columns;
    std::vector<std::string> group_columns;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
};

// A finished experiment: config echo, tabular rows, and optional summary.
// Rows are JSON objects keyed by the column names; the CSV and JSON
// renderings draw from the same values, so their numeric content is
// identical by construction.
struct ExperimentReport {
    std::string version;
    std::string command;
    nlohmann::json config;
    std::vector<std::string> columns;
    std::vector<nlohmann::json> rows;
    nlohmann::json summary;  // null when the command has no summary
    std::vector<std::string> failed_checks;
    double wall_clock_seconds = 0.0;
    std::optional<PlotSpec> plot;
};

enum class ReportFormat {
    kCsv,
    kJson,
    kSvg,
};

// Parses "csv" | "json" | "svg"; anything else is an argument error.
ReportFormat parse_report_format(const std::string& name);
const char* report_format_name(ReportFormat format);

// Shortest lossless decimal rendering of a double (printf %.17g).
std::string format_double(double value);

// Renders the report. CSV carries provenance comment lines then
// header+rows and contains no wall-clock, so reruns are byte-identical.
// SVG needs report.plot and throws an argument error without one.
std::string render_report(const ExperimentReport& report, ReportFormat format);

// Renders and writes to `path`; failures surface as I/O errors.
void write_report_file(const ExperimentReport& report, const std::string& path,
                       ReportFormat format);

}  // namespace mixcert

#endif

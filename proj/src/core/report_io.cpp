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

#include "core/report_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "core/errors.h"

namespace mixcert {

namespace {

std::string csv_cell(const nlohmann::json& value) {
    if (value.is_null()) {
        return "";
    }
    if (value.is_string()) {
        return value.get<std::string>();
    }
    if (value.is_boolean()) {
        return value.get<bool>() ? "true" : "false";
    }
    if (value.is_number_float()) {
        return format_double(value.get<double>());
    }
    return value.dump();
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

std::string short_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", value);
    return buf;
}

std::string render_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "# version: " << report.version << "\n";
    out << "# command: " << report.command << "\n";
    out << "# config: " << report.config.dump() << "\n";
    if (!report.summary.is_null()) {
        out << "# summary: " << report.summary.dump() << "\n";
    }
    if (!report.failed_checks.empty()) {
        out << "# failed_checks:";
        for (const std::string& name : report.failed_checks) {
            out << " " << name;
        }
        out << "\n";
    }
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out << (i ? "," : "") << report.columns[i];
    }
    out << "\n";
    for (const nlohmann::json& row : report.rows) {
        for (std::size_t i = 0; i < report.columns.size(); ++i) {
            out << (i ? "," : "");
            const auto it = row.find(report.columns[i]);
            if (it != row.end()) {
                out << csv_cell(*it);
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string render_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["version"] = report.version;
    j["command"] = report.command;
    j["config"] = report.config;
    j["columns"] = report.columns;
    j["rows"] = nlohmann::json::array();
    for (const nlohmann::json& row : report.rows) {
        j["rows"].push_back(row);
    }
    j["summary"] = report.summary;
    j["failed_checks"] = report.failed_checks;
    j["wall_clock_seconds"] = report.wall_clock_seconds;
    return j.dump(2) + "\n";
}

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

double numeric_cell(const nlohmann::json& row, const std::string& column) {
    const auto it = row.find(column);
    if (it == row.end() || !it->is_number()) {
        return std::nan("");
    }
    return it->get<double>();
}

std::string render_svg(const ExperimentReport& report) {
    if (!report.plot.has_value()) {
        throw ArgumentError("this command has no SVG plot; use csv or json");
    }
    const PlotSpec& plot = *report.plot;

    // Group rows, then one series per (group, y column).
    std::map<std::string, std::map<std::string, Series>> groups;
    for (const nlohmann::json& row : report.rows) {
        std::string group_key;
        for (const std::string& gc : plot.group_columns) {
            const auto it = row.find(gc);
            if (!group_key.empty()) {
                group_key += " ";
            }
            group_key += gc + "=" + (it != row.end() ? csv_cell(*it) : "");
        }
        const double x = numeric_cell(row, plot.x_column);
        if (std::isnan(x)) {
            continue;
        }
        for (const std::string& yc : plot.y_columns) {
            const double y = numeric_cell(row, yc);
            if (std::isnan(y)) {
                continue;
            }
            Series& series = groups[group_key][yc];
            if (series.points.empty()) {
                series.label = group_key.empty() ? yc : group_key + " " + yc;
            }
            series.points.emplace_back(x, y);
        }
    }

    std::vector<Series> all;
    double min_pos_y = 1.0;
    for (auto& [gk, per_y] : groups) {
        for (auto& [yc, series] : per_y) {
            std::sort(series.points.begin(), series.points.end());
            for (auto& [x, y] : series.points) {
                if (y > 0.0) {
                    min_pos_y = std::min(min_pos_y, y);
                }
            }
            all.push_back(std::move(series));
        }
    }
    if (plot.log_y) {
        const double floor_y = min_pos_y / 2.0;
        for (Series& series : all) {
            for (auto& [x, y] : series.points) {
                y = std::log10(std::max(y, floor_y));
            }
        }
    }

    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
    bool first = true;
    for (const Series& series : all) {
        for (const auto& [x, y] : series.points) {
            if (first) {
                x_lo = x_hi = x;
                y_lo = y_hi = y;
                first = false;
            } else {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
    }
    if (x_hi - x_lo < 1e-300) {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    if (y_hi - y_lo < 1e-300) {
        y_lo -= 1.0;
        y_hi += 1.0;
    }

    const double width = 860.0, height = 520.0;
    const double ml = 80.0, mr = 180.0, mt = 40.0, mb = 60.0;
    const auto px = [&](double x) {
        return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr);
    };
    const auto py = [&](double y) {
        return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb);
    };

    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    const int palette_size = 8;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << ml << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(report.command) << "</text>\n";

    char buf[256];
    // Axes.
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  ml, height - mb, width - mr, height - mb);
    svg << buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  ml, mt, ml, height - mb);
    svg << buf;
    // Ticks and labels.
    for (int i = 0; i <= 4; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / 4.0;
        const double fy = y_lo + (y_hi - y_lo) * i / 4.0;
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                      "stroke=\"black\"/>\n",
                      px(fx), height - mb, px(fx), height - mb + 5.0);
        svg << buf;
        svg << "<text x=\"" << px(fx) << "\" y=\"" << height - mb + 20.0
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << xml_escape(short_number(fx)) << "</text>\n";
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                      "stroke=\"black\"/>\n",
                      ml - 5.0, py(fy), ml, py(fy));
        svg << buf;
        const double label_value = plot.log_y ? std::pow(10.0, fy) : fy;
        svg << "<text x=\"" << ml - 8.0 << "\" y=\"" << py(fy) + 4.0
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            << xml_escape(short_number(label_value)) << "</text>\n";
    }
    svg << "<text x=\"" << (ml + width - mr) / 2.0 << "\" y=\"" << height - 18.0
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << xml_escape(plot.x_label.empty() ? plot.x_column : plot.x_label) << "</text>\n";
    svg << "<text x=\"20\" y=\"" << (mt + height - mb) / 2.0
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 20 " << (mt + height - mb) / 2.0 << ")\">"
        << xml_escape(plot.y_label.empty() ? "value" : plot.y_label) << "</text>\n";

    if (all.empty()) {
        svg << "<text x=\"" << width / 2.0 << "\" y=\"" << height / 2.0
            << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
            << "no data</text>\n";
    }
    int color = 0;
    for (const Series& series : all) {
        std::ostringstream pts;
        for (const auto& [x, y] : series.points) {
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(x), py(y));
            pts << buf;
        }
        const char* stroke = kPalette[color % palette_size];
        svg << "<polyline fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
        const double ly = mt + 16.0 * color;
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                      "stroke=\"%s\" stroke-width=\"1.5\"/>\n",
                      width - mr + 10.0, ly, width - mr + 34.0, ly, stroke);
        svg << buf;
        svg << "<text x=\"" << width - mr + 40.0 << "\" y=\"" << ly + 4.0
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(series.label)
            << "</text>\n";
        ++color;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
    if (name == "csv") {
        return ReportFormat::kCsv;
    }
    if (name == "json") {
        return ReportFormat::kJson;
    }
    if (name == "svg") {
        return ReportFormat::kSvg;
    }
    throw ArgumentError("unknown report format: " + name);
}

const char* report_format_name(ReportFormat format) {
    switch (format) {
        case ReportFormat::kCsv:
            return "csv";
        case ReportFormat::kJson:
            return "json";
        case ReportFormat::kSvg:
            return "svg";
    }
    throw ArgumentError("unknown report format");
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string render_report(const ExperimentReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::kCsv:
            return render_csv(report);
        case ReportFormat::kJson:
            return render_json(report);
        case ReportFormat::kSvg:
            return render_svg(report);
    }
    throw ArgumentError("unknown report format");
}

void write_report_file(const ExperimentReport& report, const std::string& path,
                       ReportFormat format) {
    const std::string body = render_report(report, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << body;
    out.flush();
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

}  // namespace mixcert

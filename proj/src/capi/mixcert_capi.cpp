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

#include "mixcert.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "core/certifier.h"
#include "core/collision.h"
#include "core/errors.h"
#include "core/experiments.h"
#include "core/report_io.h"
#include "core/rng.h"
#include "core/version.h"

struct mx_config {
    mixcert::ExperimentConfig impl;
};

struct mx_report {
    mixcert::ExperimentReport impl;
};

namespace {

thread_local std::string g_last_error;

void set_last_error(const char* what) { g_last_error = what ? what : ""; }

// Runs fn inside the exception-to-status boundary. fn must only publish its
// results on success paths, so a failing call leaves out-parameters alone.
template <typename Fn>
mx_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        g_last_error.clear();
        return MX_OK;
    } catch (const mixcert::ArgumentError& e) {
        set_last_error(e.what());
        return MX_ERR_ARGUMENT;
    } catch (const mixcert::NumericalError& e) {
        set_last_error(e.what());
        return MX_ERR_NUMERICAL;
    } catch (const mixcert::ConsistencyError& e) {
        set_last_error(e.what());
        return MX_ERR_CONSISTENCY;
    } catch (const mixcert::IoError& e) {
        set_last_error(e.what());
        return MX_ERR_IO;
    } catch (const std::exception& e) {
        set_last_error(e.what());
        return MX_ERR_UNKNOWN;
    } catch (...) {
        set_last_error("unknown error");
        return MX_ERR_UNKNOWN;
    }
}

void require(bool ok, const char* message) {
    if (!ok) {
        throw mixcert::ArgumentError(message);
    }
}

char* copy_to_malloc(const std::string& s) {
    char* buffer = static_cast<char*>(std::malloc(s.size() + 1));
    if (buffer == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(buffer, s.data(), s.size() + 1);
    return buffer;
}

std::vector<std::string> split_commas(const std::string& value) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = value.find(',', start);
        parts.push_back(value.substr(start, comma - start));
        if (comma == std::string::npos) {
            return parts;
        }
        start = comma + 1;
    }
}

// Whole-string numeric parsers; stoll/stod alone accept trailing garbage.
std::int64_t parse_int(const std::string& value) {
    std::size_t used = 0;
    std::int64_t parsed = 0;
    try {
        parsed = std::stoll(value, &used);
    } catch (const std::exception&) {
        throw mixcert::ArgumentError("not an integer: " + value);
    }
    if (used != value.size() || value.empty()) {
        throw mixcert::ArgumentError("not an integer: " + value);
    }
    return parsed;
}

std::uint64_t parse_uint(const std::string& value) {
    std::size_t used = 0;
    std::uint64_t parsed = 0;
    try {
        parsed = std::stoull(value, &used);
    } catch (const std::exception&) {
        throw mixcert::ArgumentError("not an unsigned integer: " + value);
    }
    if (used != value.size() || value.empty() || value[0] == '-') {
        throw mixcert::ArgumentError("not an unsigned integer: " + value);
    }
    return parsed;
}

double parse_double(const std::string& value) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw mixcert::ArgumentError("not a number: " + value);
    }
    if (used != value.size() || value.empty()) {
        throw mixcert::ArgumentError("not a number: " + value);
    }
    return parsed;
}

void apply_key(mixcert::ExperimentConfig& config, const std::string& key,
               const std::string& value) {
    if (key == "d_grid") {
        std::vector<int> grid;
        for (const std::string& part : split_commas(value)) {
            grid.push_back(static_cast<int>(parse_int(part)));
        }
        config.d_grid = std::move(grid);
    } else if (key == "eps") {
        config.eps = parse_double(value);
    } else if (key == "n") {
        config.n = parse_int(value);
    } else if (key == "trials") {
        config.trials = parse_int(value);
    } else if (key == "seed") {
        config.seed = parse_uint(value);
    } else if (key == "mc_outer") {
        config.mc_outer = parse_int(value);
    } else if (key == "mc_pairs") {
        config.mc_pairs = parse_int(value);
    } else if (key == "mc_inner") {
        config.mc_inner = parse_int(value);
    } else if (key == "schedule") {
        config.schedule = value;
    } else if (key == "state") {
        config.state = value;
    } else if (key == "out") {
        config.out = value;
    } else if (key == "format") {
        config.format = value;
    } else if (key == "jobs") {
        config.jobs = static_cast<int>(parse_int(value));
    } else if (key == "multipliers") {
        std::vector<double> multipliers;
        for (const std::string& part : split_commas(value)) {
            multipliers.push_back(parse_double(part));
        }
        config.multipliers = std::move(multipliers);
    } else if (key == "t_max") {
        config.t_max = static_cast<int>(parse_int(value));
    } else {
        throw mixcert::ArgumentError("unknown config key: " + key);
    }
}

}  // namespace

extern "C" {

const char* mx_version(void) { return mixcert::kVersion; }

const char* mx_last_error(void) { return g_last_error.c_str(); }

void mx_buffer_free(char* buffer) { std::free(buffer); }

mx_config* mx_config_new(void) {
    try {
        return new mx_config();
    } catch (...) {
        return nullptr;
    }
}

mx_status mx_config_load_file(const char* path, mx_config** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "path and out must not be NULL");
        *out = nullptr;
        auto config = new mx_config();
        try {
            config->impl = mixcert::ExperimentConfig::load_file(path);
        } catch (...) {
            delete config;
            throw;
        }
        *out = config;
    });
}

mx_status mx_config_set(mx_config* config, const char* key, const char* value) {
    return guarded([&] {
        require(config != nullptr && key != nullptr && value != nullptr,
                "config, key, and value must not be NULL");
        // Stage on a copy so a parse failure leaves the config unchanged.
        mixcert::ExperimentConfig staged = config->impl;
        apply_key(staged, key, value);
        config->impl = std::move(staged);
    });
}

mx_status mx_config_render(const mx_config* config, char** out) {
    return guarded([&] {
        require(config != nullptr && out != nullptr, "config and out must not be NULL");
        *out = copy_to_malloc(config->impl.to_json().dump(2));
    });
}

void mx_config_free(mx_config* config) { delete config; }

mx_status mx_run(const char* command, const mx_config* config, mx_report** out) {
    return guarded([&] {
        require(command != nullptr && config != nullptr && out != nullptr,
                "command, config, and out must not be NULL");
        *out = nullptr;
        mixcert::ExperimentConfig run_config = config->impl;
        run_config.command = command;
        auto report = new mx_report();
        try {
            report->impl = mixcert::run_command(run_config);
        } catch (...) {
            delete report;
            throw;
        }
        *out = report;
    });
}

size_t mx_report_num_failed_checks(const mx_report* report) {
    return report == nullptr ? 0 : report->impl.failed_checks.size();
}

const char* mx_report_failed_check(const mx_report* report, size_t index) {
    if (report == nullptr || index >= report->impl.failed_checks.size()) {
        return nullptr;
    }
    return report->impl.failed_checks[index].c_str();
}

mx_status mx_report_render(const mx_report* report, const char* format, char** out) {
    return guarded([&] {
        require(report != nullptr && format != nullptr && out != nullptr,
                "report, format, and out must not be NULL");
        const mixcert::ReportFormat parsed = mixcert::parse_report_format(format);
        *out = copy_to_malloc(mixcert::render_report(report->impl, parsed));
    });
}

mx_status mx_report_write_file(const mx_report* report, const char* path,
                               const char* format) {
    return guarded([&] {
        require(report != nullptr && path != nullptr && format != nullptr,
                "report, path, and format must not be NULL");
        const mixcert::ReportFormat parsed = mixcert::parse_report_format(format);
        mixcert::write_report_file(report->impl, path, parsed);
    });
}

void mx_report_free(mx_report* report) { delete report; }

mx_status mx_test_mixed(int d, double eps, const char* state, int64_t n, uint64_t seed,
                        int* verdict_is_yes, int64_t* samples_out, double* threshold_out) {
    return guarded([&] {
        require(state != nullptr && verdict_is_yes != nullptr,
                "state and verdict_is_yes must not be NULL");
        const mixcert::StateSource source = mixcert::state_source_from_spec(state, d, eps);
        mixcert::Rng rng(seed);
        const mixcert::CertifyResult result =
            n > 0 ? mixcert::test_mixed_with_samples(source, d, eps, n, rng)
                  : mixcert::test_mixed(source, d, eps, rng);
        *verdict_is_yes = result.verdict == mixcert::CertifyVerdict::kYes ? 1 : 0;
        if (samples_out != nullptr) {
            *samples_out = result.n;
        }
        if (threshold_out != nullptr) {
            *threshold_out = result.threshold;
        }
    });
}

mx_status mx_collision_test(const int* samples, size_t num_samples, int d,
                            double eps_prime, int* verdict_is_uniform, int64_t* s_out,
                            double* threshold_out) {
    return guarded([&] {
        require(verdict_is_uniform != nullptr, "verdict_is_uniform must not be NULL");
        require(samples != nullptr || num_samples == 0, "samples must not be NULL");
        const std::vector<int> data(samples, samples + num_samples);
        const mixcert::CollisionTest result = mixcert::collision_verdict(data, d, eps_prime);
        *verdict_is_uniform =
            result.verdict == mixcert::UniformityVerdict::kUniform ? 1 : 0;
        if (s_out != nullptr) {
            *s_out = result.s;
        }
        if (threshold_out != nullptr) {
            *threshold_out = result.threshold;
        }
    });
}

}  // extern "C"

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

// Command-line front end. Talks to the library exclusively through the C
// interface in mixcert.h; flag parsing and printing live here, everything
// else lives behind the library boundary.
//
// Exit codes: 0 success, 1 failed verification checks or runtime failure,
// 2 usage error, 3 I/O error.

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mixcert.h>

namespace {

int exit_code_for(mx_status status) {
    switch (status) {
        case MX_OK:
            return 0;
        case MX_ERR_ARGUMENT:
            return 2;
        case MX_ERR_IO:
            return 3;
        default:
            return 1;
    }
}

int fail(mx_status status) {
    std::fprintf(stderr, "mixcert: error: %s\n", mx_last_error());
    return exit_code_for(status);
}

struct ConfigDeleter {
    void operator()(mx_config* config) const { mx_config_free(config); }
};
struct ReportDeleter {
    void operator()(mx_report* report) const { mx_report_free(report); }
};
struct BufferDeleter {
    void operator()(char* buffer) const { mx_buffer_free(buffer); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(mx_version()) +
                 " - mixedness testing with unentangled measurements: "
                 "certifier, hard instances, and verification suite"};

    std::string command;
    app.add_option("command", command,
                   "certify | sweep | paninski | verify | tails | simulate")
        ->required();

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override it)");

    // Every value flag is collected as a string and handed to the library,
    // which owns the parsing rules; the CLI never interprets values itself.
    std::vector<std::pair<std::string, std::string>> overrides;
    const std::pair<const char*, const char*> flag_keys[] = {
        {"--d", "d_grid"},           {"--eps", "eps"},
        {"--n", "n"},                {"--trials", "trials"},
        {"--seed", "seed"},          {"--mc-outer", "mc_outer"},
        {"--mc-pairs", "mc_pairs"},  {"--mc-inner", "mc_inner"},
        {"--schedule", "schedule"},  {"--state", "state"},
        {"--out", "out"},            {"--format", "format"},
        {"--jobs", "jobs"},          {"--multipliers", "multipliers"},
        {"--t-max", "t_max"},
    };
    const char* flag_help[] = {
        "comma-separated dimensions (default 8,16)",
        "trace-distance parameter in (0, 1] (default 0.5)",
        "sample-count override; -1 uses the derived count",
        "repetitions per grid point (default 200)",
        "root seed, unsigned 64-bit (default 0)",
        "outer Monte-Carlo budget (default 200)",
        "rotation-pair Monte-Carlo budget (default 2000)",
        "inner Monte-Carlo budget (default 2000)",
        "fixed | fresh-haar | greedy-realign",
        "mixed | hard | pure | file:<path>",
        "output path (default: print to stdout)",
        "csv | json | svg (default csv)",
        "worker threads (default 1)",
        "comma-separated sample multipliers (sweep)",
        "deepest exact-table transcript length (paninski)",
    };
    std::size_t help_index = 0;
    for (const auto& [flag, key] : flag_keys) {
        const std::string key_name = key;
        app.add_option_function<std::string>(
               flag,
               [&overrides, key_name](const std::string& value) {
                   overrides.emplace_back(key_name, value);
               },
               flag_help[help_index++]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "mixcert: usage error: %s\n", e.what());
        return 2;
    }

    std::unique_ptr<mx_config, ConfigDeleter> config;
    if (!config_path.empty()) {
        mx_config* loaded = nullptr;
        const mx_status status = mx_config_load_file(config_path.c_str(), &loaded);
        if (status != MX_OK) {
            return fail(status);
        }
        config.reset(loaded);
    } else {
        config.reset(mx_config_new());
        if (!config) {
            std::fprintf(stderr, "mixcert: error: out of memory\n");
            return 1;
        }
    }

    for (const auto& [key, value] : overrides) {
        const mx_status status = mx_config_set(config.get(), key.c_str(), value.c_str());
        if (status != MX_OK) {
            return fail(status);
        }
    }

    mx_report* raw_report = nullptr;
    const mx_status run_status = mx_run(command.c_str(), config.get(), &raw_report);
    if (run_status != MX_OK) {
        return fail(run_status);
    }
    std::unique_ptr<mx_report, ReportDeleter> report(raw_report);

    // The effective output path and format may come from the config file,
    // so read them back from the merged config.
    std::string out_path;
    std::string format = "csv";
    {
        char* raw_json = nullptr;
        const mx_status status = mx_config_render(config.get(), &raw_json);
        if (status != MX_OK) {
            return fail(status);
        }
        std::unique_ptr<char, BufferDeleter> json_buffer(raw_json);
        const nlohmann::json merged = nlohmann::json::parse(json_buffer.get());
        out_path = merged.value("out", "");
        format = merged.value("format", "csv");
    }

    if (out_path.empty()) {
        char* raw_rendering = nullptr;
        const mx_status status =
            mx_report_render(report.get(), format.c_str(), &raw_rendering);
        if (status != MX_OK) {
            return fail(status);
        }
        std::unique_ptr<char, BufferDeleter> rendering(raw_rendering);
        std::fputs(rendering.get(), stdout);
    } else {
        const mx_status status =
            mx_report_write_file(report.get(), out_path.c_str(), format.c_str());
        if (status != MX_OK) {
            return fail(status);
        }
    }

    const std::size_t failed = mx_report_num_failed_checks(report.get());
    for (std::size_t i = 0; i < failed; ++i) {
        std::fprintf(stderr, "failed check: %s\n", mx_report_failed_check(report.get(), i));
    }
    return failed > 0 ? 1 : 0;
}

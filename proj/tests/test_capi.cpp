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

// Exercises the shared library through its C surface only.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <mixcert.h>

TEST_CASE("library identity and error channel", "[capi]") {
    REQUIRE(std::string(mx_version()).rfind("mixcert ", 0) == 0);
    // The error buffer starts empty and NULL frees are no-ops.
    mx_buffer_free(nullptr);
    mx_config_free(nullptr);
    mx_report_free(nullptr);
}

TEST_CASE("config handles", "[capi]") {
    mx_config* cfg = mx_config_new();
    REQUIRE(cfg != nullptr);

    SECTION("set and render round trip") {
        REQUIRE(mx_config_set(cfg, "d_grid", "4,6") == MX_OK);
        REQUIRE(mx_config_set(cfg, "eps", "0.25") == MX_OK);
        REQUIRE(mx_config_set(cfg, "seed", "42") == MX_OK);
        REQUIRE(mx_config_set(cfg, "schedule", "fresh-haar") == MX_OK);
        char* text = nullptr;
        REQUIRE(mx_config_render(cfg, &text) == MX_OK);
        REQUIRE(text != nullptr);
        nlohmann::json j = nlohmann::json::parse(text);
        mx_buffer_free(text);
        REQUIRE(j["eps"].get<double>() == 0.25);
        REQUIRE(j["d_grid"] == nlohmann::json::array({4, 6}));
        REQUIRE(j["seed"].get<uint64_t>() == 42);
        REQUIRE(j["schedule"] == "fresh-haar");
    }

    SECTION("unknown keys fail and leave the config unchanged") {
        char* before = nullptr;
        REQUIRE(mx_config_render(cfg, &before) == MX_OK);
        REQUIRE(mx_config_set(cfg, "bogus_key", "1") == MX_ERR_ARGUMENT);
        REQUIRE(std::strlen(mx_last_error()) > 0);
        char* after = nullptr;
        REQUIRE(mx_config_render(cfg, &after) == MX_OK);
        REQUIRE(std::string(before) == std::string(after));
        mx_buffer_free(before);
        mx_buffer_free(after);
    }

    SECTION("bad values fail and leave the config unchanged") {
        REQUIRE(mx_config_set(cfg, "eps", "half") == MX_ERR_ARGUMENT);
        REQUIRE(mx_config_set(cfg, "jobs", "2x") == MX_ERR_ARGUMENT);
        REQUIRE(mx_config_set(cfg, "seed", "-3") == MX_ERR_ARGUMENT);
        REQUIRE(mx_config_set(cfg, "d_grid", "") == MX_ERR_ARGUMENT);
        char* text = nullptr;
        REQUIRE(mx_config_render(cfg, &text) == MX_OK);
        nlohmann::json j = nlohmann::json::parse(text);
        mx_buffer_free(text);
        REQUIRE(j["eps"].get<double>() == 0.5);
    }

    SECTION("null arguments are argument errors") {
        REQUIRE(mx_config_set(nullptr, "eps", "0.5") == MX_ERR_ARGUMENT);
        REQUIRE(mx_config_set(cfg, nullptr, "0.5") == MX_ERR_ARGUMENT);
        REQUIRE(mx_config_render(cfg, nullptr) == MX_ERR_ARGUMENT);
    }

    mx_config_free(cfg);
}

TEST_CASE("config files", "[capi]") {
    SECTION("missing file is an io error") {
        mx_config* out = reinterpret_cast<mx_config*>(0x1);
        REQUIRE(mx_config_load_file("missing_config_771.json", &out) == MX_ERR_IO);
        REQUIRE(out == nullptr);
        REQUIRE(std::strlen(mx_last_error()) > 0);
    }

    SECTION("valid file loads") {
        const std::string path = "test_capi_config.json";
        {
            std::ofstream f(path);
            f << "{\"command\":\"\",\"d_grid\":[4],\"eps\":0.25,\"n\":-1,\"trials\":2,"
                 "\"seed\":9,\"mc_outer\":10,\"mc_pairs\":10,\"mc_inner\":10,"
                 "\"schedule\":\"fixed\",\"state\":\"mixed\",\"out\":\"\","
                 "\"format\":\"csv\",\"jobs\":1,\"multipliers\":[0,6],\"t_max\":3}";
        }
        mx_config* cfg = nullptr;
        REQUIRE(mx_config_load_file(path.c_str(), &cfg) == MX_OK);
        REQUIRE(cfg != nullptr);
        char* text = nullptr;
        REQUIRE(mx_config_render(cfg, &text) == MX_OK);
        REQUIRE(nlohmann::json::parse(text)["eps"].get<double>() == 0.25);
        mx_buffer_free(text);
        mx_config_free(cfg);
        std::remove(path.c_str());
    }
}

TEST_CASE("running commands through the c api", "[capi]") {
    mx_config* cfg = mx_config_new();
    REQUIRE(mx_config_set(cfg, "d_grid", "4") == MX_OK);
    REQUIRE(mx_config_set(cfg, "trials", "3") == MX_OK);
    REQUIRE(mx_config_set(cfg, "n", "5") == MX_OK);
    REQUIRE(mx_config_set(cfg, "seed", "11") == MX_OK);

    SECTION("simulate renders csv") {
        mx_report* report = nullptr;
        REQUIRE(mx_run("simulate", cfg, &report) == MX_OK);
        REQUIRE(report != nullptr);
        REQUIRE(mx_report_num_failed_checks(report) == 0);
        REQUIRE(mx_report_failed_check(report, 0) == nullptr);
        char* csv = nullptr;
        REQUIRE(mx_report_render(report, "csv", &csv) == MX_OK);
        REQUIRE(std::string(csv).rfind("# version", 0) == 0);
        mx_buffer_free(csv);
        char* svg = nullptr;
        // simulate has no plot spec.
        REQUIRE(mx_report_render(report, "svg", &svg) == MX_ERR_ARGUMENT);
        REQUIRE(svg == nullptr);
        mx_report_free(report);
    }

    SECTION("reports write to files") {
        mx_report* report = nullptr;
        REQUIRE(mx_run("simulate", cfg, &report) == MX_OK);
        const std::string path = "test_capi_report.json";
        REQUIRE(mx_report_write_file(report, path.c_str(), "json") == MX_OK);
        std::ifstream in(path);
        REQUIRE(in.good());
        std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
        REQUIRE(content.find("\"command\":") != std::string::npos);
        std::remove(path.c_str());
        REQUIRE(mx_report_write_file(report, "no_such_dir_55/x.csv", "csv") == MX_ERR_IO);
        mx_report_free(report);
    }

    SECTION("unknown command or format") {
        mx_report* report = reinterpret_cast<mx_report*>(0x1);
        REQUIRE(mx_run("frobnicate", cfg, &report) == MX_ERR_ARGUMENT);
        REQUIRE(report == nullptr);
        mx_report* ok = nullptr;
        REQUIRE(mx_run("simulate", cfg, &ok) == MX_OK);
        char* out = nullptr;
        REQUIRE(mx_report_render(ok, "yaml", &out) == MX_ERR_ARGUMENT);
        mx_report_free(ok);
        REQUIRE(mx_run(nullptr, cfg, &report) == MX_ERR_ARGUMENT);
        REQUIRE(mx_run("simulate", nullptr, &report) == MX_ERR_ARGUMENT);
    }

    SECTION("invalid settings surface as argument errors at run time") {
        REQUIRE(mx_config_set(cfg, "state", "file:nonexistent_982.json") == MX_OK);
        mx_report* report = nullptr;
        // The state file is missing, so the run fails with an io error.
        REQUIRE(mx_run("simulate", cfg, &report) == MX_ERR_IO);
        REQUIRE(report == nullptr);
    }

    mx_config_free(cfg);
}

TEST_CASE("one-shot mixedness certification", "[capi]") {
    SECTION("accepts mixed and rejects hard states") {
        int verdict = -1;
        int64_t n = 0;
        double threshold = 0.0;
        REQUIRE(mx_test_mixed(16, 0.5, "mixed", -1, 7, &verdict, &n, &threshold) == MX_OK);
        REQUIRE(verdict == 1);
        REQUIRE(n == 6144);
        REQUIRE(threshold > 0.0);
        REQUIRE(mx_test_mixed(16, 0.5, "hard", -1, 7, &verdict, nullptr, nullptr) == MX_OK);
        REQUIRE(verdict == 0);
    }

    SECTION("explicit sample counts pass through") {
        int verdict = -1;
        int64_t n = 0;
        REQUIRE(mx_test_mixed(8, 0.5, "mixed", 500, 3, &verdict, &n, nullptr) == MX_OK);
        REQUIRE(n == 500);
    }

    SECTION("argument validation") {
        int verdict = -1;
        REQUIRE(mx_test_mixed(16, 0.5, "thermal", -1, 7, &verdict, nullptr, nullptr) ==
                MX_ERR_ARGUMENT);
        REQUIRE(mx_test_mixed(16, 0.5, nullptr, -1, 7, &verdict, nullptr, nullptr) ==
                MX_ERR_ARGUMENT);
        REQUIRE(mx_test_mixed(16, 0.5, "mixed", -1, 7, nullptr, nullptr, nullptr) ==
                MX_ERR_ARGUMENT);
        REQUIRE(mx_test_mixed(15, 0.5, "hard", -1, 7, &verdict, nullptr, nullptr) ==
                MX_ERR_ARGUMENT);
    }
}

TEST_CASE("one-shot collision test", "[capi]") {
    SECTION("clear verdicts on handcrafted samples") {
        std::vector<int> distinct = {0, 1, 2, 3, 4, 5};
        int verdict = -1;
        int64_t s = -1;
        double threshold = 0.0;
        REQUIRE(mx_collision_test(distinct.data(), distinct.size(), 6, 0.5, &verdict, &s,
                                  &threshold) == MX_OK);
        REQUIRE(verdict == 1);
        REQUIRE(s == 0);
        std::vector<int> repeated(10, 2);
        REQUIRE(mx_collision_test(repeated.data(), repeated.size(), 6, 0.5, &verdict, &s,
                                  nullptr) == MX_OK);
        REQUIRE(verdict == 0);
        REQUIRE(s == 45);
    }

    SECTION("argument validation") {
        int verdict = -1;
        std::vector<int> bad = {0, 7};
        REQUIRE(mx_collision_test(bad.data(), bad.size(), 4, 0.5, &verdict, nullptr,
                                  nullptr) == MX_ERR_ARGUMENT);
        REQUIRE(mx_collision_test(nullptr, 5, 4, 0.5, &verdict, nullptr, nullptr) ==
                MX_ERR_ARGUMENT);
        std::vector<int> one = {0};
        REQUIRE(mx_collision_test(one.data(), one.size(), 4, 0.5, &verdict, nullptr,
                                  nullptr) == MX_ERR_ARGUMENT);
    }
}

// SPDX-License-Identifier: Apache-2.0
//
// rckit - K-factor and envelope statistics for reverberation chamber OTA measurements
// Copyright (C) 2026 The rckit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "catch_amalgamated.hpp"

#include "cli.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using rckit::cli::run;

namespace
{

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string &name)
{
    const auto dir = fs::temp_directory_path() / "rckit_test_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &p)
{
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

nlohmann::json load_json(const fs::path &p)
{
    return nlohmann::json::parse(slurp(p));
}

const std::vector<std::string> kLabels = {"NoAs_R", "NoAs_C_PS1", "NoAs_RC_PS1", "BAs_R", "BAs_C_PS1", "BAs_RC_PS1"};

} // namespace

TEST_CASE("simulate writes a deterministic full-size sweep", "[cli]")
{
    const auto dir = fresh_dir("simulate");
    const auto a = dir / "a.csv", b = dir / "b.csv";
    auto r = invoke({"simulate", "--case", "BAs_C_PS1", "--seed", "7", "--out", a.string()});
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("BAs_C_PS1"));
    REQUIRE(invoke({"simulate", "--case", "BAs_C_PS1", "--seed", "7", "--out", b.string()}).code == 0);

    const std::string text = slurp(a);
    CHECK(std::count(text.begin(), text.end(), '\n') == 330601);
    CHECK(text == slurp(b));

    REQUIRE(invoke({"simulate", "--case", "BAs_C_PS1", "--seed", "8", "--out", b.string()}).code == 0);
    CHECK(text != slurp(b));
}

TEST_CASE("usage errors exit with 2", "[cli]")
{
    const auto dir = fresh_dir("usage");
    const auto out = (dir / "x.csv").string();

    auto r = invoke({"simulate", "--case", "Foo", "--out", out});
    CHECK(r.code == 2);
    for (const auto &l : kLabels)
        CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring(l));
    CHECK_FALSE(fs::exists(out));

    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"simulate", "--case", "NoAs_R"}).code == 2);
    CHECK(invoke({"simulate", "--out", out}).code == 2);
    CHECK(invoke({"simulate", "--case", "NoAs_R", "--bogus", "--out", out}).code == 2);
    CHECK(invoke({"simulate", "--case", "NoAs_R", "--seed", "abc", "--out", out}).code == 2);
    CHECK(invoke({"simulate", "--case", "NoAs_R", "--grid", "1:2", "--out", out}).code == 2);
    CHECK(invoke({"pipeline", "--case", "NoAs_R", "--alpha", "1.5", "--out", dir.string()}).code == 2);
    CHECK(invoke({"pipeline", "--case", "NoAs_R", "--band", "3e9", "--out", dir.string()}).code == 2);
    CHECK_FALSE(fs::exists(out));

    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("runtime errors exit with 1 and leave no partial output", "[cli]")
{
    const auto dir = fresh_dir("runtime");
    const auto bad = dir / "bad.csv";
    {
        std::ofstream os(bad);
        os << "freq_hz,sample_idx,re,im\n10,0,1,1\n10,1,1\n";
    }
    auto r = invoke({"estimate", "--in", bad.string(), "--out", (dir / "k.csv").string()});
    CHECK(r.code == 1);
    CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("line 3"));
    CHECK_FALSE(fs::exists(dir / "k.csv"));

    CHECK(invoke({"gof", "--in", (dir / "missing.csv").string()}).code == 1);

    // One good input followed by a bad one: the pipeline must not leave the first case's outputs behind
    const auto good = dir / "good.csv";
    REQUIRE(invoke({"simulate", "--case", "NoAs_R", "--n-samples", "50", "--grid", "24000000000:10000000:20", "--out",
                    good.string()})
                .code == 0);
    const auto out_dir = dir / "out";
    r = invoke({"pipeline", "--in", good.string() + "," + bad.string(), "--out", out_dir.string()});
    CHECK(r.code == 1);
    CHECK_FALSE(fs::exists(out_dir / "report.json"));
    CHECK_FALSE(fs::exists(out_dir / "good_kseries.csv"));

    // Band entirely outside the sweep
    r = invoke({"estimate", "--in", good.string(), "--band", "1e9:2e9", "--out", (dir / "k.csv").string()});
    CHECK(r.code != 0);
    CHECK_FALSE(fs::exists(dir / "k.csv"));
}

TEST_CASE("estimate, gof and report on a simulated sweep", "[cli]")
{
    const auto dir = fresh_dir("stages");
    const auto sweep = dir / "NoAs_C_PS1.csv";
    REQUIRE(invoke({"simulate", "--case", "NoAs_C_PS1", "--seed", "3", "--n-samples", "200", "--out", sweep.string()})
                .code == 0);

    const auto kcsv = dir / "k.csv";
    auto r = invoke({"estimate", "--in", sweep.string(), "--band", "24.25e9:29.5e9", "--windows", "0,100e6", "--out",
                     kcsv.string()});
    REQUIRE(r.code == 0);
    const std::string k = slurp(kcsv);
    CHECK(k.rfind("freq_hz,k_linear,k_db,p_unstirred,p_stirred,clamped,window_hz\n", 0) == 0);
    CHECK(std::count(k.begin(), k.end(), '\n') == 1 + 2 * 526);

    const auto gcsv = dir / "g.csv";
    r = invoke({"gof", "--in", sweep.string(), "--alpha", "0.05", "--out", gcsv.string()});
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("Rician"));
    const std::string g = slurp(gcsv);
    CHECK(g.rfind("freq_hz,d_rayleigh,pass_rayleigh,d_rician,pass_rician,critical_value\n", 0) == 0);
    CHECK(std::count(g.begin(), g.end(), '\n') == 1 + 551);

    const auto json = dir / "report.json";
    r = invoke({"report", "--in", sweep.string(), "--band", "24.25e9:29.5e9", "--out", json.string()});
    REQUIRE(r.code == 0);
    const auto j = load_json(json);
    REQUIRE(j.at("cases").size() == 1);
    CHECK(j.at("cases").at(0).at("label") == "NoAs_C_PS1");
    CHECK(j.at("cases").at(0).at("series").size() == 4);
    CHECK(j.at("cases").at(0).at("stats").at("pass_rate_rayleigh") == 0.0);
}

TEST_CASE("pipeline over all presets", "[cli][slow]")
{
    const auto dir = fresh_dir("pipeline");
    auto r = invoke({"pipeline", "--seed", "11", "--band", "24.25e9:29.5e9", "--windows", "0,100e6,200e6,400e6",
                     "--alpha", "0.05", "--out", dir.string()});
    REQUIRE(r.code == 0);

    const auto j = load_json(dir / "report.json");
    REQUIRE(j.at("cases").size() == 6);
    std::vector<std::string> labels;
    for (const auto &c : j.at("cases"))
    {
        labels.push_back(c.at("label"));
        REQUIRE(c.at("series").size() == 4);
        for (const auto &s : c.at("series"))
            CHECK(s.at("k_db").size() == 526);
        CHECK(fs::exists(dir / (c.at("label").get<std::string>() + "_kseries.csv")));
    }
    CHECK(labels == kLabels);
    CHECK(j.at("cases").at(0).at("stats").at("pass_rate_rayleigh").get<double>() >= 0.95);
    CHECK(j.at("band").at("lo_hz") == 24'250'000'000.0);
    CHECK(j.at("alpha") == 0.05);
}

TEST_CASE("pipeline from a configuration file", "[cli]")
{
    const auto dir = fresh_dir("config");
    const auto cfg = dir / "case.json";
    {
        std::ofstream os(cfg);
        os << R"({"label": "los_only", "stirred_power_db": -10, "n_samples": 100,
                  "grid": {"start_hz": 24000000000, "step_hz": 10000000, "count": 40},
                  "paths": [{"amplitude": 1.0, "delay_s": 5e-9, "phase0_rad": 0.0}]})";
    }
    const auto a = dir / "a", b = dir / "b";
    REQUIRE(invoke({"pipeline", "--config", cfg.string(), "--seed", "5", "--out", a.string()}).code == 0);
    REQUIRE(invoke({"pipeline", "--config", cfg.string(), "--seed", "5", "--out", b.string()}).code == 0);
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(slurp(a / "los_only_kseries.csv") == slurp(b / "los_only_kseries.csv"));
    const auto j = load_json(a / "report.json");
    CHECK(j.at("cases").at(0).at("stats").at("mean_k_db").get<double>() == Catch::Approx(10.0).margin(1.0));
}

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

#include "rckit/gof.hpp"
#include "rckit/kfactor.hpp"
#include "rckit/simulate.hpp"

using namespace rckit;
using Catch::Approx;

namespace
{

CaseConfig single_path(double amplitude, std::size_t n_freq = 100)
{
    CaseConfig c;
    c.label = "single";
    c.grid = FrequencyGrid(24'250'000'000, 10'000'000, n_freq);
    c.stirred_power_db = 0.0;
    if (amplitude > 0.0)
        c.paths = {{amplitude, 12e-9, 0.4}};
    return c;
}

} // namespace

TEST_CASE("config validation", "[simulate]")
{
    auto c = single_path(1.0);
    CHECK_NOTHROW(validate(c));

    auto bad = c;
    bad.n_samples = 1;
    CHECK_THROWS_AS(synthesize_sweep(bad, 1), std::invalid_argument);
    bad = c;
    bad.stirred_ripple_db = 3.5;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = c;
    bad.paths[0].delay_s = -1e-9;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = c;
    bad.stirred_power_db = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("unstirred response and stirred power profile", "[simulate]")
{
    CaseConfig c = single_path(2.0);
    // phase0 - 2 pi f tau at f = 24.25 GHz, tau = 12 ns: f tau = 291 whole cycles
    CHECK(std::abs(unstirred_response(c, 24'250'000'000) - std::polar(2.0, 0.4)) < 1e-12);

    c.stirred_power_db = 3.0;
    c.stirred_ripple_db = 1.0;
    c.ripple_period_hz = 400e6;
    // quarter period: peak of the ripple
    CHECK(stirred_power(c, c.grid.start_hz() + 100'000'000) == Approx(lin10(3.0) * lin10(1.0)));
    CHECK(stirred_power(c, c.grid.start_hz()) == Approx(lin10(3.0)));
}

TEST_CASE("synthesize_sweep is deterministic", "[simulate]")
{
    const auto c = single_path(1.0, 20);
    const auto a = synthesize_sweep(c, 99);
    const auto b = synthesize_sweep(c, 99);
    CHECK(a == b);
    CHECK(a.case_label() == "single");
    CHECK_FALSE(a == synthesize_sweep(c, 100));
}

TEST_CASE("single LOS path gives K = 10", "[simulate]")
{
    const auto sweep = synthesize_sweep(single_path(std::sqrt(10.0)), 8);
    const auto s = k_series(sweep);
    double mean = 0.0;
    for (const auto &e : s.estimates)
        mean += e.k_linear;
    mean /= static_cast<double>(s.estimates.size());
    CHECK(mean == Approx(10.0).margin(0.2));
}

TEST_CASE("zero-path configuration is a pure stirred field", "[simulate]")
{
    const auto sweep = synthesize_sweep(single_path(0.0, 200), 4);
    for (const auto &e : k_series(sweep).estimates)
        REQUIRE(e.k_linear < 0.02);
    CHECK(gof_sweep(sweep, 0.05).pass_rate_rayleigh >= 0.95);
}

TEST_CASE("row moments concentrate on the configuration", "[simulate][property]")
{
    const auto presets = preset_cases(FrequencyGrid::fr2_sweep(), 600);
    for (const auto &c : presets.cases())
    {
        const auto sweep = synthesize_sweep(c, 1234);
        for (std::size_t i = 0; i < sweep.n_frequencies(); ++i)
        {
            const std::int64_t f = sweep.grid().point(i);
            const double ps = stirred_power(c, f);
            const auto m = sample_moments(sweep.row(i));
            INFO(c.label << " at " << f << " Hz");
            REQUIRE(std::abs(m.mean - unstirred_response(c, f)) < 4.0 * std::sqrt(ps / 600.0));
            REQUIRE(m.variance == Approx(ps).epsilon(0.15));
        }
    }
}

TEST_CASE("preset table", "[simulate][presets]")
{
    const auto presets = preset_cases();
    const std::vector<std::string> expected = {"NoAs_R", "NoAs_C_PS1", "NoAs_RC_PS1", "BAs_R", "BAs_C_PS1", "BAs_RC_PS1"};
    CHECK(presets.labels() == expected);

    const auto truth = [&](const char *label) { return configured_truth(presets.at(label)); };
    const auto k = [&](const char *label) { return truth(label).mean_k_db(); };
    const auto ps = [&](const char *label) { return db10(truth(label).mean_p_stirred); };
    const auto pu = [&](const char *label) { return db10(truth(label).mean_p_unstirred); };

    CHECK(k("BAs_C_PS1") == Approx(35.01).margin(1e-9));
    CHECK(k("NoAs_C_PS1") == Approx(35.01 - 14.31).margin(1e-9));
    CHECK(k("NoAs_R") == Approx(-9.28).margin(1e-9));
    CHECK(k("BAs_R") - k("NoAs_R") == Approx(-1.62).margin(1e-9));
    CHECK(k("BAs_RC_PS1") - k("NoAs_RC_PS1") == Approx(4.12).margin(1e-9));

    CHECK(ps("NoAs_R") == Approx(0.0).margin(1e-9));
    CHECK(ps("BAs_C_PS1") - ps("NoAs_C_PS1") == Approx(-14.36).margin(1e-9));
    CHECK(ps("BAs_RC_PS1") - ps("NoAs_RC_PS1") == Approx(-4.18).margin(1e-9));
    CHECK(ps("BAs_R") - ps("NoAs_R") == Approx(-3.03).margin(1e-9));

    // unstirred power of the CATR cases barely moves with the absorber
    CHECK(pu("BAs_C_PS1") - pu("NoAs_C_PS1") == Approx(-0.06).margin(0.1));
    CHECK(pu("BAs_RC_PS1") - pu("NoAs_RC_PS1") == Approx(-0.06).margin(0.1));

    // RIMP-only K wanders strongly with frequency, CATR-driven K does not
    const auto spread = [&](const char *label) {
        const auto t = truth(label).k_linear;
        const auto [mn, mx] = std::minmax_element(t.begin(), t.end());
        return db10(*mx) - db10(*mn);
    };
    CHECK(spread("NoAs_R") > 10.0);
    CHECK(spread("BAs_C_PS1") < 3.0);

    try
    {
        presets.at("Foo");
        FAIL("expected std::out_of_range");
    }
    catch (const std::out_of_range &e)
    {
        for (const auto &l : expected)
            CHECK(std::string(e.what()).find(l) != std::string::npos);
    }
    CHECK_FALSE(presets.contains("Foo"));
    CHECK_THROWS_AS(preset_cases(FrequencyGrid::fr2_sweep(), 1), std::invalid_argument);
}

TEST_CASE("presets follow the requested grid and sample count", "[simulate][presets]")
{
    const FrequencyGrid g(24'000'000'000, 50'000'000, 40);
    const auto presets = preset_cases(g, 64);
    for (const auto &c : presets.cases())
    {
        CHECK(c.grid == g);
        CHECK(c.n_samples == 64);
    }
    CHECK(configured_truth(presets.at("BAs_C_PS1")).mean_k_db() == Approx(35.01).margin(1e-9));
}

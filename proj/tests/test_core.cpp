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

#include "rckit/core.hpp"

#include <random>

using namespace rckit;
using Catch::Approx;

namespace
{

SweepMatrix ramp_sweep(const FrequencyGrid &grid, std::size_t n)
{
    std::vector<ComplexSample> data(grid.count() * n);
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = {static_cast<double>(i), -0.5 * static_cast<double>(i)};
    return SweepMatrix(grid, n, std::move(data), "ramp");
}

} // namespace

TEST_CASE("db10 and lin10", "[core]")
{
    CHECK(db10(1.0) == 0.0);
    CHECK(db10(10.0) == Approx(10.0).epsilon(1e-15));
    // 10 log10(0.3316) evaluated with 30-digit arithmetic
    CHECK(db10(0.3316) == Approx(-4.79385478121764056).epsilon(1e-14));

    CHECK_THROWS_AS(db10(0.0), std::domain_error);
    CHECK_THROWS_AS(db10(-1.0), std::domain_error);
    CHECK(db10_floored(0.0) == kDbFloor);
    CHECK(db10_floored(1e-9) == kDbFloor);
}

TEST_CASE("db10/lin10 round trip over 24 decades", "[core][property]")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> exponent(-12.0, 12.0);
    for (int i = 0; i < 10000; ++i)
    {
        const double x = std::pow(10.0, exponent(rng));
        const double back = lin10(db10(x));
        REQUIRE(std::abs(back - x) <= 1e-12 * x);
    }
}

TEST_CASE("FrequencyGrid", "[core]")
{
    const auto g = FrequencyGrid::fr2_sweep();
    CHECK(g.count() == 551);
    CHECK(g.start_hz() == 24'000'000'000);
    CHECK(g.stop_hz() == 29'500'000'000);

    const auto pts = g.points();
    for (std::size_t i = 1; i < pts.size(); ++i)
        REQUIRE(pts[i] > pts[i - 1]);

    CHECK_THROWS_AS(FrequencyGrid(0, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyGrid(0, 10, 0), std::invalid_argument);

    CHECK(FrequencyGrid(5, 1, 1) == FrequencyGrid(5, 7, 1));
    CHECK_FALSE(FrequencyGrid(5, 1, 2) == FrequencyGrid(5, 7, 2));
}

TEST_CASE("SweepMatrix invariants", "[core]")
{
    const FrequencyGrid g(0, 10, 3);
    CHECK_THROWS_AS(SweepMatrix(g, 1, std::vector<ComplexSample>(3)), std::invalid_argument);
    CHECK_THROWS_AS(SweepMatrix(g, 2, std::vector<ComplexSample>(5)), std::invalid_argument);

    std::vector<ComplexSample> bad(6);
    bad[4] = {std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_THROWS_AS(SweepMatrix(g, 2, bad), std::invalid_argument);

    const auto s = ramp_sweep(g, 2);
    CHECK(s.row(1)[0] == ComplexSample(2.0, -1.0));
    CHECK(s.at(2, 1) == ComplexSample(5.0, -2.5));
    CHECK_THROWS_AS(s.row(3), std::out_of_range);
    CHECK(s.envelopes(0)[1] == Approx(std::abs(ComplexSample(1.0, -0.5))));
}

TEST_CASE("select_band", "[core]")
{
    const auto full = ramp_sweep(FrequencyGrid::fr2_sweep(), 2);

    SECTION("analysis band has floor((29.5 - 24.25) GHz / 10 MHz) + 1 = 526 points")
    {
        const auto band = select_band(full, BandSelection::fr2_analysis());
        CHECK(band.n_frequencies() == 526);
        CHECK(band.grid().start_hz() == 24'250'000'000);
        CHECK(band.grid().stop_hz() == 29'500'000'000);
        CHECK(band.row(0)[0] == full.row(25)[0]);
        CHECK(band.case_label() == "ramp");
    }

    SECTION("band equal to grid span is the identity")
    {
        CHECK(select_band(full, {24.0e9, 29.5e9}) == full);
    }

    SECTION("band outside grid is an error")
    {
        CHECK_THROWS_AS(select_band(full, {30e9, 31e9}), std::invalid_argument);
        CHECK_THROWS_AS(select_band(full, {1e9, 2e9}), std::invalid_argument);
    }

    SECTION("off-grid edges snap outward")
    {
        const auto band = select_band(full, {24.255e9, 24.285e9});
        CHECK(band.grid().start_hz() == 24'250'000'000);
        CHECK(band.grid().stop_hz() == 24'290'000'000);
        CHECK(band.n_frequencies() == 5);
    }

    SECTION("band wider than the grid is clipped")
    {
        CHECK(select_band(full, {1e9, 100e9}) == full);
    }

    SECTION("idempotent")
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> f(23.5e9, 30e9);
        for (int i = 0; i < 200; ++i)
        {
            double lo = f(rng), hi = f(rng);
            if (lo > hi)
                std::swap(lo, hi);
            if (hi < 24e9 || lo > 29.5e9)
                continue;
            const BandSelection b{lo, hi};
            const auto once = select_band(full, b);
            REQUIRE(select_band(once, b) == once);
        }
    }
}

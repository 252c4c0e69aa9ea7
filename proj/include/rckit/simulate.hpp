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

#ifndef RCKIT_SIMULATE_HPP
#define RCKIT_SIMULATE_HPP

#include "rckit/core.hpp"

#include <string_view>

namespace rckit
{

// Fixed (unstirred) path: amplitude * exp(j (phase0 - 2 pi f delay))
struct UnstirredPath
{
    double amplitude = 0.0;
    double delay_s = 0.0;
    double phase0_rad = 0.0;
};

// Recipe for a synthetic RC(+CATR) sweep:
//   H(f, i) = sum_p a_p exp(j(phi_p - 2 pi f tau_p)) + s_i(f),  s_i(f) ~ CN(0, P_s(f))
//   P_s(f)  = P_s * (1 + d sin(2 pi (f - f0) / ripple_period)),  d = 10^(ripple_db/10) - 1
struct CaseConfig
{
    std::string label;
    std::vector<UnstirredPath> paths;
    double stirred_power_db = 0.0;
    double stirred_ripple_db = 0.0; // peak excursion above the mean, < 3.01 dB
    double ripple_period_hz = 1.0e9;
    std::size_t n_samples = 600;
    FrequencyGrid grid = FrequencyGrid::fr2_sweep();
};

// Throws std::invalid_argument describing the first violated constraint
void validate(const CaseConfig &config);

ComplexSample unstirred_response(const CaseConfig &config, std::int64_t freq_hz);
double stirred_power(const CaseConfig &config, std::int64_t freq_hz);

// Ground truth of a configuration over its grid
struct ConfiguredTruth
{
    std::vector<double> k_linear; // |H_d(f)|^2 / P_s(f)
    double mean_k_linear = 0.0;
    double mean_p_unstirred = 0.0;
    double mean_p_stirred = 0.0;

    double mean_k_db() const { return db10_floored(mean_k_linear); }
};
ConfiguredTruth configured_truth(const CaseConfig &config);

// Row i is drawn from substream(seed, i), so rows are independent of evaluation order.
SweepMatrix synthesize_sweep(const CaseConfig &config, std::uint64_t seed);

// The six hybrid chamber configurations
class PresetTable
{
public:
    explicit PresetTable(std::vector<CaseConfig> cases) : cases_(std::move(cases)) {}

    const std::vector<CaseConfig> &cases() const { return cases_; }
    std::vector<std::string> labels() const;
    bool contains(std::string_view label) const;
    // Throws std::out_of_range listing the valid labels
    const CaseConfig &at(std::string_view label) const;

private:
    std::vector<CaseConfig> cases_;
};

// Calibration targets of one preset: configured mean K and mean stirred power
struct PresetTarget
{
    std::string_view label;
    double mean_k_db;
    double stirred_power_db;
};
const std::vector<PresetTarget> &preset_targets();

// Presets built on `grid`. Path amplitudes are scaled so that the configured mean K over
// the grid equals the target exactly.
PresetTable preset_cases(const FrequencyGrid &grid = FrequencyGrid::fr2_sweep(), std::size_t n_samples = 600);

} // namespace rckit

#endif

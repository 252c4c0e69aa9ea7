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

#ifndef RCKIT_REPORT_HPP
#define RCKIT_REPORT_HPP

#include "rckit/gof.hpp"
#include "rckit/kfactor.hpp"
#include "rckit/simulate.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>

namespace rckit
{

struct CaseStatistics
{
    double mean_k_db = kDbFloor;         // db10 of the band-average linear K
    double dynamic_range_db = 0.0;       // peak-to-peak of K in dB over frequencies with K > 0
    double normalized_std = 0.0;         // population std of linear K / mean linear K
    double mean_s21sq_db = 0.0;          // average |S21|^2 over frequencies and stirrer positions
    double pass_rate_rayleigh = 0.0;
    double pass_rate_rician = 0.0;
    double mean_p_unstirred_db = kDbFloor;
    double mean_p_stirred_db = kDbFloor;
    std::size_t clamped_count = 0;
    bool all_clamped = false; // mean_k_db is then the kDbFloor sentinel
};

CaseStatistics case_statistics(const KSeries &series, const SweepMatrix &sweep, const GofOutcome &gof);

// Raised by the CSV readers; the message carries the 1-based line number
class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string &what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Sweep CSV: header `freq_hz,sample_idx,re,im`, rows ordered by frequency then sample index,
// values printed in shortest round-trip form (at most 17 significant digits).
void write_sweep_csv(const SweepMatrix &sweep, std::ostream &os);
void write_sweep_csv(const SweepMatrix &sweep, const std::filesystem::path &path);
SweepMatrix read_sweep_csv(std::istream &is, std::string case_label = {});
// The case label defaults to the file stem
SweepMatrix read_sweep_csv(const std::filesystem::path &path);

struct WindowedSeries
{
    std::int64_t window_hz = 0;
    KSeries series;
};

// K-series CSV: `freq_hz,k_linear,k_db,p_unstirred,p_stirred,clamped,window_hz`, one block per window
void write_kseries_csv(const std::vector<WindowedSeries> &series, std::ostream &os);
void write_kseries_csv(const std::vector<WindowedSeries> &series, const std::filesystem::path &path);

// Per-frequency K-S results: `freq_hz,d_rayleigh,pass_rayleigh,d_rician,pass_rician,critical_value`
void write_gof_csv(const GofOutcome &gof, std::ostream &os);

// Everything the report needs for one case
struct CaseAnalysis
{
    std::string label;
    CaseStatistics stats;
    std::vector<WindowedSeries> series;
    GofOutcome gof;
};

struct AnalysisOptions
{
    std::optional<BandSelection> band; // whole sweep when unset
    std::vector<std::int64_t> windows_hz{0, 100'000'000, 200'000'000, 400'000'000};
    double alpha = 0.05;
};

// band selection -> K series -> sliding windows -> GoF -> statistics
CaseAnalysis analyze_case(const SweepMatrix &sweep, const AnalysisOptions &options);

struct Report
{
    std::vector<CaseAnalysis> cases;
    std::int64_t band_lo_hz = 0;
    std::int64_t band_hi_hz = 0;
    double alpha = 0.05;
    std::size_t n_samples = 0;
};

std::string report_json(const Report &report);
void write_report_json(const Report &report, const std::filesystem::path &path);

// Writes through a temporary sibling file and renames it into place; the temporary is
// removed if `write` throws.
void atomic_write(const std::filesystem::path &path, const std::function<void(std::ostream &)> &write);

// CaseConfig JSON: {"label", "paths":[{"amplitude","delay_s","phase0_rad"}], "stirred_power_db",
// "stirred_ripple_db", "ripple_period_hz", "n_samples", "grid":{"start_hz","step_hz","count"}}
CaseConfig case_config_from_json(const std::string &text);
std::string case_config_to_json(const CaseConfig &config);

} // namespace rckit

#endif

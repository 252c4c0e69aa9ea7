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

#ifndef RCKIT_CORE_HPP
#define RCKIT_CORE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rckit
{

// Complex transmission coefficient (S21), dimensionless
using ComplexSample = std::complex<double>;

// Floor used wherever a zero K-factor or power must be shown in dB
inline constexpr double kDbFloor = -60.0;

// Raised when a sample set has no stirred component (zero variance)
class DegenerateSampleError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// 10*log10(x), x > 0. Throws std::domain_error otherwise.
double db10(double x);

// Inverse of db10
double lin10(double db);

// db10 with values <= 0 (or below the floor) mapped to floor_db
double db10_floored(double x, double floor_db = kDbFloor);

// Uniform frequency axis. Frequencies are integer Hz so that grid membership
// and band selection are exact.
class FrequencyGrid
{
public:
    FrequencyGrid(std::int64_t start_hz, std::int64_t step_hz, std::size_t count);

    // 24.0 - 29.5 GHz in 10 MHz steps (551 points)
    static FrequencyGrid fr2_sweep();

    std::int64_t start_hz() const { return start_hz_; }
    std::int64_t step_hz() const { return step_hz_; }
    std::size_t count() const { return count_; }
    std::int64_t stop_hz() const { return point(count_ - 1); }

    std::int64_t point(std::size_t i) const { return start_hz_ + static_cast<std::int64_t>(i) * step_hz_; }
    std::vector<std::int64_t> points() const;

    // Grids with a single point compare equal when the point matches; the step is immaterial.
    bool operator==(const FrequencyGrid &other) const;

private:
    std::int64_t start_hz_;
    std::int64_t step_hz_;
    std::size_t count_;
};

// Inclusive analysis band in Hz
struct BandSelection
{
    double lo_hz = 0.0;
    double hi_hz = 0.0;

    // 24.25 - 29.5 GHz
    static BandSelection fr2_analysis() { return {24.25e9, 29.5e9}; }
};

// Index range [first, last] of grid points covering the band, with band edges snapped
// outward to the neighbouring grid points. Throws std::invalid_argument on empty intersection.
struct IndexRange
{
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t size() const { return last - first + 1; }
};
IndexRange band_indices(const FrequencyGrid &grid, const BandSelection &band);

// Complex samples indexed by (frequency point, stirrer position), row-major
class SweepMatrix
{
public:
    SweepMatrix(FrequencyGrid grid, std::size_t n_samples, std::vector<ComplexSample> data, std::string case_label = {});

    const FrequencyGrid &grid() const { return grid_; }
    std::size_t n_frequencies() const { return grid_.count(); }
    std::size_t n_samples() const { return n_samples_; }
    const std::string &case_label() const { return case_label_; }
    void set_case_label(std::string label) { case_label_ = std::move(label); }

    std::span<const ComplexSample> row(std::size_t freq_index) const;
    const ComplexSample &at(std::size_t freq_index, std::size_t sample_index) const;
    std::span<const ComplexSample> data() const { return data_; }

    // |S21| of one frequency row
    std::vector<double> envelopes(std::size_t freq_index) const;

    bool operator==(const SweepMatrix &other) const = default;

private:
    FrequencyGrid grid_;
    std::size_t n_samples_;
    std::vector<ComplexSample> data_;
    std::string case_label_;
};

// Row subset of the sweep lying in the band (edges snapped outward)
SweepMatrix select_band(const SweepMatrix &sweep, const BandSelection &band);

} // namespace rckit

#endif

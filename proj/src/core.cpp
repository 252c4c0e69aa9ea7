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

#include "rckit/core.hpp"

#include <cmath>
#include <algorithm>

namespace rckit
{

double db10(double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("db10: argument must be positive and finite, got " + std::to_string(x));
    return 10.0 * std::log10(x);
}

double lin10(double db)
{
    return std::pow(10.0, db / 10.0);
}

double db10_floored(double x, double floor_db)
{
    if (!(x > 0.0))
        return floor_db;
    return std::max(db10(x), floor_db);
}

FrequencyGrid::FrequencyGrid(std::int64_t start_hz, std::int64_t step_hz, std::size_t count)
    : start_hz_(start_hz), step_hz_(step_hz), count_(count)
{
    if (step_hz <= 0)
        throw std::invalid_argument("FrequencyGrid: step must be positive");
    if (count == 0)
        throw std::invalid_argument("FrequencyGrid: count must be at least 1");
}

FrequencyGrid FrequencyGrid::fr2_sweep()
{
    return FrequencyGrid(24'000'000'000, 10'000'000, 551);
}

std::vector<std::int64_t> FrequencyGrid::points() const
{
    std::vector<std::int64_t> out(count_);
    for (std::size_t i = 0; i < count_; ++i)
        out[i] = point(i);
    return out;
}

bool FrequencyGrid::operator==(const FrequencyGrid &other) const
{
    if (count_ != other.count_ || start_hz_ != other.start_hz_)
        return false;
    return count_ == 1 || step_hz_ == other.step_hz_;
}

IndexRange band_indices(const FrequencyGrid &grid, const BandSelection &band)
{
    if (!std::isfinite(band.lo_hz) || !std::isfinite(band.hi_hz) || band.lo_hz > band.hi_hz)
        throw std::invalid_argument("band: require finite lo <= hi");

    const double start = static_cast<double>(grid.start_hz());
    const double stop = static_cast<double>(grid.stop_hz());
    if (band.hi_hz < start || band.lo_hz > stop)
        throw std::invalid_argument("band [" + std::to_string(band.lo_hz) + ", " + std::to_string(band.hi_hz) +
                                    "] Hz does not intersect the grid [" + std::to_string(grid.start_hz()) + ", " +
                                    std::to_string(grid.stop_hz()) + "] Hz");

    // Work in integer Hz; non-integer edges round outward first.
    const auto lo = static_cast<std::int64_t>(std::floor(std::max(band.lo_hz, start)));
    const auto hi = static_cast<std::int64_t>(std::ceil(std::min(band.hi_hz, stop)));
    const std::int64_t step = grid.step_hz();

    IndexRange r;
    r.first = static_cast<std::size_t>((lo - grid.start_hz()) / step);                // floor
    r.last = static_cast<std::size_t>((hi - grid.start_hz() + step - 1) / step);      // ceil
    r.last = std::min(r.last, grid.count() - 1);
    return r;
}

SweepMatrix::SweepMatrix(FrequencyGrid grid, std::size_t n_samples, std::vector<ComplexSample> data, std::string case_label)
    : grid_(grid), n_samples_(n_samples), data_(std::move(data)), case_label_(std::move(case_label))
{
    if (n_samples_ < 2)
        throw std::invalid_argument("SweepMatrix: at least 2 samples per frequency are required");
    if (data_.size() != grid_.count() * n_samples_)
        throw std::invalid_argument("SweepMatrix: data size " + std::to_string(data_.size()) + " does not match " +
                                    std::to_string(grid_.count()) + " x " + std::to_string(n_samples_));
    for (const auto &s : data_)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw std::invalid_argument("SweepMatrix: non-finite sample");
}

std::span<const ComplexSample> SweepMatrix::row(std::size_t freq_index) const
{
    if (freq_index >= grid_.count())
        throw std::out_of_range("SweepMatrix::row: frequency index out of range");
    return std::span<const ComplexSample>(data_).subspan(freq_index * n_samples_, n_samples_);
}

const ComplexSample &SweepMatrix::at(std::size_t freq_index, std::size_t sample_index) const
{
    if (sample_index >= n_samples_)
        throw std::out_of_range("SweepMatrix::at: sample index out of range");
    return row(freq_index)[sample_index];
}

std::vector<double> SweepMatrix::envelopes(std::size_t freq_index) const
{
    auto r = row(freq_index);
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        out[i] = std::abs(r[i]);
    return out;
}

SweepMatrix select_band(const SweepMatrix &sweep, const BandSelection &band)
{
    const IndexRange r = band_indices(sweep.grid(), band);
    FrequencyGrid grid(sweep.grid().point(r.first), sweep.grid().step_hz(), r.size());
    auto first = sweep.data().begin() + static_cast<std::ptrdiff_t>(r.first * sweep.n_samples());
    std::vector<ComplexSample> data(first, first + static_cast<std::ptrdiff_t>(r.size() * sweep.n_samples()));
    return SweepMatrix(grid, sweep.n_samples(), std::move(data), sweep.case_label());
}

} // namespace rckit

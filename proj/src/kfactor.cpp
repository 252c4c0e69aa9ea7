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

#include "rckit/kfactor.hpp"
#include "rckit/random.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rckit
{

SampleMoments sample_moments(std::span<const ComplexSample> samples)
{
    const std::size_t n = samples.size();
    if (n < 2)
        throw std::invalid_argument("at least 2 samples are required, got " + std::to_string(n));

    ComplexSample sum{0.0, 0.0};
    for (const auto &s : samples)
    {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw std::invalid_argument("non-finite sample");
        sum += s;
    }
    const ComplexSample mean = sum / static_cast<double>(n);

    double ss = 0.0;
    for (const auto &s : samples)
        ss += std::norm(s - mean);

    return {mean, ss / static_cast<double>(n - 1), n};
}

static void require_stirred(const SampleMoments &m)
{
    if (!(m.variance > 0.0))
        throw DegenerateSampleError("zero stirred power: all samples are identical");
}

PowerDecomposition decompose_powers(std::span<const ComplexSample> samples)
{
    const SampleMoments m = sample_moments(samples);
    require_stirred(m);

    PowerDecomposition out;
    out.p_stirred = m.variance;
    const double raw = std::norm(m.mean) - m.variance / static_cast<double>(m.n);
    out.clamped = raw <= 0.0;
    out.p_unstirred = out.clamped ? 0.0 : raw;
    return out;
}

KFactorEstimate estimate_k(const SampleMoments &m)
{
    require_stirred(m);
    const double n = static_cast<double>(m.n);
    const double raw = (n - 2.0) / (n - 1.0) * std::norm(m.mean) / m.variance - 1.0 / n;

    KFactorEstimate est;
    est.n_samples = m.n;
    est.p_stirred = m.variance;
    est.clamped = raw <= 0.0;
    est.k_linear = est.clamped ? 0.0 : raw;
    est.p_unstirred = est.k_linear * est.p_stirred;
    return est;
}

KFactorEstimate estimate_k(std::span<const ComplexSample> samples)
{
    return estimate_k(sample_moments(samples));
}

namespace
{

// Linear-interpolated empirical quantile of sorted data
double quantile_sorted(const std::vector<double> &sorted, double p)
{
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

} // namespace

ConfidenceInterval k_confidence_interval(double k_hat, std::size_t n, double level, std::size_t trials, std::uint64_t seed)
{
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("confidence level must lie in (0, 1)");
    if (trials < 1000)
        throw std::invalid_argument("at least 1000 Monte Carlo trials are required");
    if (n < 2)
        throw std::invalid_argument("sample count must be at least 2");
    if (!(k_hat >= 0.0) || !std::isfinite(k_hat))
        throw std::invalid_argument("K must be finite and non-negative");

    // Unit total power: P_d + P_s = 1
    const double p_stirred = 1.0 / (1.0 + k_hat);
    const double los = std::sqrt(k_hat * p_stirred);
    const double mean_sd = std::sqrt(p_stirred / (2.0 * static_cast<double>(n)));

    std::vector<double> k_db(trials);
    for (std::size_t t = 0; t < trials; ++t)
    {
        auto rng = substream(seed, t);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::gamma_distribution<double> gamma(static_cast<double>(n - 1), 1.0);

        SampleMoments m;
        m.n = n;
        m.mean = {los + mean_sd * normal(rng), mean_sd * normal(rng)};
        m.variance = p_stirred * gamma(rng) / static_cast<double>(n - 1);
        k_db[t] = estimate_k(m).k_db();
    }
    std::sort(k_db.begin(), k_db.end());

    ConfidenceInterval ci;
    ci.level = level;
    ci.method_trials = trials;
    ci.lo_db = quantile_sorted(k_db, (1.0 - level) / 2.0);
    ci.hi_db = quantile_sorted(k_db, (1.0 + level) / 2.0);
    return ci;
}

std::vector<double> KSeries::k_linear() const
{
    std::vector<double> out;
    out.reserve(estimates.size());
    for (const auto &e : estimates)
        out.push_back(e.k_linear);
    return out;
}

std::vector<double> KSeries::k_db() const
{
    std::vector<double> out;
    out.reserve(estimates.size());
    for (const auto &e : estimates)
        out.push_back(e.k_db());
    return out;
}

KSeries k_series(const SweepMatrix &sweep)
{
    KSeries series{sweep.grid(), {}};
    series.estimates.reserve(sweep.n_frequencies());
    for (std::size_t i = 0; i < sweep.n_frequencies(); ++i)
    {
        try
        {
            series.estimates.push_back(estimate_k(sweep.row(i)));
        }
        catch (const DegenerateSampleError &e)
        {
            throw DegenerateSampleError(std::string(e.what()) + " at " + std::to_string(sweep.grid().point(i)) + " Hz");
        }
    }
    return series;
}

KSeries sliding_window_average(const KSeries &series, const SlidingWindowSpec &spec)
{
    if (spec.width_hz < 0)
        throw std::invalid_argument("sliding window width must be non-negative");
    if (series.estimates.size() != series.grid.count())
        throw std::invalid_argument("K series length does not match its grid");
    if (spec.width_hz == 0)
        return series;

    // Grid points g with |g - f| <= width/2  <=>  2 |i - j| step <= width
    const std::size_t n = series.grid.count();
    const auto reach = static_cast<std::size_t>(spec.width_hz / (2 * series.grid.step_hz()));

    KSeries out{series.grid, {}};
    out.estimates.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const std::size_t first = i >= reach ? i - reach : 0;
        const std::size_t last = std::min(n - 1, i + reach);
        const double count = static_cast<double>(last - first + 1);

        // Accumulate deviations from the centre point so that flat and odd-symmetric windows
        // reproduce the centre value exactly.
        const auto &centre = series.estimates[i];
        const double k0 = spec.domain == AveragingDomain::linear ? centre.k_linear : centre.k_db();
        double k = 0.0, pu = 0.0, ps = 0.0;
        for (std::size_t j = first; j <= last; ++j)
        {
            const auto &e = series.estimates[j];
            k += (spec.domain == AveragingDomain::linear ? e.k_linear : e.k_db()) - k0;
            pu += e.p_unstirred - centre.p_unstirred;
            ps += e.p_stirred - centre.p_stirred;
        }
        k = k0 + k / count;
        pu = centre.p_unstirred + pu / count;
        ps = centre.p_stirred + ps / count;

        KFactorEstimate avg;
        avg.k_linear = spec.domain == AveragingDomain::linear ? std::max(k, 0.0) : lin10(k);
        avg.p_unstirred = pu;
        avg.p_stirred = ps;
        avg.n_samples = series.estimates[i].n_samples;
        avg.clamped = avg.k_linear == 0.0;
        out.estimates.push_back(avg);
    }
    return out;
}

} // namespace rckit

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

#ifndef RCKIT_KFACTOR_HPP
#define RCKIT_KFACTOR_HPP

#include "rckit/core.hpp"

#include <optional>

namespace rckit
{

struct PowerDecomposition
{
    double p_unstirred = 0.0; // bias-corrected |mean|^2, clamped at 0
    double p_stirred = 0.0;   // unbiased sample variance
    bool clamped = false;     // raw unstirred estimate was <= 0
};

struct ConfidenceInterval
{
    double lo_db = 0.0;
    double hi_db = 0.0;
    double level = 0.95;
    std::size_t method_trials = 0;
};

struct KFactorEstimate
{
    double p_unstirred = 0.0;
    double p_stirred = 0.0;
    double k_linear = 0.0;
    std::size_t n_samples = 0;
    bool clamped = false;
    std::optional<ConfidenceInterval> ci;

    double k_db() const { return db10_floored(k_linear); }
};

// Sample moments of a complex sample set
struct SampleMoments
{
    ComplexSample mean;
    double variance = 0.0; // 1/(N-1) normalisation
    std::size_t n = 0;
};
SampleMoments sample_moments(std::span<const ComplexSample> samples);

// Splits the received power into unstirred (|E[S21]|^2) and stirred (Var[S21]) parts.
// p_unstirred = |m|^2 - s^2/N is unbiased for the unstirred power since E|m|^2 = |mu|^2 + sigma^2/N.
// Throws std::invalid_argument for N < 2 or non-finite samples and DegenerateSampleError when s^2 == 0.
PowerDecomposition decompose_powers(std::span<const ComplexSample> samples);

// Unbiased K-factor from the first two sample moments of complex S21:
//
//   K = (N-2)/(N-1) * |m|^2 / s^2 - 1/N
//
// For circular Gaussian scatter m and s^2 are independent and (N-1) s^2 / sigma^2 ~ Gamma(N-1),
// so E[1/s^2] = (N-1)/((N-2) sigma^2) and E[K] equals the true K exactly. Values <= 0 clamp to 0.
KFactorEstimate estimate_k(std::span<const ComplexSample> samples);

// Same estimator from precomputed moments (n >= 3)
KFactorEstimate estimate_k(const SampleMoments &moments);

// Parametric Monte Carlo confidence interval for a K estimate from n samples.
// Each replicate draws the sufficient statistics (sample mean and variance) of n samples from a
// unit-power Rician model with K = k_hat, re-estimates K and converts to dB (clamped replicates
// at kDbFloor). Returns the (1-level)/2 and (1+level)/2 empirical quantiles.
ConfidenceInterval k_confidence_interval(double k_hat, std::size_t n, double level, std::size_t trials, std::uint64_t seed);

struct KSeries
{
    FrequencyGrid grid;
    std::vector<KFactorEstimate> estimates;

    std::vector<double> k_linear() const;
    std::vector<double> k_db() const;
};

// K estimate per frequency row. Throws DegenerateSampleError naming the frequency of a degenerate row.
KSeries k_series(const SweepMatrix &sweep);

enum class EdgePolicy
{
    truncate
};

enum class AveragingDomain
{
    linear,
    decibel
};

struct SlidingWindowSpec
{
    std::int64_t width_hz = 0; // 0 = no averaging
    EdgePolicy edge_policy = EdgePolicy::truncate;
    AveragingDomain domain = AveragingDomain::linear;
};

// Frequency stirring: every point is replaced by the mean over the grid points within
// +-width/2 of it. Windows shrink at the band edges. Powers are averaged alongside K;
// `clamped` is set only when K averages to exactly 0.
KSeries sliding_window_average(const KSeries &series, const SlidingWindowSpec &spec);

} // namespace rckit

#endif

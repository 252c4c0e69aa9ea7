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

#ifndef RCKIT_GOF_HPP
#define RCKIT_GOF_HPP

#include "rckit/core.hpp"

#include <functional>

namespace rckit
{

struct RayleighFit
{
    double sigma = 1.0;
};

// Rician envelope with LOS amplitude nu and per-quadrature scatter scale sigma; K = nu^2 / (2 sigma^2)
struct RicianFit
{
    double nu = 0.0;
    double sigma = 1.0;

    double k_linear() const { return nu * nu / (2.0 * sigma * sigma); }
};

// Maximum-likelihood Rayleigh scale: sigma^2 = sum(r^2) / (2N)
RayleighFit fit_rayleigh(std::span<const double> envelopes);

// Rician parameters from the complex samples, consistent with estimate_k:
// Omega = mean |x|^2, nu = sqrt(Omega K/(K+1)), sigma = sqrt(Omega/(2(K+1))).
RicianFit fit_rician(std::span<const ComplexSample> samples);

double rayleigh_cdf(double r, const RayleighFit &fit);
double rician_cdf(double r, const RicianFit &fit);

// exp(-z) I_0(z), z >= 0
double bessel_i0_scaled(double z);

// First-order Marcum Q function Q_1(a, b), a, b >= 0.
// Neumann series in scaled Bessel functions; terms are formed from the ratios I_k/I_{k-1},
// obtained by backward recurrence, so the evaluation does not overflow for large a*b.
double marcum_q1(double a, double b);

// 1 - Q_1(a, b) evaluated without cancellation when b < a
double marcum_p1(double a, double b);

// Survival function of the limiting Kolmogorov distribution, P(sqrt(N) D > c)
double kolmogorov_survival(double c);

// c such that kolmogorov_survival(c) == alpha (c(0.05) = 1.3581)
double kolmogorov_quantile(double alpha);

struct KsResult
{
    double d_statistic = 0.0;
    double critical_value = 0.0;
    bool pass = false;
    std::size_t n = 0;
    double alpha = 0.05;
};

using CdfFunction = std::function<double(double)>;

// Sup distance between the empirical CDF of the samples and cdf
double ks_statistic(std::span<const double> samples, const CdfFunction &cdf);

// One-sample Kolmogorov-Smirnov test using the asymptotic critical value c(alpha)/sqrt(N).
KsResult ks_test(std::span<const double> envelopes, const CdfFunction &cdf, double alpha);

struct FrequencyGof
{
    KsResult rayleigh;
    KsResult rician;
    RayleighFit rayleigh_fit;
    RicianFit rician_fit;
};

struct GofOutcome
{
    FrequencyGrid grid;
    double alpha = 0.05;
    std::vector<FrequencyGof> per_frequency;
    double pass_rate_rayleigh = 0.0;
    double pass_rate_rician = 0.0;
};

// Per frequency: fit Rayleigh (envelopes) and Rician (complex samples), then K-S test the
// envelopes against each fitted CDF.
GofOutcome gof_sweep(const SweepMatrix &sweep, double alpha);

} // namespace rckit

#endif

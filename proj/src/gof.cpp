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

#include "rckit/gof.hpp"
#include "rckit/kfactor.hpp"

#include <algorithm>
#include <cmath>

namespace rckit
{

RayleighFit fit_rayleigh(std::span<const double> envelopes)
{
    if (envelopes.empty())
        throw std::invalid_argument("fit_rayleigh: no samples");
    double sum_sq = 0.0;
    for (double r : envelopes)
    {
        if (!(r >= 0.0) || !std::isfinite(r))
            throw std::invalid_argument("fit_rayleigh: envelopes must be finite and non-negative");
        sum_sq += r * r;
    }
    if (sum_sq == 0.0)
        throw std::domain_error("fit_rayleigh: all envelopes are zero");
    return {std::sqrt(sum_sq / (2.0 * static_cast<double>(envelopes.size())))};
}

RicianFit fit_rician(std::span<const ComplexSample> samples)
{
    const KFactorEstimate k = estimate_k(samples);
    double omega = 0.0;
    for (const auto &s : samples)
        omega += std::norm(s);
    omega /= static_cast<double>(samples.size());

    RicianFit fit;
    fit.nu = std::sqrt(omega * k.k_linear / (k.k_linear + 1.0));
    fit.sigma = std::sqrt(omega / (2.0 * (k.k_linear + 1.0)));
    return fit;
}

double ks_statistic(std::span<const double> samples, const CdfFunction &cdf)
{
    if (samples.empty())
        throw std::invalid_argument("ks_statistic: no samples");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());

    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double f = cdf(x[i]);
        const double upper = static_cast<double>(i + 1) / n - f;
        const double lower = f - static_cast<double>(i) / n;
        d = std::max({d, upper, lower});
    }
    return d;
}

KsResult ks_test(std::span<const double> envelopes, const CdfFunction &cdf, double alpha)
{
    if (envelopes.empty())
        throw std::invalid_argument("ks_test: no samples");
    KsResult res;
    res.n = envelopes.size();
    res.alpha = alpha;
    res.d_statistic = ks_statistic(envelopes, cdf);
    res.critical_value = kolmogorov_quantile(alpha) / std::sqrt(static_cast<double>(res.n));
    res.pass = res.d_statistic <= res.critical_value;
    return res;
}

GofOutcome gof_sweep(const SweepMatrix &sweep, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("significance level must lie in (0, 1)");

    GofOutcome out{sweep.grid(), alpha, {}, 0.0, 0.0};
    out.per_frequency.reserve(sweep.n_frequencies());
    std::size_t pass_rayleigh = 0, pass_rician = 0;

    for (std::size_t i = 0; i < sweep.n_frequencies(); ++i)
    {
        const std::vector<double> env = sweep.envelopes(i);
        FrequencyGof g;
        g.rayleigh_fit = fit_rayleigh(env);
        g.rician_fit = fit_rician(sweep.row(i));
        g.rayleigh = ks_test(env, [&](double r) { return rayleigh_cdf(r, g.rayleigh_fit); }, alpha);
        g.rician = ks_test(env, [&](double r) { return rician_cdf(r, g.rician_fit); }, alpha);
        pass_rayleigh += g.rayleigh.pass;
        pass_rician += g.rician.pass;
        out.per_frequency.push_back(g);
    }

    const double n = static_cast<double>(sweep.n_frequencies());
    out.pass_rate_rayleigh = static_cast<double>(pass_rayleigh) / n;
    out.pass_rate_rician = static_cast<double>(pass_rician) / n;
    return out;
}

} // namespace rckit

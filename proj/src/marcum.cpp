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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace rckit
{

double bessel_i0_scaled(double z)
{
    if (!(z >= 0.0))
        throw std::domain_error("bessel_i0_scaled: argument must be non-negative");
    if (z <= 500.0)
        return std::cyl_bessel_i(0.0, z) * std::exp(-z);

    // Hankel expansion: e^-z I0(z) ~ (2 pi z)^-1/2 sum_k ((2k-1)!!)^2 / (k! (8z)^k)
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k)
    {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * z);
        sum += term;
        if (term < 1e-18 * sum)
            break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

namespace
{

// Uniform approximation of I_k(z) / I_{k-1}(z); only used to size the recurrences.
double approx_ratio(double k, double z)
{
    return z / (k + std::sqrt(k * k + z * z));
}

// sum_{k >= k0} rho^k e^-z I_k(z) for 0 <= rho <= 1, z > 0, k0 in {0, 1}
double scaled_neumann_sum(double rho, double z, int k0)
{
    constexpr double tol = 1e-18;
    constexpr std::size_t max_terms = 50'000'000;

    // Terms rho^k I_k / I_0 decrease monotonically; find where the geometric tail bound is negligible.
    std::size_t kmax = 0;
    {
        double u = 1.0, s = 1.0;
        for (std::size_t k = 1; k < max_terms; ++k)
        {
            const double q = rho * approx_ratio(static_cast<double>(k), z);
            u *= q;
            s += u;
            if (u < tol * s * (1.0 - q) || u == 0.0)
            {
                kmax = k + 8;
                break;
            }
        }
        if (kmax == 0)
            throw std::runtime_error("marcum_q1: series did not converge");
    }

    // Start the backward ratio recurrence high enough that the starting error is damped by e^-80.
    std::size_t kstart = kmax;
    for (double damping = 0.0; damping < 80.0;)
    {
        ++kstart;
        damping -= 2.0 * std::log(approx_ratio(static_cast<double>(kstart), z));
    }

    std::vector<double> ratio(kmax + 1);
    double r = approx_ratio(static_cast<double>(kstart + 1), z);
    for (std::size_t k = kstart; k >= 1; --k)
    {
        r = 1.0 / (2.0 * static_cast<double>(k) / z + r);
        if (k <= kmax)
            ratio[k] = r;
    }

    double u = 1.0;
    double s = k0 == 0 ? 1.0 : 0.0;
    for (std::size_t k = 1; k <= kmax; ++k)
    {
        u *= rho * ratio[k];
        s += u;
    }
    return s * bessel_i0_scaled(z);
}

void check_marcum_args(double a, double b)
{
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::domain_error("marcum_q1: arguments must be finite and non-negative");
}

} // namespace

// Q_1(a,b)     = exp(-(a^2+b^2)/2) sum_{k>=0} (a/b)^k I_k(ab)   (b >= a)
// 1 - Q_1(a,b) = exp(-(a^2+b^2)/2) sum_{k>=1} (b/a)^k I_k(ab)   (b <  a)
// With e^-ab I_k(ab) the prefactor becomes exp(-(a-b)^2/2).
double marcum_q1(double a, double b)
{
    check_marcum_args(a, b);
    if (b == 0.0)
        return 1.0;
    if (a == 0.0)
        return std::exp(-0.5 * b * b);
    if (b < a)
        return 1.0 - marcum_p1(a, b);

    const double q = std::exp(-0.5 * (b - a) * (b - a)) * scaled_neumann_sum(a / b, a * b, 0);
    return std::clamp(q, 0.0, 1.0);
}

double marcum_p1(double a, double b)
{
    check_marcum_args(a, b);
    if (b == 0.0)
        return 0.0;
    if (a == 0.0)
        return -std::expm1(-0.5 * b * b);
    if (b >= a)
        return 1.0 - marcum_q1(a, b);

    const double p = std::exp(-0.5 * (a - b) * (a - b)) * scaled_neumann_sum(b / a, a * b, 1);
    return std::clamp(p, 0.0, 1.0);
}

double rayleigh_cdf(double r, const RayleighFit &fit)
{
    if (!(r >= 0.0))
        throw std::domain_error("rayleigh_cdf: r must be non-negative");
    if (!(fit.sigma > 0.0))
        throw std::invalid_argument("rayleigh_cdf: sigma must be positive");
    return -std::expm1(-r * r / (2.0 * fit.sigma * fit.sigma));
}

double rician_cdf(double r, const RicianFit &fit)
{
    if (!(r >= 0.0))
        throw std::domain_error("rician_cdf: r must be non-negative");
    if (!(fit.sigma > 0.0) || !(fit.nu >= 0.0))
        throw std::invalid_argument("rician_cdf: require sigma > 0 and nu >= 0");
    return marcum_p1(fit.nu / fit.sigma, r / fit.sigma);
}

double kolmogorov_survival(double c)
{
    if (c <= 0.0)
        return 1.0;
    if (c < 1.0)
    {
        // Jacobi theta form converges fast for small c
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double cdf = 0.0;
        for (int k = 1; k < 100; ++k)
        {
            const double m = 2.0 * k - 1.0;
            const double t = std::exp(-m * m * pi2 / (8.0 * c * c));
            cdf += t;
            if (t < 1e-20)
                break;
        }
        cdf *= std::sqrt(2.0 * std::numbers::pi) / c;
        return 1.0 - cdf;
    }
    double sum = 0.0;
    for (int k = 1; k < 100; ++k)
    {
        const double t = std::exp(-2.0 * k * k * c * c);
        sum += (k % 2 == 1) ? t : -t;
        if (t < 1e-20)
            break;
    }
    return 2.0 * sum;
}

double kolmogorov_quantile(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("significance level must lie in (0, 1)");
    double lo = 1e-3, hi = 10.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i)
    {
        const double mid = 0.5 * (lo + hi);
        if (kolmogorov_survival(mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace rckit

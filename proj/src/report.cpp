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

#include "rckit/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rckit
{

CaseStatistics case_statistics(const KSeries &series, const SweepMatrix &sweep, const GofOutcome &gof)
{
    if (!(series.grid == sweep.grid()) || !(gof.grid == sweep.grid()) || series.estimates.size() != sweep.n_frequencies() ||
        gof.per_frequency.size() != sweep.n_frequencies())
        throw std::invalid_argument("case_statistics: K series, sweep and GoF outcome must share one grid");

    CaseStatistics st;
    const double n = static_cast<double>(series.estimates.size());

    double sum_k = 0.0, sum_pu = 0.0, sum_ps = 0.0;
    double min_db = 0.0, max_db = 0.0;
    bool any_positive = false;
    for (const auto &e : series.estimates)
    {
        sum_k += e.k_linear;
        sum_pu += e.p_unstirred;
        sum_ps += e.p_stirred;
        if (e.clamped)
            ++st.clamped_count;
        if (e.k_linear > 0.0)
        {
            const double db = db10(e.k_linear);
            min_db = any_positive ? std::min(min_db, db) : db;
            max_db = any_positive ? std::max(max_db, db) : db;
            any_positive = true;
        }
    }
    const double mean_k = sum_k / n;

    st.all_clamped = !(mean_k > 0.0);
    st.mean_k_db = db10_floored(mean_k);
    st.dynamic_range_db = any_positive ? max_db - min_db : 0.0;

    if (mean_k > 0.0)
    {
        double ss = 0.0;
        for (const auto &e : series.estimates)
            ss += (e.k_linear - mean_k) * (e.k_linear - mean_k);
        st.normalized_std = std::sqrt(ss / n) / mean_k;
    }

    double sum_s21 = 0.0;
    for (const auto &s : sweep.data())
        sum_s21 += std::norm(s);
    st.mean_s21sq_db = db10_floored(sum_s21 / static_cast<double>(sweep.data().size()));

    st.mean_p_unstirred_db = db10_floored(sum_pu / n);
    st.mean_p_stirred_db = db10_floored(sum_ps / n);
    st.pass_rate_rayleigh = gof.pass_rate_rayleigh;
    st.pass_rate_rician = gof.pass_rate_rician;
    return st;
}

ParseError::ParseError(std::size_t line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

namespace
{

void append_double(std::string &out, double v)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

template <typename T>
void append_int(std::string &out, T v)
{
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;)
    {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, const char *column)
{
    T value{};
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty())
        throw ParseError(line, std::string("invalid value '") + std::string(text) + "' in column '" + column + "'");
    if constexpr (std::is_floating_point_v<T>)
        if (!std::isfinite(value))
            throw ParseError(line, std::string("non-finite value in column '") + column + "'");
    return value;
}

} // namespace

void write_sweep_csv(const SweepMatrix &sweep, std::ostream &os)
{
    std::string buf = "freq_hz,sample_idx,re,im\n";
    for (std::size_t i = 0; i < sweep.n_frequencies(); ++i)
    {
        const std::int64_t f = sweep.grid().point(i);
        const auto row = sweep.row(i);
        for (std::size_t j = 0; j < row.size(); ++j)
        {
            append_int(buf, f);
            buf += ',';
            append_int(buf, j);
            buf += ',';
            append_double(buf, row[j].real());
            buf += ',';
            append_double(buf, row[j].imag());
            buf += '\n';
        }
        os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        buf.clear();
    }
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_sweep_csv(const SweepMatrix &sweep, const std::filesystem::path &path)
{
    atomic_write(path, [&](std::ostream &os) { write_sweep_csv(sweep, os); });
}

SweepMatrix read_sweep_csv(std::istream &is, std::string case_label)
{
    static const char *const columns[] = {"freq_hz", "sample_idx", "re", "im"};

    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(is, line))
        throw ParseError(1, "empty file, expected header 'freq_hz,sample_idx,re,im'");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    {
        const auto header = split(line, ',');
        for (std::size_t c = 0; c < 4; ++c)
        {
            if (std::find(header.begin(), header.end(), columns[c]) == header.end())
                throw ParseError(1, std::string("missing column '") + columns[c] + "'");
            if (c >= header.size() || header[c] != columns[c])
                throw ParseError(1, std::string("column '") + columns[c] + "' must be column " + std::to_string(c + 1));
        }
        if (header.size() != 4)
            throw ParseError(1, "unexpected column '" + std::string(header[4]) + "'");
    }

    std::vector<std::int64_t> freqs;
    std::vector<ComplexSample> data;
    std::size_t n_samples = 0;    // fixed by the first frequency block
    std::size_t block_count = 0;  // rows in the current block

    auto close_block = [&](std::size_t at_line) {
        if (freqs.size() == 1)
            n_samples = block_count;
        else if (block_count != n_samples)
            throw ParseError(at_line, "ragged sweep: frequency " + std::to_string(freqs.back()) + " has " +
                                          std::to_string(block_count) + " samples, expected " + std::to_string(n_samples));
    };

    while (std::getline(is, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto fields = split(line, ',');
        if (fields.size() != 4)
            throw ParseError(line_no, "expected 4 fields, found " + std::to_string(fields.size()));

        const auto f = parse_number<std::int64_t>(fields[0], line_no, "freq_hz");
        const auto idx = parse_number<std::size_t>(fields[1], line_no, "sample_idx");
        const auto re = parse_number<double>(fields[2], line_no, "re");
        const auto im = parse_number<double>(fields[3], line_no, "im");

        if (freqs.empty() || f != freqs.back())
        {
            if (!freqs.empty())
            {
                if (f < freqs.back())
                    throw ParseError(line_no, "rows are not sorted by freq_hz");
                close_block(line_no - 1);
            }
            freqs.push_back(f);
            block_count = 0;
        }
        if (idx != block_count)
            throw ParseError(line_no, "sample_idx " + std::to_string(idx) + " out of order, expected " + std::to_string(block_count));
        if (freqs.size() > 1 && block_count >= n_samples)
            throw ParseError(line_no, "ragged sweep: too many samples for frequency " + std::to_string(f));
        ++block_count;
        data.emplace_back(re, im);
    }
    if (freqs.empty())
        throw ParseError(line_no, "no data rows");
    close_block(line_no);

    std::int64_t step = 1;
    if (freqs.size() > 1)
    {
        step = freqs[1] - freqs[0];
        for (std::size_t k = 2; k < freqs.size(); ++k)
            if (freqs[k] - freqs[k - 1] != step)
                throw ParseError(1 + k * n_samples + 1, "non-uniform frequency grid at " + std::to_string(freqs[k]) + " Hz");
    }
    if (n_samples < 2)
        throw ParseError(line_no, "at least 2 samples per frequency are required");

    return SweepMatrix(FrequencyGrid(freqs.front(), step, freqs.size()), n_samples, std::move(data), std::move(case_label));
}

SweepMatrix read_sweep_csv(const std::filesystem::path &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open " + path.string());
    return read_sweep_csv(is, path.stem().string());
}

void write_kseries_csv(const std::vector<WindowedSeries> &series, std::ostream &os)
{
    std::string buf = "freq_hz,k_linear,k_db,p_unstirred,p_stirred,clamped,window_hz\n";
    for (const auto &w : series)
    {
        for (std::size_t i = 0; i < w.series.estimates.size(); ++i)
        {
            const auto &e = w.series.estimates[i];
            append_int(buf, w.series.grid.point(i));
            buf += ',';
            append_double(buf, e.k_linear);
            buf += ',';
            append_double(buf, e.k_db());
            buf += ',';
            append_double(buf, e.p_unstirred);
            buf += ',';
            append_double(buf, e.p_stirred);
            buf += e.clamped ? ",1," : ",0,";
            append_int(buf, w.window_hz);
            buf += '\n';
        }
    }
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_kseries_csv(const std::vector<WindowedSeries> &series, const std::filesystem::path &path)
{
    atomic_write(path, [&](std::ostream &os) { write_kseries_csv(series, os); });
}

void write_gof_csv(const GofOutcome &gof, std::ostream &os)
{
    std::string buf = "freq_hz,d_rayleigh,pass_rayleigh,d_rician,pass_rician,critical_value\n";
    for (std::size_t i = 0; i < gof.per_frequency.size(); ++i)
    {
        const auto &g = gof.per_frequency[i];
        append_int(buf, gof.grid.point(i));
        buf += ',';
        append_double(buf, g.rayleigh.d_statistic);
        buf += g.rayleigh.pass ? ",1," : ",0,";
        append_double(buf, g.rician.d_statistic);
        buf += g.rician.pass ? ",1," : ",0,";
        append_double(buf, g.rayleigh.critical_value);
        buf += '\n';
    }
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

CaseAnalysis analyze_case(const SweepMatrix &sweep, const AnalysisOptions &options)
{
    const SweepMatrix band = options.band ? select_band(sweep, *options.band) : sweep;

    const KSeries raw = k_series(band);
    std::vector<WindowedSeries> series;
    for (const std::int64_t w : options.windows_hz)
        series.push_back({w, sliding_window_average(raw, SlidingWindowSpec{w})});
    GofOutcome gof = gof_sweep(band, options.alpha);
    const CaseStatistics stats = case_statistics(raw, band, gof);
    CaseAnalysis a{sweep.case_label(), stats, std::move(series), std::move(gof)};
    return a;
}

std::string report_json(const Report &report)
{
    using json = nlohmann::ordered_json;

    json cases = json::array();
    for (const auto &c : report.cases)
    {
        const auto &s = c.stats;
        json stats = {
            {"mean_k_db", s.mean_k_db},
            {"dynamic_range_db", s.dynamic_range_db},
            {"normalized_std", s.normalized_std},
            {"mean_s21sq_db", s.mean_s21sq_db},
            {"pass_rate_rayleigh", s.pass_rate_rayleigh},
            {"pass_rate_rician", s.pass_rate_rician},
            {"mean_p_unstirred_db", s.mean_p_unstirred_db},
            {"mean_p_stirred_db", s.mean_p_stirred_db},
            {"clamped_count", s.clamped_count},
        };
        json series = json::array();
        for (const auto &w : c.series)
            series.push_back({{"window_hz", w.window_hz}, {"freq_hz", w.series.grid.points()}, {"k_db", w.series.k_db()}});
        cases.push_back({{"label", c.label}, {"stats", std::move(stats)}, {"series", std::move(series)}});
    }

    json doc = {
        {"cases", std::move(cases)},
        {"band", {{"lo_hz", report.band_lo_hz}, {"hi_hz", report.band_hi_hz}}},
        {"alpha", report.alpha},
        {"n_samples", report.n_samples},
        {"definitions", {{"normalized_std", "std_linear/mean_linear"}}},
    };
    return doc.dump() + "\n";
}

void write_report_json(const Report &report, const std::filesystem::path &path)
{
    const std::string text = report_json(report);
    atomic_write(path, [&](std::ostream &os) { os << text; });
}

void atomic_write(const std::filesystem::path &path, const std::function<void(std::ostream &)> &write)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    try
    {
        {
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            if (!os)
                throw std::runtime_error("cannot open " + tmp.string() + " for writing");
            write(os);
            os.flush();
            if (!os)
                throw std::runtime_error("write to " + tmp.string() + " failed");
        }
        std::filesystem::rename(tmp, path);
    }
    catch (...)
    {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw;
    }
}

CaseConfig case_config_from_json(const std::string &text)
{
    try
    {
        const auto j = nlohmann::json::parse(text);
        CaseConfig c;
        c.label = j.at("label").get<std::string>();
        for (const auto &p : j.value("paths", nlohmann::json::array()))
            c.paths.push_back({p.at("amplitude").get<double>(), p.value("delay_s", 0.0), p.value("phase0_rad", 0.0)});
        c.stirred_power_db = j.at("stirred_power_db").get<double>();
        c.stirred_ripple_db = j.value("stirred_ripple_db", 0.0);
        c.ripple_period_hz = j.value("ripple_period_hz", 1.0e9);
        c.n_samples = j.value("n_samples", std::size_t{600});
        if (j.contains("grid"))
        {
            const auto &g = j.at("grid");
            c.grid = FrequencyGrid(g.at("start_hz").get<std::int64_t>(), g.at("step_hz").get<std::int64_t>(),
                                   g.at("count").get<std::size_t>());
        }
        validate(c);
        return c;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument(std::string("case config: ") + e.what());
    }
}

std::string case_config_to_json(const CaseConfig &config)
{
    using json = nlohmann::ordered_json;
    json paths = json::array();
    for (const auto &p : config.paths)
        paths.push_back({{"amplitude", p.amplitude}, {"delay_s", p.delay_s}, {"phase0_rad", p.phase0_rad}});
    json j = {
        {"label", config.label},
        {"paths", std::move(paths)},
        {"stirred_power_db", config.stirred_power_db},
        {"stirred_ripple_db", config.stirred_ripple_db},
        {"ripple_period_hz", config.ripple_period_hz},
        {"n_samples", config.n_samples},
        {"grid", {{"start_hz", config.grid.start_hz()}, {"step_hz", config.grid.step_hz()}, {"count", config.grid.count()}}},
    };
    return j.dump(2) + "\n";
}

} // namespace rckit

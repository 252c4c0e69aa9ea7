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

#include "cli.hpp"

#include "rckit/report.hpp"
#include "rckit/random.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace rckit::cli
{

namespace
{

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    std::string command;
    std::vector<std::string> cases;
    std::string config_path;
    std::vector<std::string> inputs;
    std::string out;
    std::uint64_t seed = 1;
    double alpha = 0.05;
    std::string windows;
    std::string band;
    std::size_t n_samples = 600;
    std::string grid;
};

std::vector<std::string> split_list(const std::string &text, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

double parse_double(const std::string &text, const std::string &flag)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(text, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
        throw UsageError(flag + ": invalid number '" + text + "'");
    return v;
}

std::int64_t parse_hz(const std::string &text, const std::string &flag)
{
    const double v = parse_double(text, flag);
    if (v != std::floor(v) || std::abs(v) > 9.0e18)
        throw UsageError(flag + ": '" + text + "' is not an integer number of Hz");
    return static_cast<std::int64_t>(v);
}

FrequencyGrid parse_grid(const std::string &text)
{
    const auto parts = split_list(text, ':');
    if (parts.size() != 3)
        throw UsageError("--grid: expected start:step:count");
    const std::int64_t start = parse_hz(parts[0], "--grid");
    const std::int64_t step = parse_hz(parts[1], "--grid");
    const std::int64_t count = parse_hz(parts[2], "--grid");
    if (step <= 0 || count < 1)
        throw UsageError("--grid: step must be positive and count at least 1");
    return FrequencyGrid(start, step, static_cast<std::size_t>(count));
}

std::optional<BandSelection> parse_band(const std::string &text)
{
    if (text.empty())
        return std::nullopt;
    const auto parts = split_list(text, ':');
    if (parts.size() != 2)
        throw UsageError("--band: expected lo:hi");
    BandSelection b{parse_double(parts[0], "--band"), parse_double(parts[1], "--band")};
    if (b.lo_hz > b.hi_hz)
        throw UsageError("--band: lo must not exceed hi");
    return b;
}

std::vector<std::int64_t> parse_windows(const std::string &text, std::vector<std::int64_t> fallback)
{
    if (text.empty())
        return fallback;
    std::vector<std::int64_t> out;
    for (const auto &item : split_list(text, ','))
    {
        const std::int64_t w = parse_hz(item, "--windows");
        if (w < 0)
            throw UsageError("--windows: widths must be non-negative");
        out.push_back(w);
    }
    return out;
}

std::vector<std::string> expand_list(const std::vector<std::string> &values)
{
    std::vector<std::string> out;
    for (const auto &v : values)
        for (const auto &item : split_list(v, ','))
            if (!item.empty())
                out.push_back(item);
    return out;
}

std::string read_text(const std::string &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// Case configurations selected by --case / --config, with --grid / --n-samples applied
std::vector<CaseConfig> resolve_cases(const RunConfig &cfg, const CLI::App &sub, bool default_all)
{
    const bool custom_grid = sub.count("--grid") > 0;
    const bool custom_n = sub.count("--n-samples") > 0;
    const FrequencyGrid grid = custom_grid ? parse_grid(cfg.grid) : FrequencyGrid::fr2_sweep();
    if (cfg.n_samples < 2)
        throw UsageError("--n-samples must be at least 2");

    std::vector<CaseConfig> out;
    if (!cfg.config_path.empty())
    {
        CaseConfig c;
        try
        {
            c = case_config_from_json(read_text(cfg.config_path));
        }
        catch (const std::invalid_argument &e)
        {
            throw UsageError(e.what());
        }
        if (custom_grid)
            c.grid = grid;
        if (custom_n)
            c.n_samples = cfg.n_samples;
        out.push_back(c);
    }

    const PresetTable presets = preset_cases(grid, cfg.n_samples);
    std::vector<std::string> labels = expand_list(cfg.cases);
    if (labels.empty() && out.empty() && default_all)
        labels = presets.labels();
    for (const auto &label : labels)
    {
        if (!presets.contains(label))
        {
            std::string msg = "unknown case '" + label + "'; valid cases:";
            for (const auto &l : presets.labels())
                msg += " " + l;
            throw UsageError(msg);
        }
        out.push_back(presets.at(label));
    }
    return out;
}

void print_truth(const CaseConfig &c, std::ostream &out)
{
    const ConfiguredTruth t = configured_truth(c);
    out << std::fixed << std::setprecision(2) << c.label << ": " << c.grid.count() << " frequencies x " << c.n_samples
        << " samples, configured mean K " << t.mean_k_db() << " dB, unstirred " << db10_floored(t.mean_p_unstirred)
        << " dB, stirred " << db10_floored(t.mean_p_stirred) << " dB\n";
    out.unsetf(std::ios::floatfield);
}

void print_stats(const CaseAnalysis &a, std::ostream &out)
{
    const auto &s = a.stats;
    out << std::fixed << std::setprecision(2) << a.label << ": mean K " << s.mean_k_db << " dB, dynamic range "
        << s.dynamic_range_db << " dB, normalized std " << std::setprecision(3) << s.normalized_std << ", mean |S21|^2 "
        << std::setprecision(2) << s.mean_s21sq_db << " dB, pass rate Rayleigh " << 100.0 * s.pass_rate_rayleigh
        << "% Rician " << 100.0 * s.pass_rate_rician << "%, clamped " << s.clamped_count << "\n";
    out.unsetf(std::ios::floatfield);
}

// Tracks files written by a command so a failure can remove them
class OutputSet
{
public:
    void add(const std::filesystem::path &p) { written_.push_back(p); }
    void discard()
    {
        for (const auto &p : written_)
        {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
        written_.clear();
    }

private:
    std::vector<std::filesystem::path> written_;
};

Report make_report(std::vector<CaseAnalysis> analyses, const AnalysisOptions &opt)
{
    Report r;
    r.alpha = opt.alpha;
    if (!analyses.empty())
    {
        const FrequencyGrid &g = analyses.front().gof.grid;
        r.band_lo_hz = g.start_hz();
        r.band_hi_hz = g.stop_hz();
    }
    else if (opt.band)
    {
        r.band_lo_hz = static_cast<std::int64_t>(std::floor(opt.band->lo_hz));
        r.band_hi_hz = static_cast<std::int64_t>(std::ceil(opt.band->hi_hz));
    }
    r.cases = std::move(analyses);
    return r;
}

int cmd_simulate(const RunConfig &cfg, const CLI::App &sub, std::ostream &out)
{
    if (cfg.cases.empty() == cfg.config_path.empty())
        throw UsageError("simulate: give exactly one of --case or --config");
    const auto cases = resolve_cases(cfg, sub, false);
    if (cases.size() != 1)
        throw UsageError("simulate: exactly one case is required");

    const CaseConfig &c = cases.front();
    const SweepMatrix sweep = synthesize_sweep(c, derive_seed(cfg.seed, c.label));
    write_sweep_csv(sweep, std::filesystem::path(cfg.out));
    print_truth(c, out);
    out << "wrote " << cfg.out << "\n";
    return kSuccess;
}

int cmd_estimate(const RunConfig &cfg, std::ostream &out)
{
    if (cfg.inputs.size() != 1)
        throw UsageError("estimate: exactly one --in sweep is required");
    SweepMatrix sweep = read_sweep_csv(std::filesystem::path(cfg.inputs.front()));
    if (const auto band = parse_band(cfg.band))
        sweep = select_band(sweep, *band);

    const KSeries raw = k_series(sweep);
    std::vector<WindowedSeries> series;
    for (const auto w : parse_windows(cfg.windows, {0}))
        series.push_back({w, sliding_window_average(raw, SlidingWindowSpec{w})});
    write_kseries_csv(series, std::filesystem::path(cfg.out));

    double mean = 0.0;
    std::size_t clamped = 0;
    for (const auto &e : raw.estimates)
    {
        mean += e.k_linear;
        clamped += e.clamped;
    }
    mean /= static_cast<double>(raw.estimates.size());
    out << std::fixed << std::setprecision(2) << sweep.case_label() << ": " << raw.estimates.size()
        << " frequencies, mean K " << db10_floored(mean) << " dB, clamped " << clamped << "\n";
    out << "wrote " << cfg.out << "\n";
    return kSuccess;
}

int cmd_gof(const RunConfig &cfg, std::ostream &out)
{
    if (cfg.inputs.size() != 1)
        throw UsageError("gof: exactly one --in sweep is required");
    SweepMatrix sweep = read_sweep_csv(std::filesystem::path(cfg.inputs.front()));
    if (const auto band = parse_band(cfg.band))
        sweep = select_band(sweep, *band);

    const GofOutcome g = gof_sweep(sweep, cfg.alpha);
    if (!cfg.out.empty())
        atomic_write(cfg.out, [&](std::ostream &os) { write_gof_csv(g, os); });
    out << std::fixed << std::setprecision(2) << sweep.case_label() << ": pass rate Rayleigh "
        << 100.0 * g.pass_rate_rayleigh << "%, Rician " << 100.0 * g.pass_rate_rician << "% (alpha " << cfg.alpha << ", "
        << g.per_frequency.size() << " frequencies)\n";
    return kSuccess;
}

AnalysisOptions analysis_options(const RunConfig &cfg)
{
    AnalysisOptions opt;
    opt.band = parse_band(cfg.band);
    opt.windows_hz = parse_windows(cfg.windows, opt.windows_hz);
    opt.alpha = cfg.alpha;
    return opt;
}

int cmd_report(const RunConfig &cfg, std::ostream &out)
{
    const auto inputs = expand_list(cfg.inputs);
    if (inputs.empty())
        throw UsageError("report: at least one --in sweep is required");
    const AnalysisOptions opt = analysis_options(cfg);

    std::vector<CaseAnalysis> analyses;
    std::size_t n_samples = 0;
    for (const auto &in : inputs)
    {
        const SweepMatrix sweep = read_sweep_csv(std::filesystem::path(in));
        n_samples = sweep.n_samples();
        analyses.push_back(analyze_case(sweep, opt));
        print_stats(analyses.back(), out);
    }
    Report report = make_report(std::move(analyses), opt);
    report.n_samples = n_samples;
    write_report_json(report, cfg.out);
    out << "wrote " << cfg.out << "\n";
    return kSuccess;
}

int cmd_pipeline(const RunConfig &cfg, const CLI::App &sub, std::ostream &out)
{
    const AnalysisOptions opt = analysis_options(cfg);
    const std::filesystem::path dir(cfg.out);

    // Sweeps come either from files or from the synthesizer
    std::vector<SweepMatrix> sweeps;
    const auto inputs = expand_list(cfg.inputs);
    for (const auto &in : inputs)
        sweeps.push_back(read_sweep_csv(std::filesystem::path(in)));
    if (!cfg.cases.empty() || !cfg.config_path.empty() || inputs.empty())
        for (const auto &c : resolve_cases(cfg, sub, inputs.empty()))
            sweeps.push_back(synthesize_sweep(c, derive_seed(cfg.seed, c.label)));

    std::filesystem::create_directories(dir);
    OutputSet outputs;
    try
    {
        std::vector<CaseAnalysis> analyses;
        std::size_t n_samples = 0;
        for (const auto &sweep : sweeps)
        {
            n_samples = sweep.n_samples();
            analyses.push_back(analyze_case(sweep, opt));
            const auto &a = analyses.back();
            print_stats(a, out);

            const auto path = dir / (a.label + "_kseries.csv");
            outputs.add(path);
            write_kseries_csv(a.series, path);
        }
        Report report = make_report(std::move(analyses), opt);
        report.n_samples = n_samples;
        const auto path = dir / "report.json";
        outputs.add(path);
        write_report_json(report, path);
        out << "wrote " << path.string() << "\n";
    }
    catch (...)
    {
        outputs.discard();
        throw;
    }
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"K-factor and envelope statistics for reverberation chamber OTA sweeps", "rckit"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--out", cfg.out, "Output path")->required();
    };
    auto add_cases = [&](CLI::App *sub) {
        sub->add_option("--case", cfg.cases, "Preset case label(s), comma separated");
        sub->add_option("--config", cfg.config_path, "Case configuration JSON");
        sub->add_option("--seed", cfg.seed, "Random seed");
        sub->add_option("--n-samples", cfg.n_samples, "Stirrer positions per frequency");
        sub->add_option("--grid", cfg.grid, "Frequency grid start:step:count in Hz");
    };
    auto add_analysis = [&](CLI::App *sub) {
        sub->add_option("--band", cfg.band, "Analysis band lo:hi in Hz");
        sub->add_option("--windows", cfg.windows, "Sliding window widths in Hz, comma separated");
        sub->add_option("--alpha", cfg.alpha, "K-S significance level");
    };

    auto *simulate = app.add_subcommand("simulate", "Synthesize a sweep CSV for a preset or configured case");
    add_cases(simulate);
    add_common(simulate);

    auto *estimate = app.add_subcommand("estimate", "Per-frequency K-factor series of a sweep CSV");
    estimate->add_option("--in", cfg.inputs, "Sweep CSV")->required();
    estimate->add_option("--band", cfg.band, "Analysis band lo:hi in Hz");
    estimate->add_option("--windows", cfg.windows, "Sliding window widths in Hz, comma separated");
    add_common(estimate);

    auto *gof = app.add_subcommand("gof", "Rayleigh / Rician K-S tests per frequency");
    gof->add_option("--in", cfg.inputs, "Sweep CSV")->required();
    gof->add_option("--band", cfg.band, "Analysis band lo:hi in Hz");
    gof->add_option("--alpha", cfg.alpha, "K-S significance level");
    gof->add_option("--out", cfg.out, "Per-frequency result CSV");

    auto *report = app.add_subcommand("report", "Statistics report JSON for one or more sweep CSVs");
    report->add_option("--in", cfg.inputs, "Sweep CSV(s), comma separated")->required();
    add_analysis(report);
    add_common(report);

    auto *pipeline = app.add_subcommand("pipeline", "Simulate or read sweeps and write report JSON plus K-series CSVs");
    pipeline->add_option("--in", cfg.inputs, "Sweep CSV(s), comma separated");
    add_cases(pipeline);
    add_analysis(pipeline);
    pipeline->add_option("--out", cfg.out, "Output directory")->required();

    std::vector<const char *> argv{"rckit"};
    for (const auto &a : args)
        argv.push_back(a.c_str());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try
    {
        if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
            throw UsageError("--alpha must lie in (0, 1)");
        if (simulate->parsed())
            return cmd_simulate(cfg, *simulate, out);
        if (estimate->parsed())
            return cmd_estimate(cfg, out);
        if (gof->parsed())
            return cmd_gof(cfg, out);
        if (report->parsed())
            return cmd_report(cfg, out);
        return cmd_pipeline(cfg, *pipeline, out);
    }
    catch (const UsageError &e)
    {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
}

} // namespace rckit::cli

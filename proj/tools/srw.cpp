// srw: experiment driver for step-reinforced walks, percolation weights and
// randomly weighted sums. Each subcommand writes a CSV data file and a JSON
// report into --out-dir and prints the report on stdout.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "srw/acceptance.hpp"
#include "srw/errors.hpp"
#include "srw/moments.hpp"
#include "srw/parallel.hpp"
#include "srw/percolation.hpp"
#include "srw/stable.hpp"
#include "srw/stats.hpp"
#include "srw/walk.hpp"
#include "srw/weighted_sums.hpp"

namespace {

using nlohmann::json;

enum ExitCode
{
    exit_pass = 0,
    exit_criterion_failed = 1,
    exit_usage = 2,
    exit_domain = 3,
};

//---------------------------------------------------------------------------//
// JSON configuration files
//
// Top-level scalar keys set global flags; an object keyed by a subcommand
// name sets that subcommand's flags. Keys are long flag names without "--".

class JsonConfig : public CLI::Config
{
  public:
    std::string to_config(CLI::App const*, bool, bool, std::string) const override
    {
        return {};
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override
    {
        json doc;
        try
        {
            doc = json::parse(input);
        }
        catch (json::parse_error const& e)
        {
            throw CLI::ConversionError(std::string("config: ") + e.what());
        }
        if (!doc.is_object())
            throw CLI::ConversionError("config: top level must be an object");
        std::vector<CLI::ConfigItem> items;
        collect(doc, {}, items);
        return items;
    }

  private:
    static std::string scalar(json const& value)
    {
        if (value.is_string())
            return value.get<std::string>();
        if (value.is_boolean())
            return value.get<bool>() ? "true" : "false";
        return value.dump();
    }

    static void collect(json const& node, std::vector<std::string> const& parents,
                        std::vector<CLI::ConfigItem>& items)
    {
        for (auto const& [key, value] : node.items())
        {
            if (value.is_object())
            {
                auto nested = parents;
                nested.push_back(key);
                collect(value, nested, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array())
            {
                for (auto const& v : value)
                    item.inputs.push_back(scalar(v));
            }
            else
            {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

//---------------------------------------------------------------------------//
// Output helpers

std::string format_double(double value)
{
    char buf[64];
    auto const [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

class CsvWriter
{
  public:
    CsvWriter(std::filesystem::path const& path, std::vector<std::string> const& header)
        : out_(path)
    {
        if (!out_)
            throw std::runtime_error("cannot open " + path.string());
        row_strings(header);
    }

    template<class... Ts>
    void row(Ts const&... values)
    {
        std::vector<std::string> cells{cell(values)...};
        row_strings(cells);
    }

  private:
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(std::string const& v) { return v; }
    static std::string cell(char const* v) { return v; }
    static std::string cell(bool v) { return v ? "true" : "false"; }
    template<class T>
    static std::string cell(T v) requires std::is_integral_v<T>
    {
        return std::to_string(v);
    }

    void row_strings(std::vector<std::string> const& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

    std::ofstream out_;
};

struct Globals
{
    std::uint64_t seed = 20240611;
    unsigned threads = srw::default_thread_count();
    std::string out_dir = ".";
    bool quiet = false;
};

struct Report
{
    std::string command;
    json params = json::object();
    json statistics = json::object();
    json criteria = json::object();

    void criterion(std::string const& name, bool passed, double statistic, double threshold)
    {
        criteria[name] = {{"passed", passed}, {"statistic", statistic}, {"threshold", threshold}};
    }

    bool all_passed() const
    {
        return std::all_of(criteria.begin(), criteria.end(),
                           [](json const& c) { return c.at("passed").get<bool>(); });
    }
};

std::filesystem::path output_path(Globals const& g, std::string const& command, char const* ext)
{
    std::filesystem::create_directories(g.out_dir);
    return std::filesystem::path(g.out_dir) / (command + ext);
}

int finish(Globals const& g, Report const& report, double seconds)
{
    json doc{
        {"command", report.command},
        {"params", report.params},
        {"seed", g.seed},
        {"statistics", report.statistics},
        {"criteria", report.criteria},
        {"wall_time", seconds},
    };
    std::ofstream(output_path(g, report.command, ".json")) << doc.dump(2) << '\n';
    if (!g.quiet)
        std::cout << doc.dump(2) << '\n';
    return report.all_passed() ? exit_pass : exit_criterion_failed;
}

srw::StepSource make_source(std::string const& family, double alpha, double value)
{
    srw::StepSource source{srw::parse_step_family(family), family == "cauchy" ? 1.0 : alpha, value};
    source.validate();
    return source;
}

//---------------------------------------------------------------------------//
// Subcommand options

struct WalkOpts
{
    double p = 0.5;
    double r = 0.5;
    std::size_t n = 1000;
    std::size_t replicates = 1000;
    std::string steps = "rademacher";
    double alpha = 2.0;
    double value = 1.0;
    bool erw = false;
};

struct MomentOpts
{
    double r = 0.75;
    std::size_t n_max = 1000;
};

struct ConstantOpts
{
    double alpha = 2.0;
    double p = 0.5;
    double r = 0.5;
    double tol = 1e-6;
    bool monte_carlo = false;
    std::size_t mc_paths = 20000;
    std::size_t mc_truncation = 512;
};

struct PercolationOpts
{
    double p = 0.5;
    double r = 0.5;
    std::size_t n = 1000;
    std::size_t replicates = 100;
    std::string steps = "gaussian";
    double alpha = 2.0;
    double tolerance = 1e-9;
    std::vector<double> ls{0.5, 1.0, 2.0};
};

struct CltOpts
{
    std::string scheme = "percolation";
    std::string y_law = "exponential";
    bool scale_by_n = false;
    double p = 0.5;
    double r = 0.5;
    std::size_t n = 1000;
    std::size_t replicates = 2000;
    std::string steps = "rademacher";
    double alpha = 2.0;
    std::string limit = "auto";
    std::string normalizer = "auto";
    double scale = 0.0;
    double ks_threshold = 0.05;
};

struct ConditionsOpts
{
    std::string scheme = "efron";
    std::string y_law = "exponential";
    bool scale_by_n = false;
    double p = 0.5;
    double r = 0.5;
    std::vector<std::size_t> n_grid{100, 1000, 10000};
    double alpha = 2.0;
    double beta = 2.0;
    std::size_t replicates = 200;
};

struct CounterexampleOpts
{
    std::string which = "both";
    std::size_t n = 10000;
    std::size_t replicates = 5000;
    double ks_threshold = 0.05;
};

struct AcceptanceOpts
{
    std::vector<int> ids;
};

srw::YLaw parse_y_law(std::string const& name)
{
    if (name == "exponential")
        return srw::YLaw::exponential;
    if (name == "uniform")
        return srw::YLaw::uniform;
    if (name == "slowly-varying")
        return srw::YLaw::slowly_varying;
    throw srw::DomainError("unknown Y law: " + name);
}

srw::WeightScheme make_scheme(std::string const& family, std::string const& y_law, double p, double r,
                              bool scale_by_n)
{
    srw::WeightScheme scheme;
    scheme.family = srw::parse_weight_family(family);
    scheme.y_law = parse_y_law(y_law);
    scheme.p = p;
    scheme.r = r;
    scheme.scale_by_n = scale_by_n;
    scheme.validate();
    return scheme;
}

//---------------------------------------------------------------------------//
// Subcommands

int cmd_simulate_walk(Globals const& g, WalkOpts const& o)
{
    auto const start = std::chrono::steady_clock::now();
    srw::WalkParams const params{o.p, o.r, o.alpha};
    params.validate();
    auto const source = make_source(o.steps, o.alpha, o.value);
    auto const scaling = srw::classify_regime(params);
    double const scale = scaling.scale(static_cast<double>(o.n));

    auto const totals = srw::run_replicates(o.replicates, g.threads, [&](std::size_t i) {
        srw::Rng tape_rng(g.seed, i, srw::StreamTag::tape);
        auto const tape = srw::RandomnessTape::draw(params, o.n, tape_rng);
        if (o.erw)
            return static_cast<double>(srw::simulate_erw(o.n, tape).total());
        srw::Rng step_rng(g.seed, i, srw::StreamTag::steps);
        return srw::simulate_unbalanced_walk(o.n, tape, source, step_rng).total();
    });

    CsvWriter csv(output_path(g, "simulate-walk", ".csv"), {"replicate", "n", "T_n", "T_n_scaled"});
    std::vector<double> scaled;
    scaled.reserve(totals.size());
    for (std::size_t i = 0; i < totals.size(); ++i)
    {
        scaled.push_back(totals[i] / scale);
        csv.row(i, o.n, totals[i], scaled.back());
    }
    auto const ms = srw::mc_mean_se(scaled);

    Report report{"simulate-walk"};
    report.params = {{"p", o.p}, {"r", o.r}, {"n", o.n}, {"replicates", o.replicates},
                     {"steps", source.name()}, {"erw", o.erw}, {"threads", g.threads}};
    report.statistics = {{"a", scaling.a}, {"regime", srw::to_string(scaling.regime)},
                         {"scaling", scaling.describe()}, {"mean_scaled", ms.mean},
                         {"se_scaled", ms.se}};
    return finish(g, report, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

int cmd_erw_moments(Globals const& g, MomentOpts const& o)
{
    auto const start = std::chrono::steady_clock::now();
    auto const table = srw::erw_moment_table(o.r, o.n_max);
    CsvWriter csv(output_path(g, "erw-moments", ".csv"), {"n", "second", "fourth", "second_closed"});
    double worst = 0.0;
    for (std::size_t n = 1; n <= o.n_max; ++n)
    {
        double const closed = srw::erw_second_moment_closed(o.r, n);
        if (table.second[n] != 0.0)
            worst = std::max(worst, std::abs(closed - table.second[n]) / table.second[n]);
        csv.row(n, table.second[n], table.fourth[n], closed);
    }
    Report report{"erw-moments"};
    report.params = {{"r", o.r}, {"n_max", o.n_max}};
    report.statistics = {{"gamma", table.gamma},
                         {"second_at_n_max", table.second[o.n_max]},
                         {"fourth_at_n_max", table.fourth[o.n_max]},
                         {"max_relative_gap", worst}};
    report.criterion("recursion_matches_closed_form", worst <= 1e-9, worst, 1e-9);
    return finish(g, report, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

int cmd_compute_constant(Globals const& g, ConstantOpts const& o)
{
    auto const start = std::chrono::steady_clock::now();
    srw::SeriesOptions opts;
    opts.monte_carlo = o.monte_carlo;
    opts.mc_paths = o.mc_paths;
    opts.mc_truncation = o.mc_truncation;
    opts.seed = g.seed;
    opts.threads = g.threads;
    auto const result = srw::constant_series(o.alpha, o.p, o.r, o.tol, opts);

    Report report{"compute-constant"};
    report.params = {{"alpha", o.alpha}, {"p", o.p}, {"r", o.r}, {"tol", o.tol},
                     {"monte_carlo", o.monte_carlo}};
    report.statistics = {{"value", result.value}, {"tail_bound", result.tail_bound},
                         {"truncation_k", result.truncation_k},
                         {"method", srw::to_string(result.method)}};
    CsvWriter csv(output_path(g, "compute-constant", ".csv"),
                  {"alpha", "p", "r", "value", "tail_bound", "truncation_k", "method"});
    csv.row(o.alpha, o.p, o.r, result.value, result.tail_bound, result.truncation_k,
            srw::to_string(result.method));

    if (o.alpha == 2.0 && (4.0 * o.r - 2.0) * o.p < 1.0)
    {
        double const closed = srw::constant_closed_c2(o.p, o.r);
        double const gap = std::abs(result.value - closed);
        report.statistics["closed_form"] = closed;
        report.criterion("series_matches_closed_form", gap <= std::max(o.tol, 1e-12), gap,
                         std::max(o.tol, 1e-12));
    }
    if (o.r == 1.0 && o.alpha * o.p < 1.0)
    {
        auto const integral = srw::businger_integral(o.alpha, o.p, o.tol);
        report.statistics["integral_form"] = integral.value;
        double const gap = std::abs(result.value - integral.value);
        double const allowed = std::max(o.tol, result.tail_bound + integral.tail_bound);
        report.criterion("series_matches_integral_form", gap <= allowed, gap, allowed);
    }
    return finish(g, report, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

int cmd_percolation_check(Globals const& g, PercolationOpts const& o)
{
    auto const start = std::chrono::steady_clock::now();
    srw::WalkParams const params{o.p, o.r, o.alpha};
    params.validate();
    auto const source = make_source(o.steps, o.alpha, 1.0);

    struct Row
    {
        double walk = 0.0;
        double representation = 0.0;
        double rel = 0.0;
        std::size_t components = 0;
        std::vector<double> z;
    };
    auto const rows = srw::run_replicates(o.replicates, g.threads, [&](std::size_t i) {
        srw::Rng tape_rng(g.seed, i, srw::StreamTag::tape);
        srw::Rng step_rng(g.seed, i, srw::StreamTag::steps);
        auto const tape = srw::RandomnessTape::draw(params, o.n, tape_rng);
        auto const forest = srw::percolate(o.n, tape);
        auto const walk = srw::simulate_unbalanced_walk(o.n, tape, source, step_rng);
        Row row;
        row.walk = walk.total();
        row.representation = srw::percolation_sum(forest, walk.step_values);
        row.rel = std::abs(row.walk - row.representation) / (1.0 + std::abs(row.walk));
        auto const stats = srw::component_stats(forest, o.ls);
        for (auto const& [size, count] : stats.nu)
            row.components += count;
        for (auto const& lz : stats.z)
            row.z.push_back(lz.second);
        return row;
    });

    std::vector<std::string> header{"replicate", "T_n", "representation", "relative_error", "components"};
    for (double l : o.ls)
        header.push_back("Z_" + format_double(l));
    CsvWriter csv(output_path(g, "percolation-check", ".csv"), header);
    double worst = 0.0;
    double mean_components = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        auto const& row = rows[i];
        worst = std::max(worst, row.rel);
        mean_components += static_cast<double>(row.components) / static_cast<double>(rows.size());
        std::ostringstream zs;
        for (double z : row.z)
            zs << ',' << format_double(z);
        csv.row(i, row.walk, row.representation, row.rel, std::to_string(row.components) + zs.str());
    }

    Report report{"percolation-check"};
    report.params = {{"p", o.p}, {"r", o.r}, {"n", o.n}, {"replicates", o.replicates},
                     {"steps", source.name()}, {"ls", o.ls}};
    report.statistics = {{"max_relative_error", worst}, {"mean_components", mean_components},
                         {"expected_components", 1.0 + (1.0 - o.p) * static_cast<double>(o.n - 1)}};
    report.criterion("identity", worst <= o.tolerance, worst, o.tolerance);
    return finish(g, report, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

int cmd_verify_clt(Globals const& g, CltOpts const& o)
{
    auto const start = std::chrono::steady_clock::now();
    auto const scheme = make_scheme(o.scheme, o.y_law, o.p, o.r, o.scale_by_n);
    auto const source = make_source(o.steps, o.alpha, 1.0);
    bool const stable_steps = source.family == srw::StepSource::Family::stable && source.alpha < 2.0;
    double const nd = static_cast<double>(o.n);

    srw::LimitSpec limit;
    std::string kind = o.limit;
    if (kind == "auto")
    {
        if (scheme.family == srw::WeightScheme::Family::spike)
            kind = "step";
        else if (scheme.family == srw::WeightScheme::Family::self_normalized
                 || scheme.family == srw::WeightScheme::Family::slow_varying_self_normalized)
            kind = "mixture";
        else
            kind = stable_steps ? "stable" : "normal";
    }
    if (kind == "normal")
        limit.kind = srw::LimitSpec::Kind::normal;
    else if (kind == "stable")
        limit.kind = srw::LimitSpec::Kind::stable;
    else if (kind == "mixture")
        limit.kind = srw::LimitSpec::Kind::mixture;
    else if (kind == "step")
        limit.kind = srw::LimitSpec::Kind::step_law;
    else
        throw srw::DomainError("unknown limit: " + o.limit);
    limit.alpha = stable_steps ? source.alpha : 2.0;

    limit.scale = o.scale;
    if (limit.scale <= 0.0)
    {
        limit.scale = 1.0;
        if (scheme.family == srw::WeightScheme::Family::percolation)
        {
            auto const c = srw::constant_series(limit.alpha, o.p, o.r, 1e-8);
            if (limit.kind == srw::LimitSpec::Kind::stable)
                limit.scale = std::pow(c.value, 1.0 / limit.alpha);
            else if (limit.kind == srw::LimitSpec::Kind::normal)
                limit.scale = std::sqrt(c.value * source.second_moment().value_or(1.0));
        }
        else if (limit.kind == srw::LimitSpec::Kind::normal)
        {
            // a1 = n^-1 sum W^2 averaged over weight draws independent of the experiment
            std::size_t const draws = std::min<std::size_t>(o.replicates, 200);
            double a1 = 0.0;
            for (std::size_t i = 0; i < draws; ++i)
            {
                srw::Rng rng(g.seed, i, srw::StreamTag::aux);
                auto const w = srw::gen_weights(scheme, o.n, rng);
                double sq = 0.0;
                for (double x : w)
                    sq += x * x;
                a1 += sq / nd / static_cast<double>(draws);
            }
            limit.scale = std::sqrt(a1 * source.second_moment().value_or(1.0));
        }
    }

    std::string rule = o.normalizer;
    if (rule == "auto")
        rule = stable_steps ? "exact-stable" : "sqrt-n";
    srw::CltOptions clt;
    clt.n = o.n;
    clt.replicates = o.replicates;
    clt.seed = g.seed;
    clt.threads = g.threads;
    if (rule == "sqrt-n")
        clt.normalizer = std::sqrt(nd);
    else if (rule == "exact-stable")
        clt.normalizer = srw::normalizer(srw::NormalizerRule::exact_stable, limit.alpha, nd);
    else if (rule == "n-log-n")
        clt.normalizer = srw::normalizer(srw::NormalizerRule::n_log_n, 2.0, nd);
    else
        throw srw::DomainError("unknown normalizer: " + o.normalizer);

    auto const result = srw::clt_experiment(scheme, source, limit, clt);
    CsvWriter csv(output_path(g, "verify-clt", ".csv"), {"replicate", "normalized_sum"});
    for (std::size_t i = 0; i < result.sample.size(); ++i)
        csv.row(i, result.sample[i]);

    Report report{"verify-clt"};
    report.params = {{"scheme", scheme.name()}, {"n", o.n}, {"replicates", o.replicates},
                     {"steps", source.name()}, {"normalizer", rule}, {"a_n", clt.normalizer},
                     {"p", o.p}, {"r", o.r}};
    report.statistics = {{"limit_scale", limit.scale}, {"limit", result.limit}, {"ks", result.ks},
                         {"two_sample", result.two_sample}, {"normal_ks", result.normal_ks}};
    report.criterion("ks_to_limit", result.ks <= o.ks_threshold, result.ks, o.ks_threshold);
    return finish(g, report, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

int cmd_conditions(Globals const& g, ConditionsOpts const& o)
{
    auto const start = std::chrono::steady_clock::now();
    auto const scheme = make_scheme(o.scheme, o.y_law, o.p, o.r, o.scale_by_n);
    srw::ConditionsOptions opts;
    opts.alpha = o.alpha;
    opts.beta = o.beta;
    opts.replicates = o.replicates;
    opts.seed = g.seed;
    opts.threads = g.threads;
    auto const diag = srw::check_conditions(scheme, o.n_grid, opts);

    std::vector<std::string> header{"n", "a1_mean", "a2_mean", "alpha_sum_mean"};
    for (double c : diag.c_grid)
        header.push_back("a4_c" + format_double(c));
    for (double c : diag.c_grid)
        header.push_back("a6_c" + format_double(c));
    CsvWriter csv(output_path(g, "conditions", ".csv"), header);
    auto mean = [](std::vector<double> const& v) { return srw::mc_mean_se(v).mean; };
    json per_n = json::array();
    for (auto const& at : diag.per_n)
    {
        std::ostringstream tail;
        for (double v : at.a4_profile)
            tail << ',' << format_double(v);
        for (double v : at.a6_profile)
            tail << ',' << format_double(v);
        csv.row(at.n, mean(at.a1), mean(at.a2), format_double(mean(at.alpha_sum)) + tail.str());
        per_n.push_back({{"n", at.n}, {"a1_mean", mean(at.a1)}, {"a2_mean", mean(at.a2)},
                         {"alpha_sum_mean", mean(at.alpha_sum)}});
    }

    Report report{"conditions"};
    report.params = {{"scheme", diag.scheme}, {"n_grid", o.n_grid}, {"alpha", o.alpha},
                     {"beta", o.beta}, {"replicates", o.replicates}};
    report.statistics = {{"a1_concentrates", diag.a1_concentrates},
                         {"a2_vanishes", diag.a2_vanishes},
                         {"a4_tail_uniform", diag.a4_tail_uniform},
                         {"a6_tail_uniform", diag.a6_tail_uniform},
                         {"per_n", per_n}};
    return finish(g, report, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

int cmd_counterexample(Globals const& g, CounterexampleOpts const& o)
{
    auto const start = std::chrono::steady_clock::now();
    if (o.which != "spike" && o.which != "log-window" && o.which != "both")
        throw srw::DomainError("unknown counterexample: " + o.which);
    Report report{"counterexample"};
    report.params = {{"which", o.which}, {"n", o.n}, {"replicates", o.replicates}};
    CsvWriter csv(output_path(g, "counterexample", ".csv"), {"scheme", "replicate", "normalized_sum"});
    double const nd = static_cast<double>(o.n);

    if (o.which != "log-window")
    {
        srw::WeightScheme const spike{srw::WeightScheme::Family::spike};
        auto const rows = srw::run_replicates(o.replicates, g.threads, [&](std::size_t i) {
            srw::Rng wr(g.seed, i, srw::StreamTag::weights);
            srw::Rng sr(g.seed, i, srw::StreamTag::steps);
            auto const w = srw::gen_weights(spike, o.n, wr);
            auto const xi = srw::StepSource::rademacher().draw_n(o.n, sr);
            double const s = srw::weighted_sum(w, xi) / std::sqrt(nd);
            return std::pair<double, double>{s, xi[0]};
        });
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            mismatches += rows[i].first == rows[i].second ? 0 : 1;
            csv.row("spike", i, rows[i].first);
        }
        report.statistics["spike_mismatches"] = mismatches;
        report.criterion("spike_equals_first_step", mismatches == 0, static_cast<double>(mismatches), 0.0);
    }
    if (o.which != "spike")
    {
        srw::WeightScheme const window{srw::WeightScheme::Family::log_window};
        auto const source = srw::StepSource::symmetric_pareto(2.0);
        std::size_t const m = srw::log_window_length(o.n);
        srw::CltOptions clt;
        clt.n = o.n;
        clt.replicates = o.replicates;
        clt.normalizer = srw::normalizer(srw::NormalizerRule::n_log_n, 2.0, nd);
        clt.seed = g.seed;
        clt.threads = g.threads;
        auto const plain = srw::clt_experiment(window, source, {srw::LimitSpec::Kind::normal}, clt);
        double const correction = std::sqrt(std::log(nd) / std::log(static_cast<double>(m)));
        clt.normalizer /= correction;
        auto const corrected = srw::clt_experiment(window, source, {srw::LimitSpec::Kind::normal}, clt);
        for (std::size_t i = 0; i < plain.sample.size(); ++i)
            csv.row("log-window", i, plain.sample[i]);
        for (std::size_t i = 0; i < corrected.sample.size(); ++i)
            csv.row("log-window-corrected", i, corrected.sample[i]);
        report.statistics["window_length"] = m;
        report.statistics["ks_uncorrected"] = plain.ks;
        report.statistics["ks_corrected"] = corrected.ks;
        report.criterion("uncorrected_not_normal", plain.ks > o.ks_threshold, plain.ks, o.ks_threshold);
        report.criterion("corrected_normal", corrected.ks <= o.ks_threshold, corrected.ks, o.ks_threshold);
    }
    return finish(g, report, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

int cmd_acceptance(Globals const& g, AcceptanceOpts const& o)
{
    auto const start = std::chrono::steady_clock::now();
    srw::acceptance::Options options;
    options.seed = g.seed;
    options.threads = g.threads;
    Report report{"acceptance"};
    report.params = {{"ids", o.ids}};
    CsvWriter csv(output_path(g, "acceptance", ".csv"),
                  {"id", "name", "passed", "statistic", "threshold", "seconds", "runtime_limit"});
    for (auto const& criterion : srw::acceptance::criteria())
    {
        if (!o.ids.empty() && std::find(o.ids.begin(), o.ids.end(), criterion.id) == o.ids.end())
            continue;
        auto const res = srw::acceptance::run(criterion, options);
        csv.row(res.id, res.name, res.passed, res.statistic, res.threshold, res.seconds, res.runtime_limit);
        std::string const key = (res.id < 10 ? "0" : "") + std::to_string(res.id);
        report.criteria[key] = {{"name", res.name}, {"passed", res.passed},
                                {"statistic", res.statistic}, {"threshold", res.threshold},
                                {"seconds", res.seconds}, {"detail", res.detail}};
        if (!g.quiet)
            std::cerr << (res.passed ? "[PASS] " : "[FAIL] ") << res.id << ' ' << res.name << ": "
                      << res.detail << '\n';
    }
    return finish(g, report, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Step-reinforced random walks, percolation weights and weighted sums"};
    app.require_subcommand(1);
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file mirroring the command-line flags");

    Globals g;
    app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (default: SRW_THREADS or hardware)")
        ->check(CLI::PositiveNumber);
    app.add_option("--out-dir", g.out_dir, "Directory for CSV and JSON output")->capture_default_str();
    app.add_flag("--quiet", g.quiet, "Do not echo the JSON report");

    auto positive = CLI::PositiveNumber;
    auto probability = CLI::Range(0.0, 1.0);

    WalkOpts walk;
    auto* sim = app.add_subcommand("simulate-walk", "Simulate T_n (or the ERW T_n^0) over replicates");
    sim->add_option("--p", walk.p)->check(probability)->capture_default_str();
    sim->add_option("--r", walk.r)->check(probability)->capture_default_str();
    sim->add_option("--n", walk.n)->check(positive)->capture_default_str();
    sim->add_option("--replicates", walk.replicates)->check(positive)->capture_default_str();
    sim->add_option("--steps", walk.steps, "rademacher|gaussian|stable|cauchy|pareto|point-mass")->capture_default_str();
    sim->add_option("--alpha", walk.alpha)->capture_default_str();
    sim->add_option("--value", walk.value, "Atom of the point-mass step law")->capture_default_str();
    sim->add_flag("--erw", walk.erw, "Simulate the elephant random walk instead");

    MomentOpts moments;
    auto* mom = app.add_subcommand("erw-moments", "Second and fourth ERW moments by recursion");
    mom->add_option("--r", moments.r)->check(probability)->capture_default_str();
    mom->add_option("--n-max", moments.n_max)->check(positive)->capture_default_str();

    ConstantOpts constant;
    auto* cst = app.add_subcommand("compute-constant", "Series constant c(alpha, p, r)");
    cst->add_option("--alpha", constant.alpha)->capture_default_str();
    cst->add_option("--p", constant.p)->capture_default_str();
    cst->add_option("--r", constant.r)->check(probability)->capture_default_str();
    cst->add_option("--tol", constant.tol)->check(positive)->capture_default_str();
    cst->add_flag("--monte-carlo", constant.monte_carlo, "Monte Carlo moments instead of the exact law");
    cst->add_option("--mc-paths", constant.mc_paths)->check(positive)->capture_default_str();
    cst->add_option("--mc-truncation", constant.mc_truncation)->check(positive)->capture_default_str();

    PercolationOpts perc;
    auto* pc = app.add_subcommand("percolation-check", "Check T_n = sum W_nk xi_k pathwise");
    pc->add_option("--p", perc.p)->check(probability)->capture_default_str();
    pc->add_option("--r", perc.r)->check(probability)->capture_default_str();
    pc->add_option("--n", perc.n)->check(positive)->capture_default_str();
    pc->add_option("--replicates", perc.replicates)->check(positive)->capture_default_str();
    pc->add_option("--steps", perc.steps)->capture_default_str();
    pc->add_option("--alpha", perc.alpha)->capture_default_str();
    pc->add_option("--tolerance", perc.tolerance)->check(positive)->capture_default_str();
    pc->add_option("--l", perc.ls, "Exponents l for Z_l(n)")->capture_default_str();

    CltOpts cltopts;
    auto* vc = app.add_subcommand("verify-clt", "KS distance of normalized weighted sums to a limit law");
    vc->add_option("--scheme", cltopts.scheme,
                   "ones|efron|bayesian|self-normalized|percolation|spike|log-window|slow-varying")
        ->capture_default_str();
    vc->add_option("--y-law", cltopts.y_law, "exponential|uniform|slowly-varying")->capture_default_str();
    vc->add_flag("--scale-by-n", cltopts.scale_by_n, "Multiply Bayesian gaps by n");
    vc->add_option("--p", cltopts.p)->check(probability)->capture_default_str();
    vc->add_option("--r", cltopts.r)->check(probability)->capture_default_str();
    vc->add_option("--n", cltopts.n)->check(positive)->capture_default_str();
    vc->add_option("--replicates", cltopts.replicates)->check(positive)->capture_default_str();
    vc->add_option("--steps", cltopts.steps)->capture_default_str();
    vc->add_option("--alpha", cltopts.alpha)->capture_default_str();
    vc->add_option("--limit", cltopts.limit, "auto|normal|stable|mixture|step")->capture_default_str();
    vc->add_option("--normalizer", cltopts.normalizer, "auto|sqrt-n|exact-stable|n-log-n")
        ->capture_default_str();
    vc->add_option("--scale", cltopts.scale, "Limit scale (0: derived)")->capture_default_str();
    vc->add_option("--ks-threshold", cltopts.ks_threshold)->capture_default_str();

    ConditionsOpts cond;
    auto* cd = app.add_subcommand("conditions", "Diagnostics of the weight conditions over an n grid");
    cd->add_option("--scheme", cond.scheme)->capture_default_str();
    cd->add_option("--y-law", cond.y_law)->capture_default_str();
    cd->add_flag("--scale-by-n", cond.scale_by_n, "Multiply Bayesian gaps by n");
    cd->add_option("--p", cond.p)->check(probability)->capture_default_str();
    cd->add_option("--r", cond.r)->check(probability)->capture_default_str();
    cd->add_option("--n-grid", cond.n_grid)->capture_default_str();
    cd->add_option("--alpha", cond.alpha)->capture_default_str();
    cd->add_option("--beta", cond.beta)->capture_default_str();
    cd->add_option("--replicates", cond.replicates)->check(positive)->capture_default_str();

    CounterexampleOpts counter;
    auto* ce = app.add_subcommand("counterexample", "Spike and log-window weight schemes");
    ce->add_option("--which", counter.which, "spike|log-window|both")->capture_default_str();
    ce->add_option("--n", counter.n)->check(CLI::Range(std::size_t{3}, std::size_t{1} << 40))
        ->capture_default_str();
    ce->add_option("--replicates", counter.replicates)->check(positive)->capture_default_str();
    ce->add_option("--ks-threshold", counter.ks_threshold)->capture_default_str();

    AcceptanceOpts acc;
    auto* ac = app.add_subcommand("acceptance", "Run the acceptance criteria");
    ac->add_option("--id", acc.ids, "Criterion ids to run (default: all)");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try
    {
        if (*sim)
            return cmd_simulate_walk(g, walk);
        if (*mom)
            return cmd_erw_moments(g, moments);
        if (*cst)
            return cmd_compute_constant(g, constant);
        if (*pc)
            return cmd_percolation_check(g, perc);
        if (*vc)
            return cmd_verify_clt(g, cltopts);
        if (*cd)
            return cmd_conditions(g, cond);
        if (*ce)
            return cmd_counterexample(g, counter);
        if (*ac)
            return cmd_acceptance(g, acc);
    }
    catch (std::domain_error const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_domain;
    }
    catch (srw::RejectionExhausted const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_domain;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

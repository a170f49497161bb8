#include "srw/weighted_sums.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "srw/errors.hpp"
#include "srw/parallel.hpp"
#include "srw/percolation.hpp"
#include "srw/stable.hpp"
#include "srw/stats.hpp"
#include "srw/summation.hpp"

namespace srw {
namespace {

using Family = WeightScheme::Family;

double draw_y(YLaw law, Rng& rng)
{
    switch (law)
    {
        case YLaw::exponential:
            return rng.exponential();
        case YLaw::uniform:
            return rng.uniform();
        case YLaw::slowly_varying:
            return std::exp(1.0 / rng.uniform_open());
    }
    return 0.0;
}

std::vector<double> self_normalized(YLaw law, std::size_t n, Rng& rng)
{
    std::vector<double> w(n);
    double const root_n = std::sqrt(static_cast<double>(n));
    if (law == YLaw::slowly_varying)
    {
        // Y = exp(1/U) overflows; normalize in log space.
        std::vector<double> log_y(n);
        for (auto& v : log_y)
            v = 1.0 / rng.uniform_open();
        double const top = *std::max_element(log_y.begin(), log_y.end());
        CompensatedSum total;
        for (double v : log_y)
            total.add(std::exp(v - top));
        for (std::size_t k = 0; k < n; ++k)
            w[k] = root_n * std::exp(log_y[k] - top) / total.value();
        return w;
    }
    CompensatedSum total;
    for (auto& v : w)
    {
        v = draw_y(law, rng);
        total.add(v);
    }
    double const denom = total.value();
    for (auto& v : w)
        v = denom > 0.0 ? root_n * v / denom : 0.0;  // 0/0 = 0
    return w;
}

struct RepStats
{
    double a1 = 0.0;
    double a2 = 0.0;
    double alpha_sum = 0.0;
    std::vector<double> a4;
    std::vector<double> a6;
};

double mean_of(std::vector<double> const& v)
{
    return compensated_sum(v) / static_cast<double>(v.size());
}

double rel_sd(std::vector<double> const& v)
{
    auto const ms = mc_mean_se(v);
    double const sd = ms.se * std::sqrt(static_cast<double>(v.size()));
    return ms.mean == 0.0 ? 0.0 : sd / std::abs(ms.mean);
}

}  // namespace

void WeightScheme::validate() const
{
    if (family == Family::percolation)
    {
        WalkParams{p, r, 2.0}.validate();
    }
}

std::string WeightScheme::name() const
{
    switch (family)
    {
        case Family::ones:
            return "ones";
        case Family::efron_multinomial:
            return "efron";
        case Family::bayesian_gaps:
            return scale_by_n ? "bayesian(scaled)" : "bayesian";
        case Family::self_normalized:
            switch (y_law)
            {
                case YLaw::exponential:
                    return "self-normalized(exponential)";
                case YLaw::uniform:
                    return "self-normalized(uniform)";
                case YLaw::slowly_varying:
                    return "self-normalized(slowly-varying)";
            }
            return "self-normalized";
        case Family::percolation: {
            std::ostringstream os;
            os << "percolation(" << p << "," << r << ")";
            return os.str();
        }
        case Family::spike:
            return "spike";
        case Family::log_window:
            return "log-window";
        case Family::slow_varying_self_normalized:
            return "slow-varying";
    }
    return "";
}

WeightScheme::Family parse_weight_family(std::string const& name)
{
    if (name == "ones" || name == "all-ones")
        return Family::ones;
    if (name == "efron")
        return Family::efron_multinomial;
    if (name == "bayesian")
        return Family::bayesian_gaps;
    if (name == "self-normalized" || name == "breiman")
        return Family::self_normalized;
    if (name == "percolation")
        return Family::percolation;
    if (name == "spike")
        return Family::spike;
    if (name == "log-window")
        return Family::log_window;
    if (name == "slow-varying")
        return Family::slow_varying_self_normalized;
    throw DomainError("unknown weight scheme: " + name);
}

std::size_t log_window_length(std::size_t n)
{
    if (n < 1)
        throw DomainError("n must be at least 1");
    auto const m = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n))));
    return std::clamp<std::size_t>(m, 1, n);
}

std::vector<double> gen_weights(WeightScheme const& scheme, std::size_t n, Rng& rng)
{
    scheme.validate();
    if (n < 1)
        throw DomainError("gen_weights: n must be at least 1");
    std::vector<double> w;
    switch (scheme.family)
    {
        case Family::ones:
            w.assign(n, 1.0);
            break;
        case Family::efron_multinomial:
            w.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                w[rng.uniform_int(0, n - 1)] += 1.0;
            break;
        case Family::bayesian_gaps: {
            std::vector<double> cuts(n - 1);
            for (auto& c : cuts)
                c = rng.uniform();
            std::sort(cuts.begin(), cuts.end());
            w.resize(n);
            double prev = 0.0;
            for (std::size_t k = 0; k + 1 < n; ++k)
            {
                w[k] = cuts[k] - prev;
                prev = cuts[k];
            }
            w[n - 1] = 1.0 - prev;
            break;
        }
        case Family::self_normalized:
            w = self_normalized(scheme.y_law, n, rng);
            break;
        case Family::slow_varying_self_normalized:
            w = self_normalized(YLaw::slowly_varying, n, rng);
            break;
        case Family::percolation: {
            WalkParams const params{scheme.p, scheme.r, 2.0};
            auto const tape = RandomnessTape::draw(params, n, rng);
            auto const forest = percolate(n, tape);
            w.resize(n);
            for (std::size_t k = 1; k <= n; ++k)
                w[k - 1] = static_cast<double>(forest.weights[k]);
            break;
        }
        case Family::spike:
            w.assign(n, 0.0);
            w[0] = std::sqrt(static_cast<double>(n));
            break;
        case Family::log_window: {
            std::size_t const m = log_window_length(n);
            w.assign(n, 0.0);
            double const height = std::sqrt(static_cast<double>(n) / static_cast<double>(m));
            std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m), height);
            break;
        }
    }
    if (scheme.scale_by_n)
    {
        for (auto& v : w)
            v *= static_cast<double>(n);
    }
    return w;
}

double weighted_sum(std::span<double const> weights, std::span<double const> steps)
{
    if (weights.size() != steps.size())
        throw DomainError("weighted_sum: weights and steps differ in length");
    CompensatedSum acc;
    for (std::size_t k = 0; k < weights.size(); ++k)
    {
        if (weights[k] != 0.0)
            acc.add(weights[k] * steps[k]);
    }
    return acc.value();
}

//---------------------------------------------------------------------------//

DiagnosticsReport check_conditions(WeightScheme const& scheme,
                                   std::vector<std::size_t> const& n_grid,
                                   ConditionsOptions const& options)
{
    scheme.validate();
    if (n_grid.empty())
        throw DomainError("check_conditions: empty n grid");
    if (options.replicates < 2)
        throw DomainError("check_conditions: need at least two replicates");

    DiagnosticsReport report;
    report.scheme = scheme.name();
    report.alpha = options.alpha;
    report.beta = options.beta;
    report.c_grid = options.c_grid;
    std::size_t const nc = options.c_grid.size();

    for (std::size_t n : n_grid)
    {
        auto const reps = run_replicates(options.replicates, options.threads, [&](std::size_t i) {
            Rng rng(derive_seed(options.seed, n, StreamTag::weights), i, StreamTag::weights);
            auto const w = gen_weights(scheme, n, rng);
            auto const nd = static_cast<double>(n);
            RepStats s;
            s.a4.assign(nc, 0.0);
            s.a6.assign(nc, 0.0);
            CompensatedSum sq, al;
            double mx = 0.0;
            for (double v : w)
            {
                double const a = std::abs(v);
                sq.add(v * v);
                al.add(std::pow(a, options.alpha));
                mx = std::max(mx, a);
                for (std::size_t c = 0; c < nc; ++c)
                {
                    if (a > options.c_grid[c])
                    {
                        s.a4[c] += v * v;
                        s.a6[c] += std::pow(a, options.beta);
                    }
                }
            }
            s.a1 = sq.value() / nd;
            s.a2 = mx / std::sqrt(nd);
            s.alpha_sum = al.value() / nd;
            for (std::size_t c = 0; c < nc; ++c)
            {
                s.a4[c] /= nd;
                s.a6[c] /= nd;
            }
            return s;
        });

        ConditionsAtN at;
        at.n = n;
        at.a4_profile.assign(nc, 0.0);
        at.a6_profile.assign(nc, 0.0);
        for (auto const& s : reps)
        {
            at.a1.push_back(s.a1);
            at.a2.push_back(s.a2);
            at.alpha_sum.push_back(s.alpha_sum);
            for (std::size_t c = 0; c < nc; ++c)
            {
                at.a4_profile[c] += s.a4[c] / static_cast<double>(reps.size());
                at.a6_profile[c] += s.a6[c] / static_cast<double>(reps.size());
            }
        }
        report.per_n.push_back(std::move(at));
    }

    auto const& first = report.per_n.front();
    auto const& last = report.per_n.back();
    double const rel_first = rel_sd(first.a1);
    double const rel_last = rel_sd(last.a1);
    report.a1_concentrates = rel_last <= 0.1 || rel_last < 0.75 * rel_first;

    bool decreasing = report.per_n.size() > 1;
    for (std::size_t g = 1; g < report.per_n.size(); ++g)
        decreasing = decreasing && mean_of(report.per_n[g].a2) < mean_of(report.per_n[g - 1].a2);
    report.a2_vanishes = decreasing;

    if (nc >= 2)
    {
        auto uniform_decay = [&](auto member) {
            double head = 0.0;
            double tail = 0.0;
            for (auto const& at : report.per_n)
            {
                head = std::max(head, (at.*member).front());
                tail = std::max(tail, (at.*member).back());
            }
            return tail <= 0.05 * head || tail == 0.0;
        };
        report.a4_tail_uniform = uniform_decay(&ConditionsAtN::a4_profile);
        report.a6_tail_uniform = uniform_decay(&ConditionsAtN::a6_profile);
    }
    return report;
}

//---------------------------------------------------------------------------//

std::string LimitSpec::describe() const
{
    std::ostringstream os;
    switch (kind)
    {
        case Kind::normal:
            os << "N(0," << scale * scale << ")";
            break;
        case Kind::stable:
            os << scale << "*S(" << alpha << ")";
            break;
        case Kind::mixture:
            os << "W^(1/" << alpha << ")*S(" << alpha << ")";
            break;
        case Kind::step_law:
            os << "ξ₁";
            break;
    }
    return os.str();
}

CltResult clt_experiment(WeightScheme const& scheme,
                         StepSource const& steps,
                         LimitSpec const& limit,
                         CltOptions const& options)
{
    scheme.validate();
    steps.validate();
    if (options.replicates < 2 || options.n < 1)
        throw DomainError("clt_experiment: need n >= 1 and at least two replicates");
    if (!(options.normalizer > 0.0))
        throw DomainError("clt_experiment: normalizer must be positive");

    std::size_t const n = options.n;
    CltResult result;
    result.limit = limit.describe();
    result.sample = run_replicates(options.replicates, options.threads, [&](std::size_t i) {
        Rng weight_rng(options.seed, i, StreamTag::weights);
        Rng step_rng(options.seed, i, StreamTag::steps);
        auto const w = gen_weights(scheme, n, weight_rng);
        auto const xi = steps.draw_n(n, step_rng);
        return weighted_sum(w, xi) / options.normalizer;
    });

    EmpiricalSample const sample(result.sample);
    result.normal_ks = ks_to_cdf(sample, normal_cdf);
    switch (limit.kind)
    {
        case LimitSpec::Kind::normal:
            result.ks = ks_to_cdf(sample, [&](double x) { return normal_cdf(x / limit.scale); });
            break;
        case LimitSpec::Kind::stable:
            result.ks = ks_to_cdf(sample, [&](double x) {
                return cdf_stable(limit.alpha, x / limit.scale);
            });
            break;
        case LimitSpec::Kind::mixture: {
            auto reference = run_replicates(options.replicates, options.threads, [&](std::size_t i) {
                Rng rng(options.seed, i, StreamTag::aux);
                auto const w = gen_weights(scheme, n, rng);
                CompensatedSum acc;
                for (double v : w)
                    acc.add(std::pow(std::abs(v), limit.alpha));
                double const mix = acc.value() / static_cast<double>(n);
                if (limit.alpha == 2.0)
                    return std::sqrt(mix) * rng.normal();
                return std::pow(mix, 1.0 / limit.alpha) * sample_stable(limit.alpha, rng);
            });
            result.ks = two_sample_ks(sample, EmpiricalSample(std::move(reference)));
            result.two_sample = true;
            break;
        }
        case LimitSpec::Kind::step_law: {
            auto reference = run_replicates(options.replicates, options.threads, [&](std::size_t i) {
                Rng rng(options.seed, i, StreamTag::aux);
                return steps.draw(rng);
            });
            result.ks = two_sample_ks(sample, EmpiricalSample(std::move(reference)));
            result.two_sample = true;
            break;
        }
    }
    return result;
}

}  // namespace srw

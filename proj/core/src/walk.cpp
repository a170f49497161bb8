#include "srw/walk.hpp"

#include <cmath>
#include <sstream>

#include "srw/errors.hpp"
#include "srw/stable.hpp"
#include "srw/summation.hpp"

namespace srw {
namespace {
constexpr double critical_tol = 1e-12;

void check_prob(double v, char const* name)
{
    if (!(v >= 0.0 && v <= 1.0))
        throw DomainError(std::string(name) + " must lie in [0, 1]");
}
}  // namespace

void WalkParams::validate() const
{
    check_prob(p, "p");
    check_prob(r, "r");
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw DomainError("alpha must lie in (0, 2]");
}

std::string to_string(Regime regime)
{
    switch (regime)
    {
        case Regime::subcritical:
            return "subcritical";
        case Regime::critical:
            return "critical";
        case Regime::supercritical:
            return "supercritical";
    }
    return "unknown";
}

double DerivedParams::sigma_sq_for(double step_mean, double step_second_moment) const
{
    double const m = mu_coeff.value_or(0.0) * step_mean;
    return step_second_moment - m * m;
}

DerivedParams derive_params(WalkParams const& params,
                            double step_mean,
                            double step_second_moment,
                            bool require_mean)
{
    params.validate();
    DerivedParams d;
    d.a = (2.0 * params.r - 1.0) * params.p;
    d.gamma = 4.0 * params.r - 2.0;
    d.regime = classify_regime(params).regime;
    if (d.a < 1.0)
    {
        d.mu_coeff = (1.0 - params.r) / (1.0 - d.a);
    }
    else if (require_mean)
    {
        throw DomainError("a = 1: the mean coefficient (1-r)/(1-a) is undefined");
    }
    d.mu = d.mu_coeff.value_or(0.0) * step_mean;
    d.sigma_sq = step_second_moment - d.mu * d.mu;
    return d;
}

double RegimeScaling::scale(double n) const
{
    switch (regime)
    {
        case Regime::subcritical:
            return std::sqrt(n);
        case Regime::critical:
            return std::sqrt(n * std::log(n));
        case Regime::supercritical:
            return std::pow(n, a);
    }
    return std::sqrt(n);
}

std::string RegimeScaling::describe() const
{
    switch (regime)
    {
        case Regime::subcritical:
            return "sqrt(n)";
        case Regime::critical:
            return "sqrt(n log n)";
        case Regime::supercritical: {
            std::ostringstream os;
            os << "n^" << a;
            return os.str();
        }
    }
    return "";
}

RegimeScaling classify_regime(WalkParams const& params)
{
    params.validate();
    RegimeScaling s;
    s.a = (2.0 * params.r - 1.0) * params.p;
    if (std::abs(s.a - 0.5) <= critical_tol)
        s.regime = Regime::critical;
    else if (s.a < 0.5)
        s.regime = Regime::subcritical;
    else
        s.regime = Regime::supercritical;
    return s;
}

//---------------------------------------------------------------------------//

RandomnessTape RandomnessTape::draw(WalkParams const& params, std::size_t n, Rng& rng)
{
    params.validate();
    RandomnessTape tape;
    tape.u_.assign(2, 0);
    tape.eps_.assign(2, 0);
    tape.eta_.assign(2, 0);
    tape.u_.reserve(n + 1);
    tape.eps_.reserve(n + 1);
    tape.eta_.reserve(n + 1);
    tape.size_ = n >= 1 ? 1 : 0;
    while (tape.size_ < n)
        tape.extend(params, rng);
    return tape;
}

RandomnessTape RandomnessTape::from_vectors(std::vector<std::uint32_t> parent,
                                            std::vector<std::uint8_t> eps,
                                            std::vector<std::uint8_t> eta)
{
    if (parent.size() != eps.size() || parent.size() != eta.size() || parent.size() < 2)
        throw DomainError("tape vectors must have equal length n+1 >= 2");
    for (std::size_t k = 2; k < parent.size(); ++k)
    {
        if (parent[k] < 1 || parent[k] >= k)
            throw DomainError("tape parent U_k must lie in {1, ..., k-1}");
    }
    RandomnessTape tape;
    tape.size_ = parent.size() - 1;
    tape.u_ = std::move(parent);
    tape.eps_ = std::move(eps);
    tape.eta_ = std::move(eta);
    return tape;
}

void RandomnessTape::extend(WalkParams const& params, Rng& rng)
{
    if (size_ == 0)
    {
        u_.assign(2, 0);
        eps_.assign(2, 0);
        eta_.assign(2, 0);
        size_ = 1;
        return;
    }
    std::size_t const k = size_ + 1;
    u_.push_back(static_cast<std::uint32_t>(rng.uniform_int(1, k - 1)));
    eps_.push_back(rng.bernoulli(params.p) ? 1 : 0);
    eta_.push_back(rng.bernoulli(params.r) ? 1 : 0);
    size_ = k;
}

//---------------------------------------------------------------------------//

void StepSource::validate() const
{
    if (family == Family::stable && !(alpha > 0.0 && alpha <= 2.0))
        throw DomainError("stable alpha must lie in (0, 2]");
    if (family == Family::symmetric_pareto && !(alpha > 0.0))
        throw DomainError("pareto alpha must be positive");
}

double StepSource::draw(Rng& rng) const
{
    switch (family)
    {
        case Family::rademacher:
            return static_cast<double>(rng.rademacher());
        case Family::gaussian:
            return rng.normal();
        case Family::stable:
            return sample_stable(alpha, rng);
        case Family::symmetric_pareto: {
            double const mag = std::pow(rng.uniform_open(), -1.0 / alpha);
            return rng.rademacher() * mag;
        }
        case Family::point_mass:
            return value;
    }
    return 0.0;
}

std::vector<double> StepSource::draw_n(std::size_t n, Rng& rng) const
{
    std::vector<double> out(n);
    for (auto& x : out)
        x = draw(rng);
    return out;
}

std::optional<double> StepSource::mean() const
{
    switch (family)
    {
        case Family::rademacher:
        case Family::gaussian:
            return 0.0;
        case Family::stable:
        case Family::symmetric_pareto:
            if (alpha > 1.0)
                return 0.0;
            return std::nullopt;
        case Family::point_mass:
            return value;
    }
    return std::nullopt;
}

std::optional<double> StepSource::second_moment() const
{
    switch (family)
    {
        case Family::rademacher:
        case Family::gaussian:
            return 1.0;
        case Family::stable:
            if (alpha == 2.0)
                return 2.0;
            return std::nullopt;
        case Family::symmetric_pareto:
            if (alpha > 2.0)
                return alpha / (alpha - 2.0);
            return std::nullopt;
        case Family::point_mass:
            return value * value;
    }
    return std::nullopt;
}

bool StepSource::symmetric() const
{
    return family != Family::point_mass || value == 0.0;
}

std::string StepSource::name() const
{
    std::ostringstream os;
    switch (family)
    {
        case Family::rademacher:
            return "rademacher";
        case Family::gaussian:
            return "gaussian";
        case Family::stable:
            os << "stable(" << alpha << ")";
            return os.str();
        case Family::symmetric_pareto:
            os << "symmetric-pareto(" << alpha << ")";
            return os.str();
        case Family::point_mass:
            os << "point-mass(" << value << ")";
            return os.str();
    }
    return "";
}

StepSource::Family parse_step_family(std::string const& name)
{
    using F = StepSource::Family;
    if (name == "rademacher")
        return F::rademacher;
    if (name == "gaussian" || name == "normal")
        return F::gaussian;
    if (name == "stable" || name == "cauchy")
        return F::stable;
    if (name == "symmetric-pareto" || name == "pareto")
        return F::symmetric_pareto;
    if (name == "point-mass")
        return F::point_mass;
    throw DomainError("unknown step law: " + name);
}

//---------------------------------------------------------------------------//

ErwPath simulate_erw(std::size_t n, RandomnessTape const& tape)
{
    if (n == 0)
        throw DomainError("empty path: n must be at least 1");
    if (tape.size() < n)
        throw DomainError("tape shorter than requested path");
    ErwPath path;
    path.steps.resize(n);
    path.sums.resize(n);
    path.steps[0] = 1;
    path.sums[0] = 1;
    for (std::size_t k = 2; k <= n; ++k)
    {
        int const copied = path.steps[tape.parent(k) - 1];
        path.steps[k - 1] = tape.eta(k) ? copied : -copied;
        path.sums[k - 1] = path.sums[k - 2] + path.steps[k - 1];
    }
    return path;
}

WalkPath simulate_unbalanced_walk(std::size_t n,
                                  RandomnessTape const& tape,
                                  std::span<double const> xi)
{
    if (n == 0)
        throw DomainError("empty path: n must be at least 1");
    if (tape.size() < n)
        throw DomainError("tape shorter than requested path");
    if (xi.size() < n)
        throw DomainError("fewer step values than path length");
    WalkPath path;
    path.step_values.assign(xi.begin(), xi.begin() + static_cast<std::ptrdiff_t>(n));
    path.steps.resize(n);
    path.sums.resize(n);
    path.steps[0] = xi[0];
    for (std::size_t k = 2; k <= n; ++k)
    {
        if (tape.eps(k))
        {
            double const copied = path.steps[tape.parent(k) - 1];
            path.steps[k - 1] = tape.eta(k) ? copied : -copied;
        }
        else
        {
            path.steps[k - 1] = xi[k - 1];
        }
    }
    CompensatedSum acc;
    for (std::size_t k = 0; k < n; ++k)
    {
        acc.add(path.steps[k]);
        path.sums[k] = acc.value();
    }
    return path;
}

WalkPath simulate_unbalanced_walk(std::size_t n,
                                  RandomnessTape const& tape,
                                  StepSource const& source,
                                  Rng& step_rng)
{
    source.validate();
    auto const xi = source.draw_n(n, step_rng);
    return simulate_unbalanced_walk(n, tape, xi);
}

StepOrigin trace_origin(RandomnessTape const& tape, std::size_t k)
{
    if (k == 0 || k > tape.size())
        throw DomainError("trace index out of range");
    StepOrigin origin{k, 1};
    while (origin.root > 1 && tape.eps(origin.root))
    {
        if (!tape.eta(origin.root))
            origin.sign = -origin.sign;
        origin.root = tape.parent(origin.root);
    }
    return origin;
}

std::int64_t erw_endpoint(std::size_t n, double r, Rng& rng)
{
    if (n == 0)
        throw DomainError("empty path: n must be at least 1");
    thread_local std::vector<signed char> steps;
    steps.resize(n);
    steps[0] = 1;
    std::int64_t total = 1;
    for (std::size_t k = 2; k <= n; ++k)
    {
        auto const u = rng.uniform_int(1, k - 1);
        signed char const copied = steps[u - 1];
        steps[k - 1] = rng.bernoulli(r) ? copied : static_cast<signed char>(-copied);
        total += steps[k - 1];
    }
    return total;
}

}  // namespace srw

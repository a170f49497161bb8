#include "srw/percolation.hpp"

#include <algorithm>
#include <cmath>

#include "srw/errors.hpp"
#include "srw/moments.hpp"
#include "srw/parallel.hpp"
#include "srw/summation.hpp"

namespace srw {

std::vector<std::uint32_t> PercolationForest::roots() const
{
    std::vector<std::uint32_t> out;
    for (std::size_t k = 1; k < root_of.size(); ++k)
    {
        if (root_of[k] == k)
            out.push_back(static_cast<std::uint32_t>(k));
    }
    return out;
}

std::pair<RecursiveTree, PercolationForest> grow_and_percolate(std::size_t n,
                                                               RandomnessTape const& tape)
{
    if (n == 0)
        throw DomainError("percolation needs at least one vertex");
    if (tape.size() < n)
        throw DomainError("tape shorter than requested tree");

    RecursiveTree tree;
    tree.parent.assign(n + 1, 0);
    PercolationForest forest;
    forest.open.assign(n + 1, 0);
    forest.root_of.assign(n + 1, 0);
    forest.component_sizes.assign(n + 1, 0);
    forest.root_of[1] = 1;
    for (std::size_t k = 2; k <= n; ++k)
    {
        std::uint32_t const u = tape.parent(k);
        tree.parent[k] = u;
        bool const open = tape.eps(k);
        forest.open[k] = open ? 1 : 0;
        // labels increase along root paths, so root_of[u] is already final
        forest.root_of[k] = open ? forest.root_of[u] : static_cast<std::uint32_t>(k);
    }
    for (std::size_t k = 1; k <= n; ++k)
        ++forest.component_sizes[forest.root_of[k]];
    return {std::move(tree), std::move(forest)};
}

std::vector<std::int64_t> const& assign_signed_weights(PercolationForest& forest,
                                                       RandomnessTape const& tape)
{
    std::size_t const n = forest.size();
    forest.sign.assign(n + 1, 0);
    forest.weights.assign(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k)
    {
        std::int8_t s = 1;
        if (!forest.is_root(k))
        {
            std::int8_t const parent_sign = forest.sign[tape.parent(k)];
            s = tape.eta(k) ? parent_sign : static_cast<std::int8_t>(-parent_sign);
        }
        forest.sign[k] = s;
        forest.weights[forest.root_of[k]] += s;
    }
    return forest.weights;
}

PercolationForest percolate(std::size_t n, RandomnessTape const& tape)
{
    auto [tree, forest] = grow_and_percolate(n, tape);
    assign_signed_weights(forest, tape);
    return std::move(forest);
}

double percolation_sum(PercolationForest const& forest, std::span<double const> xi)
{
    std::size_t const n = forest.size();
    if (xi.size() < n)
        throw DomainError("fewer step values than vertices");
    CompensatedSum acc;
    for (std::size_t k = 1; k <= n; ++k)
    {
        if (forest.weights[k] != 0)
            acc.add(static_cast<double>(forest.weights[k]) * xi[k - 1]);
    }
    return acc.value();
}

//---------------------------------------------------------------------------//

std::uint64_t ComponentStats::count(std::uint32_t size) const
{
    auto it = nu.find(size);
    return it == nu.end() ? 0 : it->second;
}

double ComponentStats::z_of(double l) const
{
    for (auto const& [ll, value] : z)
    {
        if (ll == l)
            return value;
    }
    return z_statistic(nu, l);
}

double z_statistic(std::map<std::uint32_t, std::uint64_t> const& nu, double l)
{
    CompensatedSum acc;
    for (auto const& [size, count] : nu)
        acc.add(std::pow(static_cast<double>(size), l) * static_cast<double>(count));
    return acc.value();
}

ComponentStats component_stats(PercolationForest const& forest, std::span<double const> ls)
{
    ComponentStats stats;
    for (std::size_t k = 1; k <= forest.size(); ++k)
    {
        if (forest.component_sizes[k] > 0)
            ++stats.nu[forest.component_sizes[k]];
    }
    for (double l : ls)
        stats.z.emplace_back(l, z_statistic(stats.nu, l));
    return stats;
}

//---------------------------------------------------------------------------//

IncrementalForest::IncrementalForest()
    : root_of_{0, 1}, sign_{0, 1}, weights_{0, 1}, sizes_{0, 1}, nu_{{1, 1}}
{
}

void IncrementalForest::add_vertex(std::uint32_t parent, bool eps, bool eta)
{
    std::size_t const k = size() + 1;
    if (parent < 1 || parent >= k)
        throw DomainError("parent must precede the new vertex");
    if (eps)
    {
        std::uint32_t const root = root_of_[parent];
        std::uint32_t const old_size = sizes_[root];
        if (--nu_[old_size] == 0)
            nu_.erase(old_size);
        ++nu_[old_size + 1];
        ++sizes_[root];
        std::int8_t const s = eta ? sign_[parent] : static_cast<std::int8_t>(-sign_[parent]);
        root_of_.push_back(root);
        sign_.push_back(s);
        weights_.push_back(0);
        sizes_.push_back(0);
        weights_[root] += s;
    }
    else
    {
        root_of_.push_back(static_cast<std::uint32_t>(k));
        sign_.push_back(1);
        weights_.push_back(1);
        sizes_.push_back(1);
        ++nu_[1];
    }
}

void IncrementalForest::grow(WalkParams const& params, Rng& rng)
{
    std::size_t const k = size() + 1;
    auto const u = static_cast<std::uint32_t>(rng.uniform_int(1, k - 1));
    bool const eps = rng.bernoulli(params.p);
    bool const eta = rng.bernoulli(params.r);
    add_vertex(u, eps, eta);
}

//---------------------------------------------------------------------------//

ConditionalWeightSample conditional_weight_law(WalkParams const& params,
                                               std::size_t n,
                                               std::vector<std::uint32_t> const& profile,
                                               std::size_t samples,
                                               Rng& rng,
                                               std::size_t attempt_budget)
{
    params.validate();
    if (n < 1 || n > 12)
        throw DomainError("conditional_weight_law supports 1 <= n <= 12");
    std::uint64_t total = 0;
    for (auto m : profile)
        total += m;
    if (total != n)
        throw DomainError("profile sizes must sum to n");
    bool const full_vector = profile.size() == n;
    if (!full_vector && std::find(profile.begin(), profile.end(), 0u) != profile.end())
        throw DomainError("ordered size profile entries must be positive");

    ConditionalWeightSample out;
    out.draws.reserve(samples);
    std::vector<std::uint32_t> observed;
    while (out.draws.size() < samples)
    {
        if (out.attempts >= attempt_budget)
            throw RejectionExhausted("size profile not reached within the attempt budget");
        ++out.attempts;
        auto const tape = RandomnessTape::draw(params, n, rng);
        auto const forest = percolate(n, tape);
        observed.clear();
        if (full_vector)
        {
            observed.assign(forest.component_sizes.begin() + 1, forest.component_sizes.end());
        }
        else
        {
            for (std::size_t k = 1; k <= n; ++k)
            {
                if (forest.component_sizes[k] > 0)
                    observed.push_back(forest.component_sizes[k]);
            }
        }
        if (observed != profile)
            continue;
        std::vector<std::int64_t> w;
        for (std::size_t k = 1; k <= n; ++k)
        {
            if (forest.component_sizes[k] > 0)
                w.push_back(forest.weights[k]);
        }
        out.draws.push_back(std::move(w));
    }
    for (std::size_t k = 0; k < profile.size(); ++k)
    {
        if (profile[k] > 0)
            out.profile.push_back(profile[k]);
    }
    return out;
}

std::vector<double> z_rate_check(WalkParams const& params,
                                 double l,
                                 std::vector<std::size_t> const& n_grid,
                                 std::size_t replicates,
                                 std::uint64_t seed,
                                 unsigned threads)
{
    params.validate();
    if (n_grid.empty() || replicates == 0)
        throw DomainError("z_rate_check needs a grid and replicates");
    auto grid = n_grid;
    std::sort(grid.begin(), grid.end());
    std::size_t const n_max = grid.back();

    auto const per_rep = run_replicates(replicates, threads, [&](std::size_t i) {
        Rng rng(seed, i, StreamTag::tape);
        IncrementalForest forest;
        std::vector<double> z(grid.size());
        std::size_t next = 0;
        while (next < grid.size() && grid[next] <= forest.size())
            z[next++] = z_statistic(forest.nu(), l);
        while (forest.size() < n_max)
        {
            forest.grow(params, rng);
            while (next < grid.size() && grid[next] == forest.size())
                z[next++] = z_statistic(forest.nu(), l);
        }
        return z;
    });

    std::vector<double> ratios(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g)
    {
        CompensatedSum acc;
        for (auto const& z : per_rep)
            acc.add(z[g]);
        double const mean = acc.value() / static_cast<double>(replicates);
        ratios[g] = mean / rate_b(l, params.p, static_cast<double>(grid[g]));
    }
    return ratios;
}

}  // namespace srw

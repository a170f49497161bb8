#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "srw/rng.hpp"
#include "srw/walk.hpp"

namespace srw {

/// Random recursive tree on {1..n}: parent[k] = U_k for k >= 2 (1-based).
struct RecursiveTree
{
    std::vector<std::uint32_t> parent;

    std::size_t size() const { return parent.empty() ? 0 : parent.size() - 1; }
};

/*!
 * Bond percolation on the recursive tree driven by the eps tape.
 *
 * The edge (U_k, k) is open iff eps_k = 1, i.e. iff step k copies an earlier
 * step. Component roots are vertex 1 and every k >= 2 with eps_k = 0. All
 * arrays are 1-based.
 */
struct PercolationForest
{
    std::vector<std::uint8_t> open;
    std::vector<std::uint32_t> root_of;
    std::vector<std::int8_t> sign;             //!< filled by assign_signed_weights
    std::vector<std::int64_t> weights;         //!< W_nk, zero for non-roots
    std::vector<std::uint32_t> component_sizes;  //!< N_j(n), zero for non-roots

    std::size_t size() const { return root_of.empty() ? 0 : root_of.size() - 1; }
    bool is_root(std::size_t k) const { return root_of[k] == k; }
    /// Root labels in increasing order.
    std::vector<std::uint32_t> roots() const;
};

/// Tree and forest (open edges, roots, component sizes) for vertices 1..n.
std::pair<RecursiveTree, PercolationForest> grow_and_percolate(std::size_t n,
                                                               RandomnessTape const& tape);

/// Propagate signs from each root in increasing label order and sum them
/// into W_nk. Returns the weight array (1-based).
std::vector<std::int64_t> const& assign_signed_weights(PercolationForest& forest,
                                                       RandomnessTape const& tape);

/// grow_and_percolate followed by assign_signed_weights.
PercolationForest percolate(std::size_t n, RandomnessTape const& tape);

/// sum_k W_nk xi_k with compensated summation.
double percolation_sum(PercolationForest const& forest, std::span<double const> xi);

struct ComponentStats
{
    std::map<std::uint32_t, std::uint64_t> nu;  //!< size -> number of components
    std::vector<std::pair<double, double>> z;   //!< (l, Z_l(n))

    std::uint64_t count(std::uint32_t size) const;
    double z_of(double l) const;
};

ComponentStats component_stats(PercolationForest const& forest, std::span<double const> ls);

/// Z_l(n) = sum_k k^l nu_k(n) from a size histogram.
double z_statistic(std::map<std::uint32_t, std::uint64_t> const& nu, double l);

/*!
 * Percolation grown one vertex at a time.
 *
 * Tracks component sizes, signs and weights, and the size histogram nu_k
 * through the one-step dynamics: a copy step moves one component from size
 * k to k+1; a fresh step adds a singleton.
 */
class IncrementalForest
{
  public:
    IncrementalForest();

    /// Add vertex size()+1 with parent u, eps and eta flags.
    void add_vertex(std::uint32_t parent, bool eps, bool eta);
    /// Add vertex size()+1 drawn from params.
    void grow(WalkParams const& params, Rng& rng);

    std::size_t size() const { return root_of_.size() - 1; }
    std::map<std::uint32_t, std::uint64_t> const& nu() const { return nu_; }
    std::uint32_t root_of(std::size_t k) const { return root_of_[k]; }
    std::int64_t weight(std::size_t k) const { return weights_[k]; }
    std::uint32_t component_size(std::size_t k) const { return sizes_[k]; }

  private:
    std::vector<std::uint32_t> root_of_;
    std::vector<std::int8_t> sign_;
    std::vector<std::int64_t> weights_;
    std::vector<std::uint32_t> sizes_;
    std::map<std::uint32_t, std::uint64_t> nu_;
};

struct ConditionalWeightSample
{
    std::vector<std::uint32_t> profile;           //!< sizes of roots in label order
    std::vector<std::vector<std::int64_t>> draws;  //!< draws[s][j]: weight of j-th root
    std::size_t attempts = 0;
};

/*!
 * Root weights conditioned by rejection on the component size profile.
 *
 * The profile is either the full vector (N_1(n), ..., N_n(n)) when it has
 * length n, or the sizes of the components listed in increasing root label.
 * Requires n <= 12. Throws RejectionExhausted after attempt_budget tapes.
 */
ConditionalWeightSample conditional_weight_law(WalkParams const& params,
                                               std::size_t n,
                                               std::vector<std::uint32_t> const& profile,
                                               std::size_t samples,
                                               Rng& rng,
                                               std::size_t attempt_budget = 100'000'000);

/// Monte Carlo E[Z_l(n)] / b_l(n) over a grid of n.
std::vector<double> z_rate_check(WalkParams const& params,
                                 double l,
                                 std::vector<std::size_t> const& n_grid,
                                 std::size_t replicates,
                                 std::uint64_t seed,
                                 unsigned threads = 0);

}  // namespace srw

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srw/rng.hpp"

namespace srw {

/// Reinforcement probability p, positive-reinforcement probability r and the
/// stability index alpha of the step law.
struct WalkParams
{
    double p = 0.5;
    double r = 0.5;
    double alpha = 2.0;

    /// Throws DomainError unless 0 <= p,r <= 1 and 0 < alpha <= 2.
    void validate() const;
};

enum class Regime
{
    subcritical,
    critical,
    supercritical,
};

std::string to_string(Regime regime);

struct DerivedParams
{
    double a = 0.0;      //!< (2r - 1) p
    double gamma = 0.0;  //!< 4r - 2
    std::optional<double> mu_coeff;  //!< (1 - r) / (1 - a), absent when a == 1
    double mu = 0.0;
    double sigma_sq = 0.0;
    Regime regime = Regime::subcritical;

    /// sigma^2 = E xi^2 - mu^2 for another step law.
    double sigma_sq_for(double step_mean, double step_second_moment) const;
};

/// Regime constants for the given step mean and second moment.
/// With require_mean set, a == 1 throws DomainError (mu undefined).
DerivedParams derive_params(WalkParams const& params,
                            double step_mean,
                            double step_second_moment,
                            bool require_mean = true);

/// Regime label and the matching normalization for finite-variance steps:
/// sqrt(n), sqrt(n log n) or n^a.
struct RegimeScaling
{
    Regime regime = Regime::subcritical;
    double a = 0.0;

    double scale(double n) const;
    std::string describe() const;
};

RegimeScaling classify_regime(WalkParams const& params);

/*!
 * The sequences (U_k, eps_k, eta_k), k = 2..n, shared by the walk, the
 * elephant random walk and the percolation construction.
 *
 * Storage is 1-based; slots 0 and 1 are unused.
 */
class RandomnessTape
{
  public:
    RandomnessTape() = default;

    /// Draws U_k, eps_k, eta_k in that order for k = 2..n.
    static RandomnessTape draw(WalkParams const& params, std::size_t n, Rng& rng);

    /// Build from explicit 1-based vectors (entries 0 and 1 ignored).
    static RandomnessTape from_vectors(std::vector<std::uint32_t> parent,
                                       std::vector<std::uint8_t> eps,
                                       std::vector<std::uint8_t> eta);

    std::size_t size() const { return size_; }
    std::uint32_t parent(std::size_t k) const { return u_[k]; }
    bool eps(std::size_t k) const { return eps_[k] != 0; }
    bool eta(std::size_t k) const { return eta_[k] != 0; }

    /// Append vertex size()+1 drawn from params.
    void extend(WalkParams const& params, Rng& rng);

  private:
    std::size_t size_ = 0;
    std::vector<std::uint32_t> u_;
    std::vector<std::uint8_t> eps_;
    std::vector<std::uint8_t> eta_;
};

/// Laws of the i.i.d. steps xi_k.
struct StepSource
{
    enum class Family
    {
        rademacher,
        gaussian,
        stable,            //!< symmetric alpha-stable, cf exp(-|t|^alpha)
        symmetric_pareto,  //!< density alpha / (2 |x|^(alpha+1)) on |x| >= 1
        point_mass,
    };

    Family family = Family::rademacher;
    double alpha = 2.0;  //!< stable and symmetric_pareto
    double value = 1.0;  //!< point_mass

    static StepSource rademacher() { return {Family::rademacher}; }
    static StepSource gaussian() { return {Family::gaussian}; }
    static StepSource stable(double alpha) { return {Family::stable, alpha}; }
    static StepSource symmetric_pareto(double alpha) { return {Family::symmetric_pareto, alpha}; }
    static StepSource point_mass(double value) { return {Family::point_mass, 2.0, value}; }

    void validate() const;
    double draw(Rng& rng) const;
    std::vector<double> draw_n(std::size_t n, Rng& rng) const;

    std::optional<double> mean() const;
    std::optional<double> second_moment() const;
    bool symmetric() const;
    std::string name() const;
};

StepSource::Family parse_step_family(std::string const& name);

struct ErwPath
{
    std::vector<int> steps;           //!< X_k^0, 0-based: steps[k-1]
    std::vector<std::int64_t> sums;   //!< T_k^0, 0-based: sums[k-1]

    std::size_t size() const { return steps.size(); }
    std::int64_t total() const { return sums.back(); }
};

struct WalkPath
{
    std::vector<double> steps;        //!< X_k
    std::vector<double> sums;         //!< T_k (compensated prefix sums)
    std::vector<double> step_values;  //!< xi_1..xi_n

    std::size_t size() const { return steps.size(); }
    double total() const { return sums.back(); }
};

/// Elephant random walk from the U and eta sequences. Throws DomainError if n
/// is zero or exceeds the tape.
ErwPath simulate_erw(std::size_t n, RandomnessTape const& tape);

/// Unbalanced step-reinforced walk from a tape and the step values xi.
WalkPath simulate_unbalanced_walk(std::size_t n,
                                  RandomnessTape const& tape,
                                  std::span<double const> xi);

/// Same, drawing xi_1..xi_n from source with step_rng.
WalkPath simulate_unbalanced_walk(std::size_t n,
                                  RandomnessTape const& tape,
                                  StepSource const& source,
                                  Rng& step_rng);

/// Index j(k) of the fresh step copied into X_k and the accumulated sign.
struct StepOrigin
{
    std::size_t root = 1;
    int sign = 1;
};

StepOrigin trace_origin(RandomnessTape const& tape, std::size_t k);

/// Final value T_n^0 only, without storing the path.
std::int64_t erw_endpoint(std::size_t n, double r, Rng& rng);

}  // namespace srw

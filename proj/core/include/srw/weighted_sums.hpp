#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srw/rng.hpp"
#include "srw/walk.hpp"

namespace srw {

/// Law of Y in self-normalized weights W_nk = sqrt(n) Y_k / sum_i Y_i.
enum class YLaw
{
    exponential,
    uniform,
    slowly_varying,  //!< P(Y > x) = 1 / log x for x >= e
};

struct WeightScheme
{
    enum class Family
    {
        ones,
        efron_multinomial,
        bayesian_gaps,
        self_normalized,
        percolation,
        spike,
        log_window,
        slow_varying_self_normalized,
    };

    Family family = Family::ones;
    YLaw y_law = YLaw::exponential;  //!< self_normalized
    double p = 0.5;                  //!< percolation
    double r = 0.5;                  //!< percolation
    bool scale_by_n = false;         //!< multiply every weight by n (bayesian gaps)

    void validate() const;
    std::string name() const;
};

WeightScheme::Family parse_weight_family(std::string const& name);

/// Log-window length m(n) = ceil(log n), at least 1.
std::size_t log_window_length(std::size_t n);

/// (W_n1, ..., W_nn) for one realization.
std::vector<double> gen_weights(WeightScheme const& scheme, std::size_t n, Rng& rng);

/// sum_k W_nk xi_k (compensated). Throws DomainError on length mismatch.
double weighted_sum(std::span<double const> weights, std::span<double const> steps);

struct ConditionsAtN
{
    std::size_t n = 0;
    std::vector<double> a1;         //!< n^-1 sum W^2
    std::vector<double> a2;         //!< max |W| / sqrt(n)
    std::vector<double> alpha_sum;  //!< n^-1 sum |W|^alpha
    std::vector<double> a4_profile; //!< c -> n^-1 sum E W^2 1{|W| > c}
    std::vector<double> a6_profile; //!< c -> n^-1 sum E |W|^beta 1{|W| > c}
};

struct DiagnosticsReport
{
    std::string scheme;
    double alpha = 2.0;
    double beta = 2.0;
    std::vector<double> c_grid;
    std::vector<ConditionsAtN> per_n;

    bool a1_concentrates = false;
    bool a2_vanishes = false;
    bool a4_tail_uniform = false;
    bool a6_tail_uniform = false;
};

struct ConditionsOptions
{
    double alpha = 2.0;
    double beta = 2.0;
    std::size_t replicates = 200;
    std::vector<double> c_grid{1.0, 2.0, 4.0, 8.0, 16.0};
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

/// Monte Carlo fingerprints of the weight conditions across n_grid.
DiagnosticsReport check_conditions(WeightScheme const& scheme,
                                   std::vector<std::size_t> const& n_grid,
                                   ConditionsOptions const& options);

/// Limit law against which normalized sums are compared.
struct LimitSpec
{
    enum class Kind
    {
        normal,      //!< N(0, scale^2)
        stable,      //!< scale * S_alpha
        mixture,     //!< W^(1/alpha) S_alpha, W from fresh weights at the same n
        step_law,    //!< law of xi_1 itself
    };

    Kind kind = Kind::normal;
    double scale = 1.0;
    double alpha = 2.0;

    std::string describe() const;
};

struct CltOptions
{
    std::size_t n = 1000;
    std::size_t replicates = 1000;
    double normalizer = 1.0;  //!< a_n; sums are divided by it
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

struct CltResult
{
    std::vector<double> sample;  //!< normalized sums, replicate order
    std::string limit;
    double ks = 0.0;             //!< against the limit (one- or two-sample)
    bool two_sample = false;
    double normal_ks = 0.0;      //!< against N(0, 1) regardless of limit
};

CltResult clt_experiment(WeightScheme const& scheme,
                         StepSource const& steps,
                         LimitSpec const& limit,
                         CltOptions const& options);

}  // namespace srw

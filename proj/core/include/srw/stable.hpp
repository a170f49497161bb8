#pragma once

#include <cstddef>
#include <vector>

#include "srw/rng.hpp"

namespace srw {

/*!
 * Symmetric alpha-stable law with characteristic function exp(-|t|^alpha).
 *
 * alpha = 2 is N(0, 2) and alpha = 1 is the standard Cauchy law.
 */
struct StableLaw
{
    double alpha = 2.0;

    double sample(Rng& rng) const;
    double cdf(double x) const;
    double quantile(double q) const;
};

/// Chambers-Mallows-Stuck draw.
double sample_stable(double alpha, Rng& rng);

/// CDF by Gil-Pelaez inversion with adaptive Gauss-Kronrod panels.
/// Absolute accuracy is about 1e-12 for alpha >= 0.5.
double cdf_stable(double alpha, double x);

/// Inverse of cdf_stable to 1e-8 in probability. Throws DomainError for
/// q outside (0, 1).
double quantile_stable(double alpha, double q);

/*!
 * Tabulated cdf_stable for bulk evaluation (KS statistics on 10^6 points).
 *
 * The CDF is sampled on a uniform grid in theta = atan(x) and linearly
 * interpolated; beyond the outermost interior nodes the exact CDF is used.
 */
class StableCdfTable
{
  public:
    explicit StableCdfTable(double alpha, std::size_t nodes = 8001);

    double operator()(double x) const;
    double alpha() const { return alpha_; }

  private:
    double alpha_;
    double step_;
    std::vector<double> values_;
};

enum class NormalizerRule
{
    exact_stable,  //!< n^(1/alpha)
    n_log_n,       //!< sqrt(n log n)
};

/// n -> a_n for the given rule.
struct NormalizingSequence
{
    NormalizerRule rule = NormalizerRule::exact_stable;
    double alpha = 2.0;

    double operator()(double n) const;
};

double normalizer(NormalizerRule rule, double alpha, double n);

}  // namespace srw

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace srw {

/// Sorted copy of a sample.
class EmpiricalSample
{
  public:
    explicit EmpiricalSample(std::vector<double> values);

    std::span<double const> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    /// Fraction of the sample <= x.
    double ecdf(double x) const;

  private:
    std::vector<double> values_;
};

/// sup_x |F_M(x) - F(x)| over the 2M one-sided candidates.
double ks_to_cdf(EmpiricalSample const& sample, std::function<double(double)> const& cdf);

double two_sample_ks(EmpiricalSample const& a, EmpiricalSample const& b);

struct MeanSe
{
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mc_mean_se(std::span<double const> sample);

/// Pearson statistic of integer observations against a finite law. Every
/// expected count must be at least 5.
double chi_square_support(std::span<std::int64_t const> sample,
                          std::span<std::int64_t const> support,
                          std::span<double const> probs);

struct ChiSquare
{
    double statistic = 0.0;
    int dof = 0;
};

/// Two-sample homogeneity test over the union of observed values.
ChiSquare chi_square_homogeneity(std::span<std::int64_t const> a,
                                 std::span<std::int64_t const> b);

double chi_square_quantile(int dof, double q);

double normal_cdf(double x);

/// Every value lies in [lo, hi].
bool is_bounded(std::span<double const> values, double lo, double hi);

/// |d_{j+1}| < |d_j| for the successive differences d_j of the sequence.
bool differences_shrink(std::span<double const> sequence);

/// Least-squares slope of y against x.
double trend_slope(std::span<double const> x, std::span<double const> y);

}  // namespace srw

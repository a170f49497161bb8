#pragma once

#include <cmath>
#include <span>

namespace srw {

/// Neumaier-compensated running sum.
class CompensatedSum
{
  public:
    void add(double x)
    {
        double const t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x)
    {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<double const> values)
{
    CompensatedSum acc;
    for (double v : values)
        acc.add(v);
    return acc.value();
}

}  // namespace srw

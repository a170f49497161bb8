#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace srw::acceptance {

struct Options
{
    std::uint64_t seed = 20240611;
    unsigned threads = 0;
};

struct Result
{
    int id = 0;
    std::string name;
    bool passed = false;
    double statistic = 0.0;   //!< worst observed value of the checked quantity
    double threshold = 0.0;
    double seconds = 0.0;
    double runtime_limit = 0.0;
    std::string detail;
};

struct Criterion
{
    int id;
    std::string name;
    double runtime_limit;  //!< seconds
    std::function<Result(Options const&)> check;
};

/// The twelve acceptance criteria, ordered by id.
std::vector<Criterion> const& criteria();

/// Run one criterion; the runtime limit is part of the verdict.
Result run(Criterion const& criterion, Options const& options);

/// c(1, 1/2, 1/2) frozen from an independent exact evaluation of the series
/// (binomial law of T_k^0 at r = 1/2); equals pi/2 - 1.
inline constexpr double frozen_c_1_half_half = 0.5707963267948966;

}  // namespace srw::acceptance

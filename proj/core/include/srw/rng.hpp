#pragma once

#include <cstdint>
#include <limits>

namespace srw {

/// Sub-stream tags used when deriving per-replicate generators.
enum class StreamTag : std::uint64_t
{
    tape = 1,
    steps = 2,
    weights = 3,
    aux = 4,
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic seed for (master seed, replicate index, sub-stream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, StreamTag tag);

/*!
 * xoshiro256** generator.
 *
 * Satisfies UniformRandomBitGenerator. The convenience draws below are
 * implemented here rather than through <random> distributions so that a
 * fixed seed yields identical streams on every standard library.
 */
class Rng
{
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0x5eed);
    Rng(std::uint64_t master, std::uint64_t index, StreamTag tag)
        : Rng(derive_seed(master, index, tag))
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on the open interval (0, 1).
    double uniform_open();
    /// Uniform integer on {lo, ..., hi}.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
    bool bernoulli(double prob);
    double exponential();
    double normal();
    /// +1 or -1 with equal probability.
    int rademacher();

  private:
    std::uint64_t s_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace srw

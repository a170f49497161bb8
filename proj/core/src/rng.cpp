#include "srw/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace srw {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, StreamTag tag)
{
    std::uint64_t state = master;
    std::uint64_t h = splitmix64(state);
    state = h ^ (index * 0xd1342543de82ef95ULL);
    h = splitmix64(state);
    state = h ^ (static_cast<std::uint64_t>(tag) * 0xa0761d6478bd642fULL);
    return splitmix64(state);
}

Rng::Rng(std::uint64_t seed)
{
    std::uint64_t state = seed;
    for (auto& word : s_)
        word = splitmix64(state);
}

Rng::result_type Rng::operator()()
{
    std::uint64_t const result = std::rotl(s_[1] * 5, 7) * 9;
    std::uint64_t const t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Rng::uniform()
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open()
{
    return (static_cast<double>((*this)() >> 12) + 0.5) * 0x1.0p-52;
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi)
{
    std::uint64_t const range = hi - lo + 1;
    if (range == 0)
        return (*this)();
    // Lemire's nearly-divisionless bounded draw
    __extension__ using u128 = unsigned __int128;
    u128 m = static_cast<u128>((*this)()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range)
    {
        std::uint64_t const threshold = -range % range;
        while (low < threshold)
        {
            m = static_cast<u128>((*this)()) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return lo + static_cast<std::uint64_t>(m >> 64);
}

bool Rng::bernoulli(double prob)
{
    return uniform() < prob;
}

double Rng::exponential()
{
    return -std::log(uniform_open());
}

double Rng::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    double const radius = std::sqrt(-2.0 * std::log(uniform_open()));
    double const angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

int Rng::rademacher()
{
    return ((*this)() >> 63) ? 1 : -1;
}

}  // namespace srw

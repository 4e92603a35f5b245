#pragma once

#include <cstdint>

namespace aokr {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based stream keyed by (seed, trajectory, kick). Two streams with
/// the same key produce the same numbers regardless of evaluation order.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t trajectory, std::uint64_t kick) noexcept
        : key_(splitmix64(splitmix64(splitmix64(seed) ^ trajectory) ^ (kick * 0xd1b54a32d192ed03ULL))) {}

    std::uint64_t next() noexcept { return splitmix64(key_ + 0x632be59bd9b4e019ULL * ++counter_); }

    /// Uniform in the open interval (0, 1).
    double uniform() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace aokr

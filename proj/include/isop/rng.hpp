#pragma once

#include <cstdint>
#include <random>

#include "isop/common.hpp"

namespace isop {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seeded random stream.  Draws go through our own uint64 -> double
/// conversion so identical (seed, stream) pairs give bit-identical samples
/// on every platform; std distributions are never used.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed ^ (0xA3EC647659359ACDull * (stream + 1));
        // decorrelate nearby (seed, stream) pairs before seeding the engine
        splitmix64(s);
        eng_.seed(splitmix64(s));
    }

    std::uint64_t bits() { return eng_(); }

    /// Uniform on the open interval (0, 1).
    double uniform01() { return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform on (lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool coin() { return (bits() & 1ull) != 0; }

private:
    std::mt19937_64 eng_;
};

inline constexpr int kDefaultStreams = 16;

}  // namespace isop

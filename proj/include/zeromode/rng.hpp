// Counter-based pseudo-random generator (SplitMix64 finalizer).
//
// Contract (also documented in docs/config-format.md): every random draw is a
// pure function of (seed, stream, index), so scenario outputs are
// reproducible from the single 64-bit config seed regardless of draw order.
//
//   mix(z)                 = SplitMix64 finalizer of z
//   draw(seed, stream, i)  = mix(mix(seed + GAMMA*stream) + GAMMA*(i+1))
//   uniform01              = draw >> 11, scaled by 2^-53  in [0,1)

#pragma once

#include <cstdint>

namespace zm::rng {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) {
    return mix(mix(seed + kGamma * stream) + kGamma * (index + 1));
}

inline constexpr double uniform01(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t index) {
    return static_cast<double>(draw(seed, stream, index) >> 11) * 0x1.0p-53;
}

inline constexpr double uniform(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t index, double lo, double hi) {
    return lo + (hi - lo) * uniform01(seed, stream, index);
}

} // namespace zm::rng

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace rissim {

// splitmix64 finalizer. Decorrelates (seed, stream) pairs into engine seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(seed, a), b);
}

// Counter-based chunk stream: the draws for chunk c of a run seeded with s
// depend only on (s, c), never on which worker executes the chunk or in
// what order. Distributions are generated in-house (fixed uniform mapping,
// Box-Muller normals) so the stream is reproducible across toolchains.
class ChunkRng {
public:
    ChunkRng(std::uint64_t seed, std::uint64_t chunk) : engine_(mix_seed(seed, chunk)) {}

    // [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] keeps the log finite
        double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Samples per chunk in every Monte Carlo loop. Fixed: changing it changes
// the sample stream.
inline constexpr std::uint64_t chunk_samples = 1u << 14;

} // namespace rissim

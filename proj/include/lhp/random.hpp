#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

namespace lhp {

inline constexpr std::uint64_t default_seed = 42;

/// splitmix64 finalizer, used to derive independent sub-seeds.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seeded generator with a platform-independent uniform mapping.
class Rng {
public:
    explicit Rng(std::uint64_t seed = default_seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    /// Deterministic child stream.
    Rng split(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 1))); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t next() { return engine_(); }
    int pick(int n) { return static_cast<int>(uniform() * n); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// LHP_SEED overrides the supplied seed when set to an integer.
inline std::uint64_t resolve_seed(std::uint64_t fallback) {
    if (const char* env = std::getenv("LHP_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
        }
    }
    return fallback;
}

}  // namespace lhp

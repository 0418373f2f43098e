#pragma once

#include <cstdint>
#include <random>

namespace mergemix {

/// Seeded generator with a bit-exact integer draw. std::uniform_int_distribution
/// is implementation-defined, so draws are done by rejection sampling here.
class Rng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [lo, hi], inclusive.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span + 1) % span;
        std::uint64_t draw = next();
        while (draw > limit) draw = next();
        return lo + static_cast<std::int64_t>(draw % span);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace mergemix

#pragma once

#include <cstdint>
#include <string_view>

namespace semirandom {

/// xoshiro256** seeded through SplitMix64.
///
/// Streams are derived from (master seed, stream index), so every replicate
/// of a Monte Carlo experiment owns an independent, reproducible sequence
/// regardless of which worker runs it. Integer sampling uses Lemire's
/// multiply-shift rejection so results do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    static constexpr std::string_view kName = "xoshiro256ss-splitmix64";
    static constexpr int kVersion = 1;

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    /// Child generator for a sub-stream; the parent is left untouched.
    [[nodiscard]] Rng split(std::uint64_t stream) const noexcept;

    std::uint64_t next() noexcept;

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Uniform double in [0, 1).
    double uniform() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

private:
    std::uint64_t s_[4];
    std::uint64_t seed_;
    std::uint64_t stream_;
};

}  // namespace semirandom

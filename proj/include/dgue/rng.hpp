#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace dgue {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
/// Maps a 128-bit counter and a 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Identifies one independent random stream: the master seed is the Philox key,
/// the stream index occupies the high half of the counter.
struct RngSeed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    /// A child stream, e.g. one per (trial, matrix role). Deterministic in (this, index).
    RngSeed substream(std::uint64_t index) const noexcept;

    friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Counter-based engine over one RngSeed. Satisfies UniformRandomBitGenerator.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(RngSeed seed) noexcept;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;
    /// Standard normal by Box-Muller; platform-independent unlike std::normal_distribution.
    double normal() noexcept;

    /// Skip `blocks` Philox blocks (4 words each).
    void discard_blocks(std::uint64_t blocks) noexcept;

private:
    std::uint32_t next_word() noexcept;

    RngSeed seed_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finaliser, used for deriving child streams and hashing.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace dgue

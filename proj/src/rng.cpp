#include "dgue/rng.hpp"

#include <cmath>
#include <numbers>

namespace dgue {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMulA, ctr[0], hi0, lo0);
        mulhilo(kMulB, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

RngSeed RngSeed::substream(std::uint64_t index) const noexcept {
    return RngSeed{master, splitmix64(stream ^ splitmix64(index + 0x632BE59BD9B4E019ull))};
}

Stream::Stream(RngSeed seed) noexcept : seed_(seed) {}

void Stream::discard_blocks(std::uint64_t blocks) noexcept {
    block_ += blocks;
    used_ = 4;
}

std::uint32_t Stream::next_word() noexcept {
    if (used_ == 4) {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
            static_cast<std::uint32_t>(seed_.stream), static_cast<std::uint32_t>(seed_.stream >> 32)};
        const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_.master),
                                                  static_cast<std::uint32_t>(seed_.master >> 32)};
        buffer_ = philox4x32(ctr, key);
        ++block_;
        used_ = 0;
    }
    return buffer_[used_++];
}

Stream::result_type Stream::operator()() noexcept {
    const std::uint64_t hi = next_word();
    const std::uint64_t lo = next_word();
    return (hi << 32) | lo;
}

double Stream::uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

}  // namespace dgue

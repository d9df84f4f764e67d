#pragma once

// Counter-based random draws. Every draw is a pure function of
// (seed, stream, index, slot), so any subset of an ensemble or pulse train can
// be regenerated independently and in any order.

#include <array>
#include <cstdint>

namespace homsim {

/// Stream identifiers; distinct streams never share a counter.
enum class Stream : std::uint32_t {
    spdc_detuning = 1,
    spdc_birth_phase = 2,
    pulse_photon_count = 3,
    photon_routing = 4,
    pair_split = 5,
    bunch_side = 6,
};

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Two independent 64-bit words for counter (stream, index, slot).
    std::array<std::uint64_t, 2> bits(Stream stream, std::uint64_t index,
                                      std::uint32_t slot = 0) const noexcept;

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform(Stream stream, std::uint64_t index, std::uint32_t slot = 0) const noexcept;

    /// Standard normal via Box-Muller on one counter block.
    double normal(Stream stream, std::uint64_t index, std::uint32_t slot = 0) const noexcept;

private:
    std::uint64_t seed_;
};

/// Map 64 random bits to [0, 1).
inline double to_unit_interval(std::uint64_t x) noexcept {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace homsim

#include "homsim/counter_rng.hpp"

#include <cmath>
#include <numbers>

namespace homsim {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

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
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

std::array<std::uint64_t, 2> CounterRng::bits(Stream stream, std::uint64_t index,
                                              std::uint32_t slot) const noexcept {
    const std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>(index >> 32),
        static_cast<std::uint32_t>(stream),
        slot,
    };
    const std::array<std::uint32_t, 2> key{
        static_cast<std::uint32_t>(seed_),
        static_cast<std::uint32_t>(seed_ >> 32),
    };
    const auto r = philox4x32(ctr, key);
    return {(static_cast<std::uint64_t>(r[1]) << 32) | r[0],
            (static_cast<std::uint64_t>(r[3]) << 32) | r[2]};
}

double CounterRng::uniform(Stream stream, std::uint64_t index, std::uint32_t slot) const noexcept {
    return to_unit_interval(bits(stream, index, slot)[0]);
}

double CounterRng::normal(Stream stream, std::uint64_t index, std::uint32_t slot) const noexcept {
    const auto b = bits(stream, index, slot);
    // 1 - u lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - to_unit_interval(b[0]);
    const double u2 = to_unit_interval(b[1]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace homsim

// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace blindphase {

/// Reproducible random source.
///
/// Bits come from std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The conversions below are spelled out instead of using
/// std::*_distribution, whose algorithms vary between standard libraries:
///
///  - uniform01: top 53 bits of one draw times 2^-53, in [0, 1).
///  - index(n): rejection of draws below (2^64 - n) mod n, then modulo n.
///  - gaussian_pair: Box-Muller on (1 - u1, u2), two draws per pair.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t index(std::uint64_t n);

    /// Two independent standard normal variates.
    std::pair<double, double> gaussian_pair();

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t value) noexcept
{
    return mix64(seed ^ mix64(value));
}

} // namespace blindphase

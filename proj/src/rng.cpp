// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/rng.hpp"

#include "blindphase/constellation.hpp"

#include <cmath>

namespace blindphase {

std::uint64_t Rng::index(std::uint64_t n)
{
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t x = next();
        if (x >= threshold)
            return x % n;
    }
}

std::pair<double, double> Rng::gaussian_pair()
{
    const double u1 = 1.0 - uniform01(); // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace blindphase

// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/channel.hpp"

#include "blindphase/error.hpp"
#include "blindphase/rng.hpp"

#include <cmath>

namespace blindphase {

SnrSpec SnrSpec::from_db(double value_db)
{
    SnrSpec s{value_db};
    (void)s.linear();
    return s;
}

double SnrSpec::linear() const
{
    const double lin = std::pow(10.0, db / 10.0);
    if (!std::isfinite(lin) || lin <= 0.0)
        fail(ErrorKind::InvalidParameter, "SNR " + std::to_string(db) + " dB is not a usable ratio");
    return lin;
}

double noise_sigma(const SnrSpec& snr)
{
    return std::sqrt(1.0 / (2.0 * snr.linear()));
}

double noise_sigma(const NoiseLevel& snr)
{
    return snr ? noise_sigma(*snr) : 0.0;
}

SampleBlock transmit_block(const Constellation& c, int n, double theta0, const NoiseLevel& snr,
                           std::uint64_t seed)
{
    if (n < 1)
        fail(ErrorKind::InvalidParameter, "block length must be >= 1");
    if (!std::isfinite(theta0))
        fail(ErrorKind::InvalidParameter, "carrier phase must be finite");

    SampleBlock block;
    block.true_phase = wrap_phase(theta0, c.period());
    block.snr = snr;
    block.seed = seed;
    block.constellation_label = c.label();

    const double sigma = noise_sigma(snr);
    const Complex rot = std::polar(1.0, block.true_phase);
    const auto points = c.points();

    Rng rng(seed);
    block.samples.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Complex s = points[rng.index(points.size())];
        const auto [gr, gi] = rng.gaussian_pair();
        Complex r = s * rot;
        if (sigma > 0.0)
            r += Complex(sigma * gr, sigma * gi);
        block.samples.push_back(r);
    }
    return block;
}

} // namespace blindphase

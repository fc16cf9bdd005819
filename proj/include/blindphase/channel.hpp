// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include "blindphase/constellation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blindphase {

/// Average SNR, E|s|^2 / E|eta|^2. Held in dB; linear only for arithmetic.
struct SnrSpec {
    double db = 0.0;

    static SnrSpec from_db(double value_db);
    double linear() const;
};

/// Noise setting of a block: an SNR, or std::nullopt for a noiseless channel.
using NoiseLevel = std::optional<SnrSpec>;
inline constexpr NoiseLevel kNoiseless = std::nullopt;

struct SampleBlock {
    std::vector<Complex> samples;
    double true_phase = 0.0; // [0, 2*pi/M)
    NoiseLevel snr;
    std::uint64_t seed = 0;
    std::string constellation_label;
};

/// Per-dimension noise std sqrt(1 / (2 SNR)); zero when noiseless.
double noise_sigma(const SnrSpec& snr);
double noise_sigma(const NoiseLevel& snr);

/// r_k = s_k e^{j theta0} + eta_k with s_k drawn uniformly from c.
///
/// Draw order per sample: symbol index, then one Gaussian pair (re, im). The
/// pair is drawn even when noiseless so symbol sequences match across SNRs.
SampleBlock transmit_block(const Constellation& c, int n, double theta0, const NoiseLevel& snr,
                           std::uint64_t seed);

} // namespace blindphase

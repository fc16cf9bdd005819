// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include "blindphase/constellation.hpp"
#include "blindphase/estimate.hpp"

#include <span>
#include <vector>

namespace blindphase {

// Power-law (M-th power) estimator.

/// Constellation average of conj(s)^M.
Complex ple_constant(const Constellation& c);

/// arg(ple_constant * sum r_k^M) / M, wrapped into [0, 2*pi/M).
PhaseEstimate ple_estimate(const Constellation& c, std::span<const Complex> samples);

// Minimum-distance estimator: hard-decision distance scan over hypothesis
// rotations, then a decision-directed residual correction at the winner.

struct MdeConfig {
    int hypothesis_count = 10;
    int symmetry_order = 4;

    /// -pi/M + i * 2*pi/(M n), i = 0 .. n-1.
    std::vector<double> hypotheses() const;
};

PhaseEstimate mde_estimate(const Constellation& c, std::span<const Complex> samples,
                           const MdeConfig& cfg);

} // namespace blindphase

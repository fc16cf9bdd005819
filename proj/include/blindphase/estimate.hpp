// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include <optional>
#include <string_view>

namespace blindphase {

enum class EstimatorTag { Pmm, Ple, Mde };

constexpr std::string_view to_string(EstimatorTag tag) noexcept
{
    switch (tag) {
    case EstimatorTag::Pmm: return "pmm";
    case EstimatorTag::Ple: return "ple";
    case EstimatorTag::Mde: return "mde";
    }
    return "?";
}

/// Carrier phase estimate, canonical in [0, 2*pi/M).
struct PhaseEstimate {
    double theta_hat = 0.0;
    EstimatorTag estimator = EstimatorTag::Pmm;
    std::optional<double> metric_value;
};

} // namespace blindphase

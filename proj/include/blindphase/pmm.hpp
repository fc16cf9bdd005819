// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include "blindphase/constellation.hpp"
#include "blindphase/estimate.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace blindphase {

/// Uniform phase grid start + p * spacing, p = 0 .. count-1.
struct PhaseGrid {
    double start = 0.0;
    double spacing = 0.0;
    int count = 0;

    double phase(int p) const noexcept { return start + p * spacing; }
    std::vector<double> phases() const;
};

/// Multi-stage search layout: `stages` rounds of `phases_per_stage` phases.
struct PmmPlan {
    int stages = 2;
    int phases_per_stage = 10;
    int symmetry_order = 4;

    void validate() const;

    /// Spacing of the last stage, 2^(stages-1) * (2*pi/M) / n^stages.
    double final_resolution() const;
};

/// Sum over samples of the squared distance from r_k e^{-j theta} to its
/// nearest constellation point.
double phase_metric(const Constellation& c, std::span<const Complex> samples, double theta);

/// Stage 1: n phases p * 2*pi/(M n) on [0, 2*pi/M).
/// Later stages: n + 1 phases spanning [center - width/2, center + width/2],
/// spacing width / n. Callers pass width = 2 * previous spacing.
PhaseGrid stage_grid(double center, double width, int n, int symmetry_order, bool first_stage);

/// Metric at every grid phase, each phase reduced modulo 2*pi/M first.
/// Phases are spread over OpenMP threads when the block is large enough;
/// every value is computed by one thread with a fixed summation order, so the
/// result does not depend on the thread count.
std::vector<double> evaluate_metric_grid(const Constellation& c, std::span<const Complex> samples,
                                         const PhaseGrid& grid);

/// Index of the smallest value; the lowest index wins ties.
std::size_t argmin_first(std::span<const double> values);

PhaseEstimate pmm_estimate(const Constellation& c, std::span<const Complex> samples,
                           const PmmPlan& plan);

std::vector<Complex> rotate_block(std::span<const Complex> samples, double phi);

namespace detail {

void require_samples(std::span<const Complex> samples, const char* who);

// Metric without argument checks; theta is used as given.
double phase_metric_unchecked(const Constellation& c, std::span<const Complex> samples,
                              double theta) noexcept;

} // namespace detail

} // namespace blindphase

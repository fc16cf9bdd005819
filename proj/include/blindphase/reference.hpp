// SPDX-License-Identifier: GPL-3.0-or-later

// Single-threaded versions of the parallel kernels. Tests compare them with
// the OpenMP paths; bench_kernels times both.

#pragma once

#include "blindphase/harness.hpp"
#include "blindphase/pmm.hpp"

#include <span>
#include <vector>

namespace blindphase::reference {

std::vector<double> evaluate_metric_grid(const Constellation& c, std::span<const Complex> samples,
                                         const PhaseGrid& grid);

TrialStats run_trials(const Scenario& s, std::size_t snr_index, const Estimator& estimator);

} // namespace blindphase::reference

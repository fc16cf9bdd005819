// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include "blindphase/channel.hpp"

#include <vector>

namespace blindphase {

/// Scenario for grid sizing and cost; lambda is ignored by the stage search.
struct PlanQuery {
    int symmetry_order = 4; // M
    int constellation_size = 4; // L
    int block_length = 32; // N
    SnrSpec snr;
    int stages = 1; // lambda
};

struct CostBreakdown {
    int stages = 0;
    int n0 = 0;
    double cost = 0.0;
};

/// Std of the noiseless grid estimate for uniform theta0: delta / (2 sqrt 3)
/// with delta the final-stage spacing 2^(lambda-1) (2*pi/M) / n^lambda.
double quantization_stddev(int symmetry_order, int n, int stages);

/// MCRB approximation 1 / (2 N SNR), in rad^2.
double mcrb(int block_length, const SnrSpec& snr);

/// (2^(lambda-1) pi/M sqrt(2 N SNR / 3))^(1/lambda) before rounding up.
double phase_count_bound(int symmetry_order, int block_length, const SnrSpec& snr, int stages);

/// Smallest phase count whose quantization std stays within sqrt(MCRB);
/// never below 2.
int optimal_phase_count(int symmetry_order, int block_length, const SnrSpec& snr, int stages);

/// Abstract operation count lambda (n0 L (10 N + 44) + 416 n0 + 6).
double cost(int stages, int n0, int constellation_size, int block_length);

/// Cost curve over lambda = 1 .. lambda_max.
std::vector<CostBreakdown> cost_curve(const PlanQuery& q, int lambda_max = 8);

/// Cheapest lambda in 1 .. lambda_max; ties go to the smaller lambda.
CostBreakdown optimal_stage_count(const PlanQuery& q, int lambda_max = 8);

} // namespace blindphase

// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/planning.hpp"

#include "blindphase/constellation.hpp"
#include "blindphase/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blindphase {

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        fail(ErrorKind::InvalidParameter, what);
}

} // namespace

double quantization_stddev(int symmetry_order, int n, int stages)
{
    require(symmetry_order >= 2, "quantization_stddev: M must be >= 2");
    require(n >= 2, "quantization_stddev: n must be >= 2");
    require(stages >= 1, "quantization_stddev: lambda must be >= 1");
    const double resolution = std::pow(2.0, stages - 1) * ambiguity_period(symmetry_order) /
                              std::pow(static_cast<double>(n), stages);
    return resolution / (2.0 * std::sqrt(3.0));
}

double mcrb(int block_length, const SnrSpec& snr)
{
    require(block_length >= 1, "mcrb: N must be >= 1");
    return 1.0 / (2.0 * block_length * snr.linear());
}

double phase_count_bound(int symmetry_order, int block_length, const SnrSpec& snr, int stages)
{
    require(symmetry_order >= 2, "phase count: M must be >= 2");
    require(block_length >= 1, "phase count: N must be >= 1");
    require(stages >= 1, "phase count: lambda must be >= 1");
    const double base = std::pow(2.0, stages - 1) * std::numbers::pi / symmetry_order *
                        std::sqrt(2.0 * block_length * snr.linear() / 3.0);
    return std::pow(base, 1.0 / stages);
}

int optimal_phase_count(int symmetry_order, int block_length, const SnrSpec& snr, int stages)
{
    const double bound = phase_count_bound(symmetry_order, block_length, snr, stages);
    return std::max(2, static_cast<int>(std::ceil(bound)));
}

double cost(int stages, int n0, int constellation_size, int block_length)
{
    require(stages >= 1 && n0 >= 1 && constellation_size >= 1 && block_length >= 1,
            "cost: all arguments must be >= 1");
    const double n = n0;
    const double per_stage =
        n * constellation_size * (10.0 * block_length + 44.0) + 416.0 * n + 6.0;
    return stages * per_stage;
}

std::vector<CostBreakdown> cost_curve(const PlanQuery& q, int lambda_max)
{
    require(lambda_max >= 1, "cost curve: lambda_max must be >= 1");
    std::vector<CostBreakdown> curve;
    curve.reserve(static_cast<std::size_t>(lambda_max));
    for (int lambda = 1; lambda <= lambda_max; ++lambda) {
        const int n0 = optimal_phase_count(q.symmetry_order, q.block_length, q.snr, lambda);
        curve.push_back({lambda, n0, cost(lambda, n0, q.constellation_size, q.block_length)});
    }
    return curve;
}

CostBreakdown optimal_stage_count(const PlanQuery& q, int lambda_max)
{
    const auto curve = cost_curve(q, lambda_max);
    auto best = curve.front();
    for (const auto& row : curve)
        if (row.cost < best.cost)
            best = row;
    return best;
}

} // namespace blindphase

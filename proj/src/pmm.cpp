// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/pmm.hpp"

#include "blindphase/error.hpp"

#include <cmath>
#include <string>

namespace blindphase {

namespace {

// Below this many point-distance evaluations a parallel region costs more
// than it saves.
constexpr std::size_t kParallelWork = 1u << 16;

} // namespace

namespace detail {

void require_samples(std::span<const Complex> samples, const char* who)
{
    if (samples.empty())
        fail(ErrorKind::InvalidInput, std::string(who) + ": empty sample block");
    for (auto z : samples)
        if (!is_finite(z))
            fail(ErrorKind::InvalidInput, std::string(who) + ": sample is not finite");
}

double phase_metric_unchecked(const Constellation& c, std::span<const Complex> samples,
                              double theta) noexcept
{
    const Complex derotate = std::polar(1.0, -theta);
    double sum = 0.0;
    for (auto r : samples)
        sum += c.nearest_sq_dist(r * derotate);
    return sum;
}

} // namespace detail

std::vector<double> PhaseGrid::phases() const
{
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int p = 0; p < count; ++p)
        out[static_cast<std::size_t>(p)] = phase(p);
    return out;
}

void PmmPlan::validate() const
{
    if (stages < 1)
        fail(ErrorKind::InvalidParameter, "PMM plan needs at least one stage");
    if (phases_per_stage < 2)
        fail(ErrorKind::InvalidParameter, "PMM plan needs at least 2 phases per stage");
    if (symmetry_order < 2)
        fail(ErrorKind::InvalidParameter, "PMM plan symmetry order must be >= 2");
}

double PmmPlan::final_resolution() const
{
    return std::pow(2.0, stages - 1) * ambiguity_period(symmetry_order) /
           std::pow(static_cast<double>(phases_per_stage), stages);
}

double phase_metric(const Constellation& c, std::span<const Complex> samples, double theta)
{
    detail::require_samples(samples, "phase_metric");
    if (!std::isfinite(theta))
        fail(ErrorKind::InvalidInput, "phase_metric: theta is not finite");
    return detail::phase_metric_unchecked(c, samples, theta);
}

PhaseGrid stage_grid(double center, double width, int n, int symmetry_order, bool first_stage)
{
    if (n < 2)
        fail(ErrorKind::InvalidParameter, "stage grid needs n >= 2");
    if (symmetry_order < 2)
        fail(ErrorKind::InvalidParameter, "stage grid needs M >= 2");
    if (first_stage)
        return {0.0, ambiguity_period(symmetry_order) / n, n};
    if (!(width > 0.0) || !std::isfinite(center))
        fail(ErrorKind::InvalidParameter, "refinement grid needs a finite center and width > 0");
    return {center - 0.5 * width, width / n, n + 1};
}

std::vector<double> evaluate_metric_grid(const Constellation& c, std::span<const Complex> samples,
                                         const PhaseGrid& grid)
{
    const double period = c.period();
    const int count = grid.count;
    std::vector<double> values(static_cast<std::size_t>(count));
    const std::size_t work = static_cast<std::size_t>(count) * samples.size() * c.size();

#pragma omp parallel for schedule(static) if (work >= kParallelWork)
    for (int p = 0; p < count; ++p)
        values[static_cast<std::size_t>(p)] =
            detail::phase_metric_unchecked(c, samples, wrap_phase(grid.phase(p), period));

    return values;
}

std::size_t argmin_first(std::span<const double> values)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[best])
            best = i;
    return best;
}

PhaseEstimate pmm_estimate(const Constellation& c, std::span<const Complex> samples,
                           const PmmPlan& plan)
{
    plan.validate();
    if (plan.symmetry_order != c.symmetry_order())
        fail(ErrorKind::InvalidParameter, "PMM plan symmetry order does not match constellation");
    detail::require_samples(samples, "pmm_estimate");

    const int n = plan.phases_per_stage;
    PhaseGrid grid = stage_grid(0.0, 0.0, n, plan.symmetry_order, true);
    auto values = evaluate_metric_grid(c, samples, grid);
    std::size_t best = argmin_first(values);
    double winner = grid.phase(static_cast<int>(best));

    for (int stage = 1; stage < plan.stages; ++stage) {
        grid = stage_grid(winner, 2.0 * grid.spacing, n, plan.symmetry_order, false);
        values = evaluate_metric_grid(c, samples, grid);
        best = argmin_first(values);
        winner = grid.phase(static_cast<int>(best));
    }

    return {wrap_phase(winner, c.period()), EstimatorTag::Pmm, values[best]};
}

std::vector<Complex> rotate_block(std::span<const Complex> samples, double phi)
{
    const Complex rot = std::polar(1.0, phi);
    std::vector<Complex> out;
    out.reserve(samples.size());
    for (auto z : samples)
        out.push_back(z * rot);
    return out;
}

} // namespace blindphase

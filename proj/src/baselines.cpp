// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/baselines.hpp"

#include "blindphase/error.hpp"
#include "blindphase/pmm.hpp"

#include <cmath>
#include <numbers>

namespace blindphase {

namespace {

constexpr double kDegenerate = 1e-12;

Complex int_pow(Complex z, int m)
{
    Complex result(1.0, 0.0);
    Complex base = z;
    for (unsigned e = static_cast<unsigned>(m); e != 0; e >>= 1) {
        if (e & 1u)
            result *= base;
        base *= base;
    }
    return result;
}

} // namespace

Complex ple_constant(const Constellation& c)
{
    Complex sum(0.0, 0.0);
    for (auto p : c.points())
        sum += int_pow(std::conj(p), c.symmetry_order());
    return sum / static_cast<double>(c.size());
}

PhaseEstimate ple_estimate(const Constellation& c, std::span<const Complex> samples)
{
    detail::require_samples(samples, "ple_estimate");
    const Complex weight = ple_constant(c);
    if (std::abs(weight) <= kDegenerate)
        fail(ErrorKind::EstimatorUndefined,
             "power-law estimator undefined for '" + c.label() + "': E[conj(s)^M] = 0");

    const int m = c.symmetry_order();
    Complex sum(0.0, 0.0);
    for (auto r : samples)
        sum += int_pow(r, m);
    if (std::abs(sum) < kDegenerate)
        fail(ErrorKind::DegenerateStatistic, "power-law estimator: sum of r^M vanishes");

    const double theta = std::arg(weight * sum) / m;
    return {wrap_phase(theta, c.period()), EstimatorTag::Ple, std::nullopt};
}

std::vector<double> MdeConfig::hypotheses() const
{
    if (hypothesis_count < 2)
        fail(ErrorKind::InvalidParameter, "MDE needs at least 2 hypotheses");
    if (symmetry_order < 2)
        fail(ErrorKind::InvalidParameter, "MDE symmetry order must be >= 2");
    const double step = ambiguity_period(symmetry_order) / hypothesis_count;
    const double first = -std::numbers::pi / symmetry_order;
    std::vector<double> out(static_cast<std::size_t>(hypothesis_count));
    for (int i = 0; i < hypothesis_count; ++i)
        out[static_cast<std::size_t>(i)] = first + i * step;
    return out;
}

PhaseEstimate mde_estimate(const Constellation& c, std::span<const Complex> samples,
                           const MdeConfig& cfg)
{
    if (cfg.symmetry_order != c.symmetry_order())
        fail(ErrorKind::InvalidParameter, "MDE symmetry order does not match constellation");
    const auto hyps = cfg.hypotheses();
    detail::require_samples(samples, "mde_estimate");

    // D_i is the phase metric evaluated at hypothesis i.
    const PhaseGrid grid{hyps.front(), hyps[1] - hyps[0], cfg.hypothesis_count};
    const auto distances = evaluate_metric_grid(c, samples, grid);
    const std::size_t l = argmin_first(distances);
    const double coarse = grid.phase(static_cast<int>(l));

    const Complex derotate = std::polar(1.0, -coarse);
    double im_sum = 0.0;
    double re_sum = 0.0;
    for (auto r : samples) {
        const Complex x = r * derotate;
        const Complex corr = x * std::conj(c.nearest(x).point);
        im_sum += corr.imag();
        re_sum += corr.real();
    }
    if (std::abs(im_sum) < kDegenerate && std::abs(re_sum) < kDegenerate)
        fail(ErrorKind::DegenerateStatistic, "MDE residual correlation vanishes");

    const double residual = std::atan2(im_sum, re_sum);
    return {wrap_phase(coarse + residual, c.period()), EstimatorTag::Mde, distances[l]};
}

} // namespace blindphase

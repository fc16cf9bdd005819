// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/reference.hpp"

#include "blindphase/error.hpp"

namespace blindphase::reference {

std::vector<double> evaluate_metric_grid(const Constellation& c, std::span<const Complex> samples,
                                         const PhaseGrid& grid)
{
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(grid.count));
    for (int p = 0; p < grid.count; ++p)
        values.push_back(
            detail::phase_metric_unchecked(c, samples, wrap_phase(grid.phase(p), c.period())));
    return values;
}

TrialStats run_trials(const Scenario& s, std::size_t snr_index, const Estimator& estimator)
{
    s.validate();
    if (snr_index >= s.snr_grid_db.size())
        fail(ErrorKind::InvalidParameter, "SNR index out of range");
    const Constellation c = constellation_by_name(s.constellation);

    std::vector<std::optional<double>> errors;
    errors.reserve(static_cast<std::size_t>(s.trials));
    for (int t = 0; t < s.trials; ++t)
        errors.push_back(detail::one_trial(s, c, estimator, snr_index, static_cast<std::size_t>(t)));
    return detail::finish_trials(summarize(errors), s, snr_index);
}

} // namespace blindphase::reference

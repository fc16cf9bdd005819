// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/harness.hpp"

#include "blindphase/csv.hpp"
#include "blindphase/error.hpp"
#include "blindphase/planning.hpp"
#include "blindphase/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <numbers>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blindphase {

namespace {

constexpr std::uint64_t kThetaStream = 0x7468657461ULL;
constexpr double kMaxFailureRate = 0.01;

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

int parse_int(std::string_view text, std::string_view what)
{
    text = trim(text);
    int value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        fail(ErrorKind::InvalidParameter,
             "bad integer '" + std::string(text) + "' for " + std::string(what));
    return value;
}

} // namespace

namespace detail {

TrialStats finish_trials(TrialStats stats, const Scenario& s, std::size_t snr_index)
{
    const double snr_db = s.snr_grid_db[snr_index];
    stats.snr_db = snr_db;
    stats.mcrb_sqrt = std::sqrt(mcrb(s.block_length, SnrSpec::from_db(snr_db)));
    if (stats.failed_trials > kMaxFailureRate * stats.trials)
        fail(ErrorKind::DegenerateStatistic,
             std::to_string(stats.failed_trials) + " of " + std::to_string(stats.trials) +
                 " trials failed at " + format_number(snr_db) + " dB");
    return stats;
}

std::optional<double> one_trial(const Scenario& s, const Constellation& c,
                                const Estimator& estimator, std::size_t snr_index,
                                std::size_t trial)
{
    const SampleBlock block = draw_trial(s, c, snr_index, trial);
    try {
        const PhaseEstimate est = estimator(c, block);
        return wrapped_error(est.theta_hat, block.true_phase, c.symmetry_order());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegenerateStatistic)
            return std::nullopt;
        throw;
    }
}

} // namespace detail

EstimatorSpec EstimatorSpec::parse(std::string_view text)
{
    text = trim(text);
    const auto open = text.find('(');
    const std::string_view head = trim(text.substr(0, open));

    EstimatorSpec spec;
    if (head == "pmm")
        spec.kind = EstimatorTag::Pmm;
    else if (head == "ple")
        spec.kind = EstimatorTag::Ple;
    else if (head == "mde")
        spec.kind = EstimatorTag::Mde;
    else
        fail(ErrorKind::InvalidParameter, "unknown estimator '" + std::string(head) + "'");

    if (open == std::string_view::npos)
        return spec;
    if (text.back() != ')')
        fail(ErrorKind::InvalidParameter, "unterminated parameter list in '" + std::string(text) + "'");

    std::string_view args = text.substr(open + 1, text.size() - open - 2);
    while (!trim(args).empty()) {
        const auto comma = args.find(',');
        const std::string_view item = trim(args.substr(0, comma));
        args = comma == std::string_view::npos ? std::string_view{} : args.substr(comma + 1);

        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorKind::InvalidParameter, "expected key=value, got '" + std::string(item) + "'");
        const std::string_view key = trim(item.substr(0, eq));
        const int value = parse_int(item.substr(eq + 1), key);

        if (spec.kind == EstimatorTag::Pmm && (key == "stages" || key == "lambda"))
            spec.stages = value;
        else if (spec.kind == EstimatorTag::Pmm && (key == "phases" || key == "n"))
            spec.phases = value;
        else if (spec.kind == EstimatorTag::Mde && (key == "hypotheses" || key == "n"))
            spec.hypotheses = value;
        else
            fail(ErrorKind::InvalidParameter, "unknown parameter '" + std::string(key) +
                                                  "' for estimator " + std::string(head));
    }
    return spec;
}

std::string EstimatorSpec::name() const
{
    return std::string(to_string(kind));
}

int EstimatorSpec::lambda_column() const
{
    switch (kind) {
    case EstimatorTag::Pmm: return stages;
    case EstimatorTag::Mde: return 1;
    case EstimatorTag::Ple: return 0;
    }
    return 0;
}

int EstimatorSpec::n0_column() const
{
    switch (kind) {
    case EstimatorTag::Pmm: return phases;
    case EstimatorTag::Mde: return hypotheses;
    case EstimatorTag::Ple: return 0;
    }
    return 0;
}

PhaseEstimate EstimatorSpec::run(const Constellation& c, std::span<const Complex> samples) const
{
    switch (kind) {
    case EstimatorTag::Pmm:
        return pmm_estimate(c, samples, PmmPlan{stages, phases, c.symmetry_order()});
    case EstimatorTag::Ple:
        return ple_estimate(c, samples);
    case EstimatorTag::Mde:
        return mde_estimate(c, samples, MdeConfig{hypotheses, c.symmetry_order()});
    }
    fail(ErrorKind::InvalidParameter, "unknown estimator");
}

Estimator make_estimator(const EstimatorSpec& spec)
{
    return [spec](const Constellation& c, const SampleBlock& block) {
        return spec.run(c, block.samples);
    };
}

void Scenario::validate() const
{
    (void)constellation_by_name(constellation);
    if (block_length < 1)
        fail(ErrorKind::InvalidParameter, "scenario: N must be >= 1");
    if (trials < 1)
        fail(ErrorKind::InvalidParameter, "scenario: trials must be >= 1");
    if (snr_grid_db.empty())
        fail(ErrorKind::InvalidParameter, "scenario: SNR grid is empty");
    for (double db : snr_grid_db)
        (void)SnrSpec::from_db(db);
    if (!theta0.uniform && !std::isfinite(theta0.fixed_rad))
        fail(ErrorKind::InvalidParameter, "scenario: fixed theta0 is not finite");
}

const TrialStats& SweepReport::row(std::string_view estimator, double snr_db) const
{
    for (const auto& r : rows)
        if (r.estimator == estimator && r.snr_db == snr_db)
            return r;
    fail(ErrorKind::InvalidInput,
         "no sweep row for " + std::string(estimator) + " at " + format_number(snr_db) + " dB");
}

double wrapped_error(double theta_hat, double theta0, int symmetry_order)
{
    const double period = ambiguity_period(symmetry_order);
    return wrap_phase(theta_hat - theta0 + 0.5 * period, period) - 0.5 * period;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t snr_index, std::size_t trial)
{
    return combine_seed(combine_seed(master_seed, snr_index), trial);
}

SampleBlock draw_trial(const Scenario& s, const Constellation& c, std::size_t snr_index,
                       std::size_t trial)
{
    const std::uint64_t seed = trial_seed(s.master_seed, snr_index, trial);
    double theta0 = s.theta0.fixed_rad;
    if (s.theta0.uniform) {
        Rng theta_rng(combine_seed(seed, kThetaStream));
        theta0 = theta_rng.uniform01() * c.period();
    }
    return transmit_block(c, s.block_length, theta0, SnrSpec::from_db(s.snr_grid_db[snr_index]),
                          seed);
}

TrialStats summarize(std::span<const std::optional<double>> errors)
{
    TrialStats stats;
    stats.trials = static_cast<int>(errors.size());

    double sum = 0.0;
    int ok = 0;
    for (const auto& e : errors) {
        if (e) {
            sum += *e;
            ++ok;
        }
    }
    stats.failed_trials = stats.trials - ok;
    if (ok == 0)
        return stats;

    const double mean = sum / ok;
    double m2 = 0.0;
    double m4 = 0.0;
    for (const auto& e : errors) {
        if (e) {
            const double d = *e - mean;
            m2 += d * d;
            m4 += d * d * d * d;
        }
    }
    m2 /= ok;
    m4 /= ok;

    stats.bias = mean;
    stats.std_dev = std::sqrt(m2);
    if (m2 > 0.0)
        stats.std_error = std::sqrt(std::max(m4 - m2 * m2, 0.0) / (4.0 * m2 * ok));
    return stats;
}

TrialStats run_trials(const Scenario& s, std::size_t snr_index, const Estimator& estimator,
                      int threads)
{
    s.validate();
    if (snr_index >= s.snr_grid_db.size())
        fail(ErrorKind::InvalidParameter, "SNR index out of range");
    const Constellation c = constellation_by_name(s.constellation);

    const auto trials = static_cast<std::ptrdiff_t>(s.trials);
    std::vector<std::optional<double>> errors(static_cast<std::size_t>(trials));
    std::exception_ptr first_error;

#ifdef _OPENMP
    const int team = threads > 0 ? threads : omp_get_max_threads();
#else
    [[maybe_unused]] const int team = threads;
#endif

#pragma omp parallel for schedule(static) num_threads(team)
    for (std::ptrdiff_t t = 0; t < trials; ++t) {
        try {
            errors[static_cast<std::size_t>(t)] =
                detail::one_trial(s, c, estimator, snr_index, static_cast<std::size_t>(t));
        } catch (...) {
#pragma omp critical(blindphase_trial_error)
            if (!first_error)
                first_error = std::current_exception();
        }
    }
    if (first_error)
        std::rethrow_exception(first_error);

    return detail::finish_trials(summarize(errors), s, snr_index);
}

TrialStats run_trials(const Scenario& s, std::size_t snr_index, const EstimatorSpec& spec,
                      int threads)
{
    TrialStats stats = run_trials(s, snr_index, make_estimator(spec), threads);
    stats.estimator = spec.name();
    stats.lambda = spec.lambda_column();
    stats.n0 = spec.n0_column();
    return stats;
}

SweepReport sweep(const Scenario& s, int threads)
{
    s.validate();
    if (s.estimators.empty())
        fail(ErrorKind::InvalidParameter, "scenario: no estimators");
    SweepReport report{s, {}};
    for (const auto& spec : s.estimators)
        for (std::size_t i = 0; i < s.snr_grid_db.size(); ++i)
            report.rows.push_back(run_trials(s, i, spec, threads));
    return report;
}

void write_sweep_csv(std::ostream& os, const SweepReport& report)
{
    const Constellation c = constellation_by_name(report.scenario.constellation);
    os << kSweepCsvHeader << '\n';
    for (const auto& r : report.rows) {
        os << c.label() << ',' << r.estimator << ',' << c.symmetry_order() << ',' << c.size()
           << ',' << report.scenario.block_length << ',' << r.lambda << ',' << r.n0 << ','
           << format_number(r.snr_db) << ',' << r.trials << ',' << r.failed_trials << ','
           << format_number(r.bias) << ',' << format_number(r.std_dev) << ','
           << format_number(r.mcrb_sqrt) << '\n';
    }
}

bool std_less_significant(const TrialStats& a, const TrialStats& b, double k)
{
    const double combined = std::hypot(a.std_error, b.std_error);
    return a.std_dev + k * combined < b.std_dev;
}

} // namespace blindphase

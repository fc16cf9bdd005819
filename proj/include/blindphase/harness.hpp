// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include "blindphase/baselines.hpp"
#include "blindphase/channel.hpp"
#include "blindphase/constellation.hpp"
#include "blindphase/estimate.hpp"
#include "blindphase/pmm.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blindphase {

/// An estimator with its parameters, as named on the command line and in
/// config files: `pmm(stages=2,phases=10)`, `ple`, `mde(hypotheses=10)`.
struct EstimatorSpec {
    EstimatorTag kind = EstimatorTag::Pmm;
    int stages = 2;
    int phases = 10;
    int hypotheses = 10;

    static EstimatorSpec parse(std::string_view text);
    std::string name() const;

    /// Values for the sweep CSV `lambda` and `n0` columns.
    int lambda_column() const;
    int n0_column() const;

    PhaseEstimate run(const Constellation& c, std::span<const Complex> samples) const;
};

/// Called once per trial; the block carries the true phase and its seed, so
/// synthetic estimators used in self-tests can be expressed too.
using Estimator = std::function<PhaseEstimate(const Constellation&, const SampleBlock&)>;

Estimator make_estimator(const EstimatorSpec& spec);

struct Theta0Mode {
    bool uniform = true;
    double fixed_rad = 0.0;

    static Theta0Mode per_trial_uniform() { return {true, 0.0}; }
    static Theta0Mode fixed(double rad) { return {false, rad}; }
};

struct Scenario {
    std::string constellation = "qpsk";
    int block_length = 32;
    std::vector<EstimatorSpec> estimators;
    std::vector<double> snr_grid_db;
    int trials = 2000;
    std::uint64_t master_seed = 1;
    Theta0Mode theta0;

    void validate() const;
};

struct TrialStats {
    std::string estimator;
    double snr_db = 0.0;
    int trials = 0;
    int failed_trials = 0;
    double std_dev = 0.0;   // population std about the mean, rad
    double bias = 0.0;      // mean wrapped error, rad
    double mcrb_sqrt = 0.0; // rad
    double std_error = 0.0; // standard error of std_dev (delta method)
    int lambda = 0;
    int n0 = 0;
};

struct SweepReport {
    Scenario scenario;
    std::vector<TrialStats> rows;

    const TrialStats& row(std::string_view estimator, double snr_db) const;
};

/// (theta_hat - theta0) reduced into [-pi/M, pi/M).
double wrapped_error(double theta_hat, double theta0, int symmetry_order);

/// Block seed for (snr index, trial). All estimators share it, so within one
/// SNR point every estimator sees the same received blocks.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t snr_index, std::size_t trial);

/// Received block for one trial: theta0 from its own stream, then
/// transmit_block seeded with trial_seed.
SampleBlock draw_trial(const Scenario& s, const Constellation& c, std::size_t snr_index,
                       std::size_t trial);

/// Statistics over per-trial errors; disengaged entries count as failures.
/// Reduction runs in trial order.
TrialStats summarize(std::span<const std::optional<double>> errors);

/// Monte Carlo trials at one SNR point, spread over OpenMP threads.
/// `threads` = 0 keeps the OpenMP default. Results are bit-identical for
/// every thread count. Throws DegenerateStatistic when more than 1% of the
/// trials fail.
TrialStats run_trials(const Scenario& s, std::size_t snr_index, const EstimatorSpec& spec,
                      int threads = 0);
TrialStats run_trials(const Scenario& s, std::size_t snr_index, const Estimator& estimator,
                      int threads = 0);

SweepReport sweep(const Scenario& s, int threads = 0);

inline constexpr std::string_view kSweepCsvHeader =
    "constellation,estimator,M,L,N,lambda,n0,snr_db,trials,failed_trials,bias_rad,std_dev_rad,"
    "mcrb_sqrt_rad";

void write_sweep_csv(std::ostream& os, const SweepReport& report);

/// Significance rule for comparing two std estimates: a is smaller than b by
/// more than `k` combined standard errors.
bool std_less_significant(const TrialStats& a, const TrialStats& b, double k = 2.0);

namespace detail {

// Error of one trial, or nullopt when the estimator hit a degenerate
// statistic.
std::optional<double> one_trial(const Scenario& s, const Constellation& c,
                                const Estimator& estimator, std::size_t snr_index,
                                std::size_t trial);

// Fills snr/mcrb and enforces the failure-rate limit.
TrialStats finish_trials(TrialStats stats, const Scenario& s, std::size_t snr_index);

} // namespace detail

} // namespace blindphase

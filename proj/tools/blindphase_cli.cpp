// SPDX-License-Identifier: GPL-3.0-or-later

// blindphase: command-line front end for the estimators, planners and
// Monte Carlo presets.

#include "blindphase/channel.hpp"
#include "blindphase/config.hpp"
#include "blindphase/csv.hpp"
#include "blindphase/error.hpp"
#include "blindphase/harness.hpp"
#include "blindphase/planning.hpp"
#include "blindphase/presets.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace blindphase;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;

std::vector<Complex> read_samples(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::InvalidParameter, "cannot open samples file '" + path + "'");
    std::vector<Complex> samples;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        double re = 0.0;
        double im = 0.0;
        if (!(fields >> re))
            continue;
        if (!(fields >> im))
            fail(ErrorKind::InvalidInput, "samples file: expected 're im' per line");
        samples.emplace_back(re, im);
    }
    return samples;
}

NoiseLevel noise_option(bool noiseless, double snr_db)
{
    if (noiseless)
        return kNoiseless;
    return SnrSpec::from_db(snr_db);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Blind carrier phase estimation for rotationally symmetric constellations"};
    app.require_subcommand(1);

    // estimate
    std::string constellation = "qpsk";
    std::string estimator = "pmm(stages=2,phases=10)";
    int block_length = 32;
    double snr_db = 20.0;
    bool noiseless = false;
    double theta_deg = 30.0;
    std::uint64_t seed = 1;
    std::string samples_path;

    auto* estimate = app.add_subcommand("estimate", "estimate the phase of one block");
    estimate->add_option("-c,--constellation", constellation, "qpsk 8psk 16psk v29 qam16 qam64");
    estimate->add_option("-e,--estimator", estimator, "pmm(stages=,phases=) | ple | mde(hypotheses=)");
    estimate->add_option("-N,--length", block_length, "block length")->check(CLI::PositiveNumber);
    estimate->add_option("--snr-db", snr_db, "SNR in dB");
    estimate->add_flag("--noiseless", noiseless, "no channel noise");
    estimate->add_option("--theta-deg", theta_deg, "true carrier phase in degrees");
    estimate->add_option("--seed", seed, "block seed");
    estimate->add_option("--samples", samples_path, "read 're im' lines instead of simulating");

    // metric
    int metric_phases = 0;
    auto* metric = app.add_subcommand("metric", "dump the phase metric over a grid as CSV");
    metric->add_option("-c,--constellation", constellation);
    metric->add_option("-N,--length", block_length)->check(CLI::PositiveNumber);
    metric->add_option("--snr-db", snr_db);
    metric->add_flag("--noiseless", noiseless);
    metric->add_option("--theta-deg", theta_deg);
    metric->add_option("--seed", seed);
    metric->add_option("--phases", metric_phases, "grid size (default: MCRB-sized)");
    metric->add_option("--samples", samples_path);

    // plan
    int lambda_max = 8;
    auto* plan = app.add_subcommand("plan", "phase counts, costs and the cheapest stage count");
    plan->add_option("-c,--constellation", constellation);
    plan->add_option("-N,--length", block_length)->check(CLI::PositiveNumber);
    plan->add_option("--snr-db", snr_db);
    plan->add_option("--lambda-max", lambda_max)->check(CLI::PositiveNumber);

    // cost
    std::vector<int> cost_lengths = {32};
    std::vector<double> cost_snrs = {10, 15, 20, 25};
    auto* cost_cmd = app.add_subcommand("cost", "cost against stage count as CSV");
    cost_cmd->add_option("-c,--constellation", constellation);
    cost_cmd->add_option("-N,--length", cost_lengths)->delimiter(',');
    cost_cmd->add_option("--snr-db", cost_snrs)->delimiter(',');
    cost_cmd->add_option("--lambda-max", lambda_max)->check(CLI::PositiveNumber);

    // sweep
    std::string config_path;
    std::string out_path;
    int threads = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep from a config file");
    sweep_cmd->add_option("--config", config_path, "scenario file")->required();
    sweep_cmd->add_option("--out", out_path, "CSV file (default: stdout)");
    sweep_cmd->add_option("--threads", threads, "OpenMP threads (0: default)");

    // fig
    std::string fig_id;
    int trials = 2000;
    std::string out_dir = ".";
    auto* fig = app.add_subcommand("fig", "write one figure's data as CSV");
    fig->add_option("--id", fig_id, "fig1, fig3 .. fig12")->required();
    fig->add_option("--seed", seed);
    fig->add_option("--trials", trials)->check(CLI::PositiveNumber);
    fig->add_option("--out", out_dir, "output directory");
    fig->add_option("--threads", threads);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*estimate) {
            const Constellation c = constellation_by_name(constellation);
            const EstimatorSpec spec = EstimatorSpec::parse(estimator);
            SampleBlock block;
            if (!samples_path.empty())
                block.samples = read_samples(samples_path);
            else
                block = transmit_block(c, block_length, theta_deg * kDeg,
                                       noise_option(noiseless, snr_db), seed);
            const PhaseEstimate est = spec.run(c, block.samples);
            std::cout << "estimator " << to_string(est.estimator) << '\n'
                      << "theta_hat_rad " << format_number(est.theta_hat) << '\n'
                      << "theta_hat_deg " << format_number(est.theta_hat / kDeg) << '\n';
            if (est.metric_value)
                std::cout << "metric " << format_number(*est.metric_value) << '\n';
            if (samples_path.empty())
                std::cout << "theta0_deg " << format_number(block.true_phase / kDeg) << '\n'
                          << "error_deg "
                          << format_number(wrapped_error(est.theta_hat, block.true_phase,
                                                         c.symmetry_order()) / kDeg)
                          << '\n';
        } else if (*metric) {
            const Constellation c = constellation_by_name(constellation);
            std::vector<Complex> samples;
            if (!samples_path.empty())
                samples = read_samples(samples_path);
            else
                samples = transmit_block(c, block_length, theta_deg * kDeg,
                                         noise_option(noiseless, snr_db), seed)
                              .samples;
            int n = metric_phases;
            if (n == 0)
                n = optimal_phase_count(c.symmetry_order(), static_cast<int>(samples.size()),
                                        SnrSpec::from_db(snr_db), 1);
            const PhaseGrid grid = stage_grid(0.0, 0.0, n, c.symmetry_order(), true);
            (void)phase_metric(c, samples, 0.0); // validates the block
            const MetricCurve curve{c.label(), grid, evaluate_metric_grid(c, samples, grid)};
            write_metric_csv(std::cout, std::span(&curve, 1));
        } else if (*plan) {
            const Constellation c = constellation_by_name(constellation);
            const SnrSpec snr = SnrSpec::from_db(snr_db);
            const PlanQuery q{c.symmetry_order(), static_cast<int>(c.size()), block_length, snr, 1};
            const auto best = optimal_stage_count(q, lambda_max);
            std::cout << "constellation " << c.label() << " M=" << c.symmetry_order()
                      << " L=" << c.size() << " N=" << block_length
                      << " snr_db=" << format_number(snr_db) << '\n'
                      << "mcrb_rad2 " << format_number(mcrb(block_length, snr)) << '\n'
                      << "lambda  n0  quant_std_rad  cost\n";
            for (const auto& row : cost_curve(q, lambda_max))
                std::cout << row.stages << ' ' << row.n0 << ' '
                          << format_number(quantization_stddev(c.symmetry_order(), row.n0, row.stages))
                          << ' ' << format_number(row.cost)
                          << (row.stages == best.stages ? "  <- optimal" : "") << '\n';
            std::cout << "lambda_opt " << best.stages << " n0 " << best.n0 << " cost "
                      << format_number(best.cost) << '\n';
        } else if (*cost_cmd) {
            const Constellation c = constellation_by_name(constellation);
            for (int n : cost_lengths)
                if (n < 1)
                    fail(ErrorKind::InvalidParameter, "N must be >= 1");
            write_cost_csv(std::cout, cost_table(c, cost_lengths, cost_snrs, lambda_max));
        } else if (*sweep_cmd) {
            const Scenario s = load_scenario(config_path);
            const SweepReport report = sweep(s, threads);
            if (out_path.empty()) {
                write_sweep_csv(std::cout, report);
            } else {
                if (const auto dir = std::filesystem::path(out_path).parent_path(); !dir.empty())
                    std::filesystem::create_directories(dir);
                std::ofstream out(out_path, std::ios::binary);
                if (!out)
                    fail(ErrorKind::InvalidParameter, "cannot write '" + out_path + "'");
                write_sweep_csv(out, report);
            }
        } else if (*fig) {
            std::cout << run_preset(fig_id, seed, trials, out_dir, threads).string() << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool degenerate = e.kind() == ErrorKind::DegenerateStatistic ||
                                e.kind() == ErrorKind::EstimatorUndefined;
        return degenerate ? kExitDegenerate : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

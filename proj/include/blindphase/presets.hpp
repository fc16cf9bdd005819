// SPDX-License-Identifier: GPL-3.0-or-later

#pragma once

#include "blindphase/harness.hpp"
#include "blindphase/pmm.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blindphase {

/// fig1, fig3 .. fig12.
std::vector<std::string> preset_ids();
bool is_preset(std::string_view id);

// --- fig1: metric against trial phase -------------------------------------

struct MetricCurve {
    std::string constellation;
    PhaseGrid grid;
    std::vector<double> metric;
};

/// Metric of one noisy block (theta0, snr, N) over the single-stage grid
/// sized by optimal_phase_count.
MetricCurve metric_curve(const Constellation& c, int block_length, double theta0,
                         const SnrSpec& snr, std::uint64_t seed);

inline constexpr std::string_view kMetricCsvHeader = "constellation,theta_deg,metric";
void write_metric_csv(std::ostream& os, std::span<const MetricCurve> curves);

// --- fig3..fig6: cost against stage count ---------------------------------

struct CostRow {
    std::string constellation;
    int block_length = 0;
    double snr_db = 0.0;
    int stages = 0;
    int n0 = 0;
    double cost = 0.0;
    bool is_optimal = false;
};

std::vector<CostRow> cost_table(const Constellation& c, std::span<const int> block_lengths,
                                std::span<const double> snr_db, int lambda_max = 8);

inline constexpr std::string_view kCostCsvHeader = "constellation,N,snr_db,lambda,n0,cost,is_optimal";
void write_cost_csv(std::ostream& os, std::span<const CostRow> rows);

// --- fig7/fig8: phase count against SNR -----------------------------------

struct PhaseCountRow {
    std::string constellation;
    int block_length = 0;
    double snr_db = 0.0;
    int stages = 0;
    double n0_real = 0.0;
    int n0 = 0;
};

std::vector<PhaseCountRow> phase_count_table(const Constellation& c,
                                             std::span<const int> block_lengths,
                                             std::span<const double> snr_db, int stages);

inline constexpr std::string_view kPhaseCountCsvHeader = "constellation,N,snr_db,lambda,n0_real,n0";
void write_phase_count_csv(std::ostream& os, std::span<const PhaseCountRow> rows);

// --- fig9..fig12: estimator sweeps ----------------------------------------

/// Sweep scenario of fig9 .. fig12 with the given seed and trial count.
Scenario sweep_preset(std::string_view id, std::uint64_t master_seed, int trials);

/// Writes `<out_dir>/<id>.csv` and returns its path.
std::filesystem::path run_preset(std::string_view id, std::uint64_t master_seed, int trials,
                                 const std::filesystem::path& out_dir, int threads = 0);

/// Same content as run_preset, to a stream.
void write_preset(std::ostream& os, std::string_view id, std::uint64_t master_seed, int trials,
                  int threads = 0);

} // namespace blindphase

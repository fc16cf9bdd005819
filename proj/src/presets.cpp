// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/presets.hpp"

#include "blindphase/csv.hpp"
#include "blindphase/error.hpp"
#include "blindphase/planning.hpp"
#include "blindphase/rng.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <ostream>

namespace blindphase {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct CostPreset {
    std::string_view id;
    std::string_view constellation;
    int nominal_n;
};

// Block lengths are multiples of the constellation size plus the length the
// sweep figures use.
constexpr CostPreset kCostPresets[] = {
    {"fig3", "qpsk", 32},
    {"fig4", "v29", 64},
    {"fig5", "8psk", 40},
    {"fig6", "16psk", 64},
};

struct SweepPreset {
    std::string_view id;
    std::string_view constellation;
    int block_length;
};

constexpr SweepPreset kSweepPresets[] = {
    {"fig9", "qpsk", 32},
    {"fig10", "v29", 64},
    {"fig11", "8psk", 40},
    {"fig12", "16psk", 64},
};

std::vector<double> db_range(double start, double stop, double step)
{
    std::vector<double> out;
    for (double v = start; v <= stop + 1e-9; v += step)
        out.push_back(v);
    return out;
}

const std::vector<int> kPhaseCountLengths = {8, 16, 24, 32, 40};

} // namespace

std::vector<std::string> preset_ids()
{
    return {"fig1", "fig3", "fig4", "fig5", "fig6", "fig7",
            "fig8", "fig9", "fig10", "fig11", "fig12"};
}

bool is_preset(std::string_view id)
{
    const auto ids = preset_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

MetricCurve metric_curve(const Constellation& c, int block_length, double theta0,
                         const SnrSpec& snr, std::uint64_t seed)
{
    const int n0 = optimal_phase_count(c.symmetry_order(), block_length, snr, 1);
    const PhaseGrid grid = stage_grid(0.0, 0.0, n0, c.symmetry_order(), true);
    const SampleBlock block = transmit_block(c, block_length, theta0, snr, seed);
    return {c.label(), grid, evaluate_metric_grid(c, block.samples, grid)};
}

void write_metric_csv(std::ostream& os, std::span<const MetricCurve> curves)
{
    os << kMetricCsvHeader << '\n';
    for (const auto& curve : curves)
        for (int p = 0; p < curve.grid.count; ++p)
            os << curve.constellation << ',' << format_number(curve.grid.phase(p) / kDeg) << ','
               << format_number(curve.metric[static_cast<std::size_t>(p)]) << '\n';
}

std::vector<CostRow> cost_table(const Constellation& c, std::span<const int> block_lengths,
                                std::span<const double> snr_db, int lambda_max)
{
    std::vector<CostRow> rows;
    for (int n : block_lengths) {
        for (double db : snr_db) {
            const PlanQuery q{c.symmetry_order(), static_cast<int>(c.size()), n,
                              SnrSpec::from_db(db), 1};
            const auto best = optimal_stage_count(q, lambda_max);
            for (const auto& entry : cost_curve(q, lambda_max))
                rows.push_back({c.label(), n, db, entry.stages, entry.n0, entry.cost,
                                entry.stages == best.stages});
        }
    }
    return rows;
}

void write_cost_csv(std::ostream& os, std::span<const CostRow> rows)
{
    os << kCostCsvHeader << '\n';
    for (const auto& r : rows)
        os << r.constellation << ',' << r.block_length << ',' << format_number(r.snr_db) << ','
           << r.stages << ',' << r.n0 << ',' << format_number(r.cost) << ','
           << (r.is_optimal ? 1 : 0) << '\n';
}

std::vector<PhaseCountRow> phase_count_table(const Constellation& c,
                                             std::span<const int> block_lengths,
                                             std::span<const double> snr_db, int stages)
{
    std::vector<PhaseCountRow> rows;
    for (int n : block_lengths) {
        for (double db : snr_db) {
            const SnrSpec snr = SnrSpec::from_db(db);
            rows.push_back({c.label(), n, db, stages,
                            phase_count_bound(c.symmetry_order(), n, snr, stages),
                            optimal_phase_count(c.symmetry_order(), n, snr, stages)});
        }
    }
    return rows;
}

void write_phase_count_csv(std::ostream& os, std::span<const PhaseCountRow> rows)
{
    os << kPhaseCountCsvHeader << '\n';
    for (const auto& r : rows)
        os << r.constellation << ',' << r.block_length << ',' << format_number(r.snr_db) << ','
           << r.stages << ',' << format_number(r.n0_real) << ',' << r.n0 << '\n';
}

Scenario sweep_preset(std::string_view id, std::uint64_t master_seed, int trials)
{
    for (const auto& p : kSweepPresets) {
        if (p.id != id)
            continue;
        Scenario s;
        s.constellation = std::string(p.constellation);
        s.block_length = p.block_length;
        s.estimators = {EstimatorSpec::parse("pmm(stages=2,phases=10)"), EstimatorSpec::parse("ple"),
                        EstimatorSpec::parse("mde(hypotheses=10)")};
        s.snr_grid_db = db_range(0.0, 25.0, 5.0);
        if (id == "fig10") {
            // gives the 8 dB crossover its own grid point
            s.snr_grid_db.insert(s.snr_grid_db.begin() + 2, 8.0);
        }
        s.trials = trials;
        s.master_seed = master_seed;
        s.theta0 = Theta0Mode::per_trial_uniform();
        return s;
    }
    fail(ErrorKind::InvalidParameter, "'" + std::string(id) + "' is not a sweep preset");
}

void write_preset(std::ostream& os, std::string_view id, std::uint64_t master_seed, int trials,
                  int threads)
{
    if (!is_preset(id))
        fail(ErrorKind::InvalidParameter, "unknown preset '" + std::string(id) + "'");

    if (id == "fig1") {
        std::vector<MetricCurve> curves;
        std::uint64_t k = 0;
        for (const auto& c : {make_psk(4), make_psk(8), make_v29()})
            curves.push_back(metric_curve(c, 64, 30.0 * kDeg, SnrSpec::from_db(20.0),
                                          combine_seed(master_seed, k++)));
        write_metric_csv(os, curves);
        return;
    }

    for (const auto& p : kCostPresets) {
        if (p.id != id)
            continue;
        const Constellation c = constellation_by_name(p.constellation);
        const int l = static_cast<int>(c.size());
        std::vector<int> lengths = {2 * l, 4 * l, 8 * l, p.nominal_n};
        std::sort(lengths.begin(), lengths.end());
        lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
        const auto snrs = db_range(5.0, 25.0, 5.0);
        write_cost_csv(os, cost_table(c, lengths, snrs));
        return;
    }

    if (id == "fig7" || id == "fig8") {
        const auto snrs = db_range(0.0, 25.0, 1.0);
        write_phase_count_csv(os, phase_count_table(make_psk(4), kPhaseCountLengths, snrs,
                                                    id == "fig7" ? 1 : 2));
        return;
    }

    write_sweep_csv(os, sweep(sweep_preset(id, master_seed, trials), threads));
}

std::filesystem::path run_preset(std::string_view id, std::uint64_t master_seed, int trials,
                                 const std::filesystem::path& out_dir, int threads)
{
    if (!is_preset(id))
        fail(ErrorKind::InvalidParameter, "unknown preset '" + std::string(id) + "'");
    std::filesystem::create_directories(out_dir);
    const auto path = out_dir / (std::string(id) + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorKind::InvalidParameter, "cannot write '" + path.string() + "'");
    write_preset(out, id, master_seed, trials, threads);
    return path;
}

} // namespace blindphase

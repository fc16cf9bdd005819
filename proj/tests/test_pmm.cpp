// SPDX-License-Identifier: GPL-3.0-or-later

#include "blindphase/channel.hpp"
#include "blindphase/error.hpp"
#include "blindphase/harness.hpp"
#include "blindphase/planning.hpp"
#include "blindphase/pmm.hpp"
#include "blindphase/reference.hpp"
#include "blindphase/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace blindphase;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
const char* const kNames[] = {"qpsk", "8psk", "16psk", "v29", "qam16"};

} // namespace

TEST_CASE("phase_metric examples")
{
    const auto q = make_psk(4);
    const std::vector<Complex> one = {{1.2, 0.0}};
    // (1.2 - 1/sqrt2)^2 + 1/2
    CHECK(phase_metric(q, one, 0.0) == doctest::Approx(0.7429437252).epsilon(1e-9));

    const auto b = transmit_block(q, 64, 30 * kDeg, kNoiseless, 3);
    CHECK(phase_metric(q, b.samples, 30 * kDeg) <= 1e-18 * 64);
    CHECK(phase_metric(q, b.samples, 20 * kDeg) > 0.0);

    CHECK_THROWS_AS(phase_metric(q, std::vector<Complex>{}, 0.0), Error);
    CHECK_THROWS_AS(phase_metric(q, one, NAN), Error);
}

TEST_CASE("phase_metric agrees with the oracle")
{
    for (const char* name : kNames) {
        const auto c = constellation_by_name(name);
        const auto b = transmit_block(c, 40, 0.4, SnrSpec::from_db(8.0), 21);
        for (double t : {0.0, 0.1, 0.7, 2.0, -1.3})
            CHECK(phase_metric(c, b.samples, t) ==
                  doctest::Approx(oracle::metric(c.points(), b.samples, t)).epsilon(1e-12));
    }
}

TEST_CASE("stage_grid")
{
    const auto g1 = stage_grid(0.0, 0.0, 10, 4, true);
    CHECK(g1.count == 10);
    CHECK(g1.start == 0.0);
    CHECK(g1.spacing / kDeg == doctest::Approx(9.0));
    CHECK(g1.phase(9) / kDeg == doctest::Approx(81.0));

    const auto g2 = stage_grid(27 * kDeg, 2 * g1.spacing, 10, 4, false);
    CHECK(g2.count == 11);
    CHECK(g2.phase(0) / kDeg == doctest::Approx(18.0));
    CHECK(g2.phase(10) / kDeg == doctest::Approx(36.0));
    CHECK(g2.spacing / kDeg == doctest::Approx(1.8));
    CHECK(g2.phase(5) == doctest::Approx(27 * kDeg));
    CHECK(g2.spacing * (g2.count - 1) <= 2 * g1.spacing + 1e-12);

    for (int n : {2, 4, 10, 12})
        CHECK(stage_grid(0.3, 0.1, n, 8, false).phase(n / 2) == doctest::Approx(0.3));

    CHECK_THROWS_AS(stage_grid(0.0, 0.0, 1, 4, true), Error);
    CHECK_THROWS_AS(stage_grid(0.0, 0.0, 10, 4, false), Error);
}

TEST_CASE("PmmPlan")
{
    const PmmPlan plan{2, 10, 4};
    CHECK(plan.final_resolution() == doctest::Approx(std::numbers::pi / 100));
    for (int stages = 1; stages <= 6; ++stages)
        for (int n = 2; n <= 12; ++n) {
            const PmmPlan p{stages, n, 8};
            CHECK(p.final_resolution() > 0.0);
            CHECK(p.final_resolution() < ambiguity_period(8));
        }
    CHECK_THROWS_AS((PmmPlan{0, 10, 4}.validate()), Error);
    CHECK_THROWS_AS((PmmPlan{2, 1, 4}.validate()), Error);
    const auto q = make_psk(4);
    const std::vector<Complex> one = {{1, 0}};
    CHECK_THROWS_AS(pmm_estimate(q, one, PmmPlan{2, 10, 8}), Error);
    CHECK_THROWS_AS(pmm_estimate(q, std::vector<Complex>{}, PmmPlan{2, 10, 4}), Error);
}

TEST_CASE("rotate_block")
{
    const auto c = make_v29();
    const auto b = transmit_block(c, 32, 0.2, SnrSpec::from_db(12.0), 8);
    CHECK(rotate_block(b.samples, 0.0) == b.samples);
    const auto full = rotate_block(b.samples, kTwoPi);
    for (std::size_t k = 0; k < full.size(); ++k)
        CHECK(std::abs(full[k] - b.samples[k]) <= 1e-12);
}

TEST_CASE("metric periodicity and rotation equivariance")
{
    Rng rng(1234);
    for (const char* name : kNames) {
        CAPTURE(name);
        const auto c = constellation_by_name(name);
        for (int trial = 0; trial < 20; ++trial) {
            const auto b = transmit_block(c, 48, rng.uniform01() * 7.0, SnrSpec::from_db(6.0),
                                          rng.next());
            const double n = static_cast<double>(b.samples.size());
            const double theta = rng.uniform01() * kTwoPi - std::numbers::pi;
            const double phi = rng.uniform01() * 10.0 - 5.0;
            CHECK(std::abs(phase_metric(c, b.samples, theta + c.period()) -
                           phase_metric(c, b.samples, theta)) <= 1e-9 * n);
            CHECK(std::abs(phase_metric(c, rotate_block(b.samples, phi), theta) -
                           phase_metric(c, b.samples, theta - phi)) <= 1e-9 * n);
        }
    }
}

TEST_CASE("single stage PMM equals brute-force grid argmin")
{
    Rng rng(77);
    for (const char* name : kNames) {
        CAPTURE(name);
        const auto c = constellation_by_name(name);
        const int m = c.symmetry_order();
        for (double db : {0.0, 10.0, 20.0}) {
            const int n = optimal_phase_count(m, 32, SnrSpec::from_db(db), 1);
            for (int trial = 0; trial < 10; ++trial) {
                const auto b = transmit_block(c, 32, rng.uniform01() * c.period(),
                                              SnrSpec::from_db(db), rng.next());
                const auto est = pmm_estimate(c, b.samples, PmmPlan{1, n, m});
                // same grid point; the two compute p * spacing with different rounding
                CHECK(est.theta_hat ==
                      doctest::Approx(oracle::grid_argmin(c.points(), b.samples, m, n)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("noiseless PMM error within half the final spacing")
{
    Rng rng(2024);
    for (const char* name : kNames) {
        CAPTURE(name);
        const auto c = constellation_by_name(name);
        for (int stages : {1, 2, 3}) {
            const PmmPlan plan{stages, 10, c.symmetry_order()};
            for (int trial = 0; trial < 100; ++trial) {
                const double theta0 = rng.uniform01() * c.period();
                const auto b = transmit_block(c, 64, theta0, kNoiseless, rng.next());
                const auto est = pmm_estimate(c, b.samples, plan);
                CHECK(est.theta_hat >= 0.0);
                CHECK(est.theta_hat < c.period());
                CHECK(std::abs(wrapped_error(est.theta_hat, theta0, c.symmetry_order())) <=
                      plan.final_resolution() / 2 + 1e-9);
            }
        }
    }
}

TEST_CASE("two stages agree with an equivalent single-stage grid")
{
    Rng rng(5);
    for (const char* name : kNames) {
        CAPTURE(name);
        const auto c = constellation_by_name(name);
        const int m = c.symmetry_order();
        const PmmPlan two{2, 10, m};
        const PmmPlan one{1, 50, m}; // same spacing 2 (2pi/M) / 100
        CHECK(one.final_resolution() == doctest::Approx(two.final_resolution()));
        for (int trial = 0; trial < 50; ++trial) {
            const auto b = transmit_block(c, 64, rng.uniform01() * c.period(), kNoiseless,
                                          rng.next());
            const double a = pmm_estimate(c, b.samples, two).theta_hat;
            const double s = pmm_estimate(c, b.samples, one).theta_hat;
            CHECK(std::abs(wrapped_error(a, s, m)) <= two.final_resolution() + 1e-12);
        }
    }
}

TEST_CASE("refinement across the ambiguity boundary")
{
    const auto q = make_psk(4);
    const PmmPlan plan{2, 10, 4};
    for (double theta0 : {0.0, 0.2 * kDeg, 89.7 * kDeg}) {
        const auto b = transmit_block(q, 64, theta0, kNoiseless, 9);
        const auto est = pmm_estimate(q, b.samples, plan);
        CHECK(est.theta_hat < q.period());
        CHECK(std::abs(wrapped_error(est.theta_hat, theta0, 4)) <= plan.final_resolution() / 2 + 1e-9);
        REQUIRE(est.metric_value.has_value());
        CHECK(*est.metric_value == doctest::Approx(phase_metric(q, b.samples, est.theta_hat)));
    }
}

TEST_CASE("metric minimum near 30 degrees at 20 dB")
{
    const auto q = make_psk(4);
    const auto b = transmit_block(q, 64, 30 * kDeg, SnrSpec::from_db(20.0), 1);
    const auto est = pmm_estimate(q, b.samples, PmmPlan{2, 10, 4});
    // final half-spacing 0.9 deg plus a few noise std (0.5 deg)
    CHECK(std::abs(est.theta_hat / kDeg - 30.0) < 3.0);
}

TEST_CASE("parallel grid evaluation matches the serial reference")
{
    const auto c = make_square_qam(64);
    const auto b = transmit_block(c, 4096, 0.3, SnrSpec::from_db(15.0), 31);
    const PhaseGrid grid = stage_grid(0.0, 0.0, 64, 4, true);
    CHECK(evaluate_metric_grid(c, b.samples, grid) ==
          reference::evaluate_metric_grid(c, b.samples, grid));
}

TEST_CASE("argmin_first breaks ties toward the lowest index")
{
    const std::vector<double> v = {3.0, 1.0, 2.0, 1.0};
    CHECK(argmin_first(v) == 1);
}

#include <doctest.h>

#include <cmath>
#include <vector>

#include "coopber/analytic.hpp"
#include "coopber/optimizer.hpp"

using namespace coopber;
using namespace coopber::optimizer;

namespace {

SystemConfig template_config(int m) {
    ScenarioDb s;
    s.m_relays = m;
    return s.to_config();
}

double ber_at(const SystemConfig& tmpl, double snr_db, double threshold_db) {
    return analytic::p_e2e(tmpl.with_total_snr(db_to_linear(snr_db)).with_threshold(db_to_linear(threshold_db)))
        .value;
}

}  // namespace

TEST_CASE("golden section finds a parabola vertex") {
    const double x = golden_section_minimize([](double v) { return (v - 1.234) * (v - 1.234) + 7.0; }, -5.0, 5.0,
                                             1e-6);
    CHECK(x == doctest::Approx(1.234).epsilon(1e-5));
    CHECK_THROWS_AS(golden_section_minimize([](double v) { return v; }, 1.0, 0.0, 1e-3), std::invalid_argument);
}

TEST_CASE("optimum is locally optimal and beats every grid point") {
    const SystemConfig tmpl = template_config(4);
    const SearchGrid grid;
    for (double snr : {0.0, 9.0, 18.0, 24.0}) {
        const ThresholdOptimum opt = find_gamma_opt(snr, tmpl);
        CHECK(opt.gamma_opt_db >= grid.lo_db);
        CHECK(opt.gamma_opt_db <= grid.hi_db);
        CHECK(opt.ber == doctest::Approx(ber_at(tmpl, snr, opt.gamma_opt_db)).epsilon(1e-12));
        CHECK(opt.ber <= ber_at(tmpl, snr, opt.gamma_opt_db - 0.25));
        CHECK(opt.ber <= ber_at(tmpl, snr, opt.gamma_opt_db + 0.25));
        for (double t = grid.lo_db; t <= grid.hi_db + 1e-9; t += grid.step_db) {
            CHECK(opt.ber <= ber_at(tmpl, snr, t) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("single relay optimum matches a brute-force fine grid") {
    const SystemConfig tmpl = template_config(1);
    for (double snr : {6.0, 15.0}) {
        const ThresholdOptimum opt = find_gamma_opt(snr, tmpl);
        double best_t = 0.0;
        double best = 1.0;
        for (int i = 0; i <= 4000; ++i) {
            const double t = -20.0 + 0.01 * i;
            const double b = ber_at(tmpl, snr, t);
            if (b < best) {
                best = b;
                best_t = t;
            }
        }
        CHECK(std::abs(opt.gamma_opt_db - best_t) <= 0.02);
        CHECK(opt.ber <= best * (1.0 + 1e-9));
    }
}

TEST_CASE("threshold sweep") {
    const SystemConfig tmpl = template_config(4);
    const std::vector<double> one{12.0};
    const ThresholdCurve single = sweep(tmpl, one);
    REQUIRE(single.points.size() == 1);
    CHECK(single.points[0].total_snr_db == 12.0);
    CHECK(single.thresholds_non_decreasing());

    const std::vector<double> snrs{0.0, 6.0, 12.0, 18.0, 24.0};
    const ThresholdCurve curve = sweep(tmpl, snrs);
    REQUIRE(curve.points.size() == snrs.size());
    CHECK(curve.thresholds_non_decreasing());
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].ber_at_opt < curve.points[i - 1].ber_at_opt);
    }

    const std::vector<double> empty;
    const std::vector<double> unsorted{3.0, 3.0};
    CHECK_THROWS_AS(sweep(tmpl, empty), std::invalid_argument);
    CHECK_THROWS_AS(sweep(tmpl, unsorted), std::invalid_argument);
}

TEST_CASE("non-decreasing check") {
    ThresholdCurve c;
    c.points = {{0.0, 1.0, 0.1, false}, {3.0, 0.5, 0.01, false}};
    CHECK_FALSE(c.thresholds_non_decreasing());
    c.points[1].gamma_opt_db = 1.0;
    CHECK(c.thresholds_non_decreasing());
}

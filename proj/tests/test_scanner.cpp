#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "sususy/scanner.hpp"

using namespace sususy;

namespace {

ScanConfig small_cfg(Interval b0, Interval db0, int nb, int nd) {
    ScanConfig cfg;
    cfg.beta0_window = b0;
    cfg.dbeta0_window = db0;
    cfg.n_beta = nb;
    cfg.n_dbeta = nd;
    return cfg;
}

}  // namespace

TEST_CASE("classification of the three reference points") {
    ScanConfig cfg;
    CHECK(classify_point({0.0, -2.0}, cfg).regular());
    CHECK(classify_point({-0.7, -1.51}, cfg).regular());
    const Classification c = classify_point({-0.7, 5.0}, cfg);
    CHECK_FALSE(c.regular());
    CHECK(std::isfinite(c.x_sing));
}

TEST_CASE("3x3 map straddling the ladder seed") {
    const ScanConfig cfg = small_cfg({-0.1, 0.1}, {-2.5, -1.5}, 3, 3);
    const RegionMap map = scan_region(cfg);
    const InitialPoint center = map.cell_center(1, 1);
    CHECK(center.beta0 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(center.dbeta0 == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(map.cell(1, 1).regular());
}

TEST_CASE("a band far above the curve is entirely singular") {
    const ScanConfig cfg = small_cfg({-0.5, 0.5}, {9.5, 10.5}, 3, 2);
    const RegionMap map = scan_region(cfg);
    for (const auto& c : map.cells) CHECK_FALSE(c.regular());
}

TEST_CASE("the initial-condition curve lies inside the regular region") {
    ScanConfig cfg;
    for (int i = 0; i < 20; ++i) {
        const double beta0 = -1.0 + 2.0 * i / 19.0;
        CAPTURE(beta0);
        CHECK(classify_point({beta0, initial_curve(beta0)}, cfg).regular());
    }
}

TEST_CASE("threshold bisection brackets the curve") {
    ScanConfig cfg;

    const auto u0 = threshold_bisect(0.0, Direction::Up, cfg);
    const auto l0 = threshold_bisect(0.0, Direction::Down, cfg);
    REQUIRE(u0);
    REQUIRE(l0);
    CHECK(*l0 < -2.0);
    CHECK(-2.0 < *u0);

    const auto u7 = threshold_bisect(-0.7, Direction::Up, cfg);
    const auto l7 = threshold_bisect(-0.7, Direction::Down, cfg);
    REQUIRE(u7);
    REQUIRE(l7);
    CHECK(*l7 < -1.51);
    CHECK(-1.51 < *u7);

    // inward-Regular / outward-Singular at one bisection width
    for (auto [beta0, thr, sign] :
         {std::tuple{-0.7, *u7, +1.0}, std::tuple{-0.7, *l7, -1.0}}) {
        CHECK(classify_point({beta0, thr - sign * cfg.bisect_tol}, cfg).regular());
        CHECK_FALSE(classify_point({beta0, thr + sign * cfg.bisect_tol}, cfg).regular());
    }
}

TEST_CASE("threshold search reports a boundary outside the window instead of inventing one") {
    ScanConfig cfg;
    cfg.dbeta0_window = {-3.2, -0.5};  // true upper boundary (~ +0.009) is outside
    CHECK_FALSE(threshold_bisect(-0.7, Direction::Up, cfg).has_value());
    CHECK(threshold_bisect(-0.7, Direction::Down, cfg).has_value());
}

TEST_CASE("threshold search rejects a non-regular seed") {
    ScanConfig cfg;
    cfg.blowup_cap = 1.9;  // every trajectory trips this (beta' -> -2)
    CHECK_THROWS_AS(threshold_bisect(-0.7, Direction::Up, cfg), std::domain_error);
}

TEST_CASE("scan is deterministic and reproducible") {
    const ScanConfig cfg = [] {
        ScanConfig c = small_cfg({-0.8, -0.2}, {-2.6, -0.9}, 4, 6);
        c.jobs = 2;
        return c;
    }();
    const RegionMap a = scan_region(cfg);
    ScanConfig serial = cfg;
    serial.jobs = 1;
    const RegionMap b = scan_region(serial);

    std::ostringstream csv_a, csv_b;
    a.write_csv(csv_a);
    b.write_csv(csv_b);
    CHECK(csv_a.str() == csv_b.str());
    CHECK(a.to_json() == b.to_json());

    // every cell label is reproducible from its center
    for (int i = 0; i < cfg.n_beta; ++i)
        for (int j = 0; j < cfg.n_dbeta; ++j)
            CHECK(a.cell(i, j).regular() ==
                  classify_point(a.cell_center(i, j), cfg).regular());
}

TEST_CASE("column thresholds appear only where the curve seed is in-window") {
    const ScanConfig cfg = small_cfg({-0.8, -0.2}, {-2.6, -0.9}, 4, 6);
    const RegionMap map = scan_region(cfg);
    CHECK(map.thresholds.size() == 4);  // all four columns carry a curve seed
    for (const auto& col : map.thresholds) {
        const double seed = initial_curve(col.beta0);
        if (col.lower) CHECK(*col.lower < seed);
        if (col.upper) CHECK(seed < *col.upper);
    }

    const ScanConfig away = small_cfg({-0.5, 0.5}, {9.0, 10.0}, 3, 3);
    CHECK(scan_region(away).thresholds.empty());
}

TEST_CASE("grid refinement does not flip comfortably classified cells") {
    const ScanConfig coarse = small_cfg({-0.75, -0.65}, {-2.2, -0.6}, 2, 8);
    const RegionMap cm = scan_region(coarse);

    ScanConfig fine = coarse;
    fine.n_dbeta = 16;
    const RegionMap fm = scan_region(fine);

    const double cell = coarse.dbeta0_window.length() / coarse.n_dbeta;
    for (int i = 0; i < coarse.n_beta; ++i) {
        REQUIRE(static_cast<int>(cm.thresholds.size()) == coarse.n_beta);
        const auto& th = cm.thresholds[i];
        for (int j = 0; j < coarse.n_dbeta; ++j) {
            const InitialPoint p = cm.cell_center(i, j);
            double margin = std::numeric_limits<double>::infinity();
            if (th.lower) margin = std::min(margin, std::abs(p.dbeta0 - *th.lower));
            if (th.upper) margin = std::min(margin, std::abs(p.dbeta0 - *th.upper));
            if (margin <= cell) continue;
            // the two fine cells covering this coarse cell agree with it
            CHECK(fm.cell(i, 2 * j).regular() == cm.cell(i, j).regular());
            CHECK(fm.cell(i, 2 * j + 1).regular() == cm.cell(i, j).regular());
        }
    }
}

TEST_CASE("config validation faults") {
    ScanConfig bad;
    bad.n_beta = 0;
    CHECK_THROWS_AS(scan_region(bad), ConfigError);

    // a degenerate 1x1 grid is a legal point query
    ScanConfig one = bad;
    one.n_beta = 1;
    one.n_dbeta = 1;
    one.beta0_window = {-0.05, 0.05};
    one.dbeta0_window = {-2.05, -1.95};
    const RegionMap point = scan_region(one);
    CHECK(point.cells.size() == 1);
    CHECK(point.cells[0].regular());
    ScanConfig bad2;
    bad2.bisect_tol = 0.0;
    CHECK_THROWS_AS(scan_region(bad2), ConfigError);
    ScanConfig bad3;
    bad3.beta0_window = {0.5, 0.5};
    CHECK_THROWS_AS(scan_region(bad3), ConfigError);
}

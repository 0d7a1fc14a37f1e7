#include <doctest.h>

#include <sstream>

#include "hll/error.hpp"
#include "hll/experiments.hpp"

using namespace hll;

TEST_CASE("quantiles and KS distance") {
    auto q = quantiles({5, 1, 3, 2, 4});
    CHECK(q.q50 == 3);
    CHECK(q.q25 == 2);
    CHECK(q.q10 == doctest::Approx(1.4));
    CHECK(q.q90 == doctest::Approx(4.6));
    CHECK(ks_distance({1, 2, 3}, {1, 2, 3}) == 0);
    CHECK(ks_distance({1, 2}, {3, 4}) == 1);
    CHECK(ks_distance({1, 2, 3, 4}, {3, 4, 5, 6}) == doctest::Approx(0.5));
}

TEST_CASE("scaling run is deterministic and thread independent") {
    ScalingRunConfig cfg;
    cfg.sizes = {64, 128, 256};
    cfg.samples = 12;
    cfg.seed = 5;
    cfg.threads = 1;
    auto a = scaling_run(cfg);
    cfg.threads = 3;
    auto b = scaling_run(cfg);
    CHECK(scaling_csv(a) == scaling_csv(b));
    std::istringstream in(scaling_csv(a));
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,seed,sample,height,diam_loop,max_jump,b_n");
    CHECK(a.rows.size() == 36);
    CHECK(a.sizes.size() == 3);
    for (const auto& r : a.rows) {
        CHECK(r.height >= 1);
        CHECK(r.diam_loop >= 1);
        CHECK(r.max_jump >= 1);
    }
    auto j = scaling_summary(a);
    CHECK(j["regression"].contains("slope_ci95"));
    CHECK(j["sizes"].size() == 3);
}

TEST_CASE("paired Halin diameters stay within the height bound") {
    ScalingRunConfig cfg;
    cfg.sizes = {50, 200};
    cfg.samples = 10;
    cfg.halin_diameters = true;
    auto r = scaling_run(cfg);
    for (const auto& s : r.sizes) {
        CHECK(s.halin_pairs == 10);
        CHECK(s.halin_gap_violations == 0);
    }
    for (const auto& row : r.rows) CHECK(row.diam_halin.has_value());
    std::istringstream in(scaling_csv(r));
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,seed,sample,height,diam_loop,max_jump,b_n,diam_halin");
}

TEST_CASE("Lukasiewicz profile") {
    ProfileConfig cfg;
    cfg.sizes = {256, 1024};
    cfg.samples = 40;
    auto r = lukasiewicz_profile(cfg);
    REQUIRE(r.sizes.size() == 2);
    for (const auto& s : r.sizes) {
        CHECK(s.endpoint_violations == 0);
        CHECK(s.sup_violations == 0);
        CHECK(s.max_jump.q75 - s.max_jump.q25 > 0.05);
        CHECK(s.sup_w.q50 > 0);
    }
    CHECK_FALSE(r.sizes[0].ks_sup_w.has_value());
    CHECK(r.sizes[1].ks_sup_w.has_value());
    CHECK(profile_json(r)["sizes"].size() == 2);
}

TEST_CASE("configuration errors") {
    ScalingRunConfig cfg;
    CHECK_THROWS_AS(scaling_run(cfg), InvalidInput);
    cfg.sizes = {10};
    cfg.alpha = 2.5;
    CHECK_THROWS_AS(scaling_run(cfg), InvalidInput);
}

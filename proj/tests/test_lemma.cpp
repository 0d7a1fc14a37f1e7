#include <doctest.h>

#include "hll/lemma.hpp"
#include "hll/looptree.hpp"

using namespace hll;

TEST_CASE("n=1: two points against one") {
    auto r = check_lemma_bound(build_halin(PlaneTree({1, 0})));
    REQUIRE(r.gh_exact.has_value());
    CHECK(*r.gh_exact == 0.5);
    CHECK(r.height == 0);
    CHECK(r.bound == 1.5);
    CHECK(r.ok);
    CHECK(r.margin == 1.0);
}

TEST_CASE("bound holds with exact values for n <= 3") {
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& h : enumerate_halin(n)) {
            auto r = check_lemma_bound(h);
            REQUIRE(r.gh_exact.has_value());
            CHECK(r.ok);
            CHECK(*r.gh_exact <= r.height + 1.5);
            CHECK(r.gh_lower <= *r.gh_exact + 1e-12);
            CHECK(r.gh_upper >= *r.gh_exact - 1e-12);
            REQUIRE(r.gh_contraction_exact.has_value());
            CHECK(*r.gh_contraction_exact <= 2.0);
            REQUIRE(r.gh_root_shift_exact.has_value());
            CHECK(*r.gh_root_shift_exact <= 0.5);
            CHECK(r.dis_contraction / 2 <= 2.0);
            CHECK(r.dis_root_shift / 2 <= 0.5);
            CHECK(r.dis_canonical <= 2.0 * r.height);
        }
}

TEST_CASE("upper bounds at n = 4") {
    LemmaOptions opt;
    opt.budget = 0; // correspondences only
    opt.exact_parts = false;
    for (const auto& h : enumerate_halin(4)) {
        auto r = check_lemma_bound(h, opt);
        CHECK_FALSE(r.gh_exact.has_value());
        CHECK(r.ok);
        CHECK(r.gh_upper <= r.height + 1.5);
        CHECK(r.gh_lower <= r.gh_upper);
    }
}

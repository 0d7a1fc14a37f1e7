#include <doctest.h>

#include <set>

#include "hll/audit.hpp"
#include "hll/error.hpp"
#include "hll/halin.hpp"

using namespace hll;

namespace {

std::uint64_t marked_count_closed(std::uint64_t n) {
    std::uint64_t b = 1;
    for (std::uint64_t i = 1; i <= n - 1; ++i) b = b * (2 * n - 1 + i) / i;
    return b / n;
}

// Independent (H*) check from the code alone: each internal vertex has
// exactly one child whose code entry is 0.
bool hstar_oracle(const PlaneTree& t) {
    auto info = lex_vertices(t);
    std::vector<int> leaf_children(t.size(), 0);
    for (std::size_t v = 1; v < t.size(); ++v)
        if (t.children(v) == 0) ++leaf_children[info[v].parent];
    for (std::size_t v = 0; v < t.size(); ++v)
        if (t.children(v) > 0 && leaf_children[v] != 1) return false;
    return true;
}

} // namespace

TEST_CASE("condition H* examples") {
    CHECK(satisfies_hstar(PlaneTree({1, 0})));
    CHECK_FALSE(satisfies_hstar(PlaneTree({1, 1, 0})));
    CHECK_FALSE(satisfies_hstar(PlaneTree({2, 0, 0})));
    CHECK(satisfies_hstar(PlaneTree({0}))); // vacuous: no internal vertex
    for (std::size_t n = 1; n <= 10; ++n)
        for (const auto& t : enumerate_trees(n)) CHECK(satisfies_hstar(t) == hstar_oracle(t));
}

TEST_CASE("n=1 Halin map") {
    HalinMap h = build_halin(PlaneTree({1, 0}));
    CHECK(h.map().vertex_count() == 2);
    CHECK(h.map().edge_count() == 2);
    CHECK(h.map().half_edge() == h.half());
    CHECK(h.leaf_cycle() == std::vector<std::size_t>{1});
    CHECK(h.map().twin(h.to_next(0)) == h.to_prev(0)); // the boundary is a loop
    CHECK(h.faces().degree(h.root_face()) == 4);
    CHECK(h.map().root_dart() == h.down(1));
    CHECK(validate(h, true).empty());
}

TEST_CASE("construction does not require H*") {
    // (2,1,0,0) does satisfy the condition: the root keeps leaf 3 and vertex 1
    // keeps leaf 2.
    CHECK(validate(build_halin(PlaneTree({2, 1, 0, 0})), true).empty());
    for (const auto& code : {std::vector<int>{2, 0, 0}, {1, 1, 0}, {3, 0, 0, 0}, {2, 2, 0, 0, 0}}) {
        HalinMap h = build_halin(PlaneTree(code));
        CHECK(validate(h, false).empty());
        CHECK_FALSE(validate(h, true).empty());
    }
}

TEST_CASE("boundary cycle follows the leaves") {
    for (std::size_t n = 2; n <= 8; ++n)
        for (const auto& t : enumerate_trees(n)) {
            HalinMap h = build_halin(t);
            CHECK(h.leaf_cycle() == leaves(t));
            CHECK(h.bounded_face_count() == leaf_count(t));
            CHECK(h.faces().size() == leaf_count(t) + 1);
            CHECK(h.faces().degree(h.outer_face()) == leaf_count(t));
            CHECK(h.map().euler_characteristic() == 2);
        }
}

TEST_CASE("Boltzmann weights") {
    HalinMap h1 = build_halin(PlaneTree({1, 0}));
    CHECK(weight(h1, FaceWeights::ones()) == 1.0);
    CHECK(weight_exact(h1, FaceWeights::parse("table:4=3")) == 3);
    for (const auto& h : enumerate_halin(2)) CHECK(weight_exact(h, FaceWeights::linear()) == 20);
    CHECK_THROWS_AS(weight(build_halin(PlaneTree({2, 0, 0})), FaceWeights::ones()), InvariantViolation);
}

TEST_CASE("Halin map counts") {
    std::vector<std::size_t> expected{1, 2, 7, 30, 143};
    for (std::size_t n = 1; n <= 5; ++n) {
        auto maps = enumerate_halin(n);
        CHECK(maps.size() == expected[n - 1]);
        CHECK(maps.size() == marked_count_closed(n));
        std::uint64_t sum = 0;
        for (const auto& t : enumerate_trees(n)) sum += marking_count(t);
        CHECK(maps.size() == sum);
        std::set<PlaneTree> distinct;
        for (const auto& h : maps) {
            distinct.insert(h.tree());
            CHECK(h.bounded_face_count() == n);
            CHECK(h.tree().size() == 2 * n);
            CHECK(validate(h, true).empty());
        }
        CHECK(distinct.size() == maps.size());
    }
    CHECK_THROWS_AS(enumerate_halin(9), SizeGuard);
}

TEST_CASE("validation predicates") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& h : enumerate_halin(n)) {
            const auto& m = h.map();
            auto f = h.faces();
            auto v = m.vertices();
            // every bounded face shares exactly one edge with the outer face
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i == h.outer_face()) continue;
                int shared = 0;
                for (Dart d : f.cycles[i])
                    if (!m.is_half_edge(d) && f.of[m.twin(d)] == h.outer_face()) ++shared;
                CHECK(shared == 1);
            }
            // boundary vertices have degree 3
            for (std::size_t leaf : h.leaf_cycle()) {
                Dart d = h.up(leaf);
                CHECK(v.degree(v.of[d]) == 3);
            }
        }
}

TEST_CASE("underlying tree is recovered from the map") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& h : enumerate_halin(n)) {
            auto back = halin_from_map(h.map(), h.outer_dart());
            REQUIRE(back.has_value());
            CHECK(back->tree() == h.tree());
            auto any = halin_from_map(h.map());
            REQUIRE(any.has_value());
            CHECK(satisfies_hstar(any->tree()));
            CHECK(rooted_isomorphic(any->map(), h.map()));
        }
}

TEST_CASE("the outer face is part of the data") {
    // Two Halin maps with the same rooted rotation system: they differ only
    // in which face is unbounded.
    HalinMap a = build_halin(PlaneTree({2, 0, 2, 0, 2, 0, 1, 0}));
    HalinMap b = build_halin(PlaneTree({2, 2, 2, 1, 0, 0, 0, 0}));
    CHECK(rooted_isomorphic(a.map(), b.map()));
    CHECK(halin_from_map(a.map(), a.outer_dart())->tree() == a.tree());
    CHECK(halin_from_map(b.map(), b.outer_dart())->tree() == b.tree());
}

TEST_CASE("audit counters see no violations on valid objects") {
    audit::reset();
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& h : enumerate_halin(n)) validate(h, true);
    auto c = audit::snapshot();
    CHECK(c.total_checked() > 0);
    CHECK(c.total_violated() == 0);
}

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hll/error.hpp"
#include "hll/halin.hpp"
#include "hll/planar_map.hpp"

using namespace hll;

namespace {

std::vector<std::size_t> sorted_degrees(const Partition& p) {
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < p.size(); ++i) d.push_back(p.degree(i));
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace

TEST_CASE("single edge has one face of degree 2") {
    PlanarMap m({1, 0}, {0, 1}, 0, std::nullopt);
    CHECK(m.vertex_count() == 2);
    CHECK(m.edge_count() == 1);
    CHECK(sorted_degrees(m.faces()) == std::vector<std::size_t>{2});
    CHECK(m.euler_characteristic() == 2);
    CHECK(is_tree_map(m));
}

TEST_CASE("malformed rotation systems are rejected") {
    CHECK_THROWS_AS(PlanarMap({1, 1}, {0, 1}, 0, std::nullopt), InvalidInput);
    CHECK_THROWS_AS(PlanarMap({0, 1}, {0, 1}, 0, 0), InvalidInput);       // second fixed point
    CHECK_THROWS_AS(PlanarMap({1, 0}, {0, 0}, 0, std::nullopt), InvalidInput); // next not a permutation
    CHECK_THROWS_AS(PlanarMap({1, 0, 3, 2}, {0, 1, 2, 3}, 0, std::nullopt), InvalidInput); // disconnected
}

TEST_CASE("n=1 Halin map faces") {
    HalinMap h = build_halin(PlaneTree({1, 0}));
    const PlanarMap& m = h.map();
    CHECK(m.dart_count() == 5);
    CHECK(m.vertex_count() == 2);
    CHECK(m.edge_count() == 2);
    CHECK(h.faces().degree(h.outer_face()) == 1);
    CHECK(h.faces().degree(h.root_face()) == 4);
    CHECK(m.euler_characteristic() == 2);
    CHECK(face_degree_sum_ok(m));
}

TEST_CASE("plane trees as maps have one face") {
    for (std::size_t n = 2; n <= 7; ++n)
        for (const auto& t : enumerate_trees(n)) {
            PlanarMap m = tree_map(t);
            REQUIRE(m.face_count() == 1);
            CHECK(m.faces().degree(0) == 2 * (n - 1));
            CHECK(m.vertex_count() == n);
            CHECK(is_tree_map(m));
        }
}

TEST_CASE("weak dual of small Halin maps") {
    // One bounded face: the tree edge borders it on both sides, so its dual is
    // a loop; together with the half-edge the dual vertex has degree 4 - 1.
    HalinMap h1 = build_halin(PlaneTree({1, 0}));
    WeakDual d1 = weak_dual(h1.map(), h1.outer_dart());
    CHECK(d1.map.vertex_count() == 1);
    CHECK(d1.map.dart_count() == 3);
    CHECK(d1.map.half_edge().has_value());

    for (const auto& h : enumerate_halin(2)) {
        WeakDual d = weak_dual(h.map(), h.outer_dart());
        CHECK(d.map.vertex_count() == 2);
        CHECK(d.map.edge_count() == 3);
        CHECK(is_two_connected(d.map));
        // three parallel edges between the two vertices
        auto v = d.map.vertices();
        for (Dart x = 0; x < d.map.dart_count(); ++x)
            if (!d.map.is_half_edge(x)) CHECK(v.of[x] != v.of[d.map.twin(x)]);
        // deleting one of them leaves a 2-gon
        Dart e = d.map.is_half_edge(0) ? 1 : 0;
        PlanarMap two = delete_edge(d.map, e);
        CHECK(two.edge_count() == 2);
        CHECK(two.face_count() == 2);
        CHECK(two.vertex_count() == 2);
    }
}

TEST_CASE("dual vertex degree is face degree minus one") {
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& h : enumerate_halin(n)) {
            WeakDual d = weak_dual(h.map(), h.outer_dart());
            CHECK(d.map.vertex_count() == n);
            const auto& dv = d.dual_vertices;
            for (std::size_t v = 0; v < dv.size(); ++v) {
                std::size_t f = d.dual_vertex_face[v];
                CHECK(dv.degree(v) == d.primal_faces.degree(f) - 1);
            }
        }
}

TEST_CASE("contraction and deletion keep Euler's formula") {
    PlanarMap edge({1, 0}, {0, 1}, 0, std::nullopt);
    PlanarMap point = contract_edge(edge, 0);
    CHECK(point.vertex_count() == 1);
    CHECK(point.edge_count() == 0);

    std::mt19937_64 rng(5);
    for (std::size_t n = 2; n <= 5; ++n)
        for (const auto& h : enumerate_halin(n)) {
            const PlanarMap& m = h.map();
            std::uniform_int_distribution<Dart> pick(0, m.dart_count() - 2);
            Dart e = pick(rng);
            if (m.vertices().of[e] != m.vertices().of[m.twin(e)]) {
                PlanarMap c = contract_edge(m, e);
                CHECK(c.vertex_count() == m.vertex_count() - 1);
                CHECK(c.edge_count() == m.edge_count() - 1);
                CHECK(c.face_count() == m.face_count());
                CHECK(c.euler_characteristic() == 2);
            }
            auto f = m.faces();
            if (f.of[e] != f.of[m.twin(e)]) {
                PlanarMap d = delete_edge(m, e);
                CHECK(d.vertex_count() == m.vertex_count());
                CHECK(d.edge_count() == m.edge_count() - 1);
                CHECK(d.face_count() == m.face_count() - 1);
                CHECK(d.euler_characteristic() == 2);
            }
        }
    HalinMap h1 = build_halin(PlaneTree({1, 0}));
    Dart loop = h1.to_next(0);
    CHECK_THROWS_AS(contract_edge(h1.map(), loop), InvalidInput);
    CHECK_THROWS_AS(contract_edge(h1.map(), h1.half()), InvalidInput);
}

TEST_CASE("two-connectivity") {
    CHECK(is_two_connected(PlanarMap({1, 0}, {0, 1}, 0, std::nullopt)));
    CHECK_FALSE(is_two_connected(tree_map(PlaneTree({2, 0, 0}))));
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& h : enumerate_halin(n)) CHECK(is_two_connected(h.map()));
}

TEST_CASE("rooted isomorphism") {
    auto maps = enumerate_halin(3);
    CHECK(rooted_isomorphic(maps[0].map(), maps[0].map()));
    CHECK_FALSE(rooted_isomorphic(maps[0].map(), tree_map(PlaneTree({1, 0}))));
    // relabel darts by a fixed permutation
    for (const auto& h : maps) {
        const PlanarMap& m = h.map();
        const std::size_t n = m.dart_count();
        std::vector<Dart> p(n);
        for (Dart d = 0; d < n; ++d) p[d] = (d * 7 + 3) % n;
        if (std::gcd(std::size_t{7}, n) != 1) continue;
        std::vector<Dart> twin(n), next(n);
        for (Dart d = 0; d < n; ++d) {
            twin[p[d]] = p[m.twin(d)];
            next[p[d]] = p[m.next(d)];
        }
        PlanarMap r(twin, next, p[m.root_dart()], p[*m.half_edge()]);
        CHECK(rooted_isomorphic(m, r));
        PlanarMap moved(twin, next, p[m.twin(m.root_dart())], p[*m.half_edge()]);
        CHECK_FALSE(rooted_isomorphic(m, moved));
    }
}

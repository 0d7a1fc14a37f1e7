#include <doctest.h>

#include <algorithm>
#include <random>

#include "hll/gw.hpp"
#include "hll/looptree.hpp"

using namespace hll;

namespace {

PlaneTree star(int k) {
    std::vector<int> code(static_cast<std::size_t>(k) + 1, 0);
    code[0] = k;
    return PlaneTree(code);
}

// Sum over the tree path from u to v of the loop distance between each vertex
// and its parent, min(i, k+1-i) for the i-th of k children; an upper bound on
// the looptree distance.
int path_cost(const TreeLayout& l, std::size_t u, std::size_t v) {
    auto step = [&](std::size_t x) {
        int k = static_cast<int>(l.children(l.parent[x]).size());
        return std::min(l.child_index[x], k + 1 - l.child_index[x]);
    };
    int d = 0;
    while (u != v) {
        if (l.depth[u] >= l.depth[v]) d += step(u), u = l.parent[u];
        else d += step(v), v = l.parent[v];
    }
    return d;
}

} // namespace

TEST_CASE("looptree examples") {
    Graph one = loop(PlaneTree({0}));
    CHECK(one.vertex_count() == 1);
    CHECK(one.edge_count() == 0);

    Graph c4 = loop(star(3));
    CHECK(c4.edge_count() == 4);
    CHECK(graph_distance(c4, 0, 2) == 2);
    CHECK(diameter(c4) == 2);

    Graph path = loop(PlaneTree({1, 1, 0}));
    CHECK(path.edge_count() == 4);
    CHECK(graph_distance(path, 0, 2) == 2);
    std::vector<Edge> e = path.edges();
    std::sort(e.begin(), e.end());
    CHECK(e == std::vector<Edge>{{0, 1}, {0, 1}, {1, 2}, {1, 2}});

    CHECK(diameter(loop(star(5))) == 3);
    CHECK(loop_diameter(star(5)) == 3);
}

TEST_CASE("edge multiset and sizes") {
    for (std::size_t n = 1; n <= 8; ++n)
        for (const auto& t : enumerate_trees(n)) {
            Graph g = loop(t);
            std::size_t expect = 0, internal = 0;
            for (int k : t.code())
                if (k > 0) expect += static_cast<std::size_t>(k) + 1, ++internal;
            CHECK(g.edge_count() == expect);
            CHECK(g.vertex_count() == zeta(t));
            CHECK(expect == (n - 1) + internal);
            CHECK(is_connected(g));
        }
}

TEST_CASE("root loop of a star") {
    for (int k = 1; k <= 20; ++k) {
        auto d = bfs(loop(star(k)), 0);
        for (int i = 1; i <= k; ++i) CHECK(d[static_cast<std::size_t>(i)] == std::min(i, k + 1 - i));
    }
}

TEST_CASE("property: diameter algorithms agree and loop distances follow tree paths") {
    auto mu = OffspringDistribution::stable(1.5);
    for (std::uint64_t s = 0; s < 120; ++s) {
        std::size_t n = 1 + s % 64;
        PlaneTree t = sample_conditioned(mu, n, derive_seed(21, n, s));
        Graph g = loop(t);
        auto all = all_distances(g, 1);
        int diam = *std::max_element(all.begin(), all.end());
        CHECK(loop_diameter(t) == diam);
        CHECK(diameter(g) == diam);
        CHECK(diameter_fringe(g) == diam);
        TreeLayout l = layout(t);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) CHECK(all[u * n + v] <= path_cost(l, u, v));
        for (std::size_t v = 1; v < n; ++v) CHECK(all[v * n + l.parent[v]] == path_cost(l, v, l.parent[v]));
    }
    for (std::uint64_t s = 0; s < 6; ++s) {
        PlaneTree t = sample_conditioned(mu, 3000, derive_seed(22, s));
        CHECK(loop_diameter(t) == diameter_fringe(loop(t)));
    }
}

TEST_CASE("contracted Halin metric") {
    CHECK(hat_H(build_halin(PlaneTree({1, 0}))).size() == 1);
    for (const auto& h : enumerate_halin(2)) {
        auto x = hat_H(h);
        REQUIRE(x.size() == 2);
        CHECK(x(0, 1) == 1);
    }
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& h : enumerate_halin(n)) {
            auto c = contract_leaves(h);
            CHECK(c.internal.size() == n);
            CHECK(is_connected(c.graph));
            auto r = contraction_correspondence(h, c);
            CHECK(is_correspondence(r, h.tree().size(), n));
        }
}

TEST_CASE("shifted looptree") {
    MarkedTree single(PlaneTree({0}), {0});
    CHECK(hat_L(single).size() == 1);
    for (int m : {0, 1}) {
        MarkedTree t(PlaneTree({1, 0}), {m, 0});
        auto l = loop_metric(t.shape());
        auto lh = hat_L(t);
        auto r = root_shift_correspondence(t);
        CHECK(is_correspondence(r, 2, 2));
        CHECK(gh_exact(l, lh).value <= 0.5);
    }
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& t : enumerate_marked(n)) {
            auto l = loop_metric(t.shape());
            auto lh = hat_L(t);
            auto r = root_shift_correspondence(t);
            REQUIRE(is_correspondence(r, n, n));
            CHECK(distortion(r, l, lh) <= 1.0);
            if (n <= 3) CHECK(gh_exact(l, lh).value <= 0.5);
        }
}

TEST_CASE("canonical correspondence is within twice the height") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& h : enumerate_halin(n)) {
            PhiResult p = phi_detailed(h);
            auto c = contract_leaves(h);
            auto r = canonical_correspondence(h, c, p);
            REQUIRE(is_correspondence(r, n, n));
            auto hh = hat_H(h);
            auto lh = hat_L(p.marked);
            CHECK(distortion(r, hh, lh) <= 2.0 * height(p.marked.shape()));
        }
}

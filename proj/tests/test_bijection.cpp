#include <doctest.h>

#include <map>
#include <set>

#include "hll/bijection.hpp"
#include "hll/gw.hpp"

using namespace hll;

namespace {

// GW mass of a shape for mu(k) = (4/9) (1/3)^k (k+1), as an exact rational.
Rational gw_mass_geometric(const PlaneTree& t) {
    Rational m = 1;
    for (int k : t.code()) {
        Rational mu = Rational(4, 9) * (k + 1);
        for (int i = 0; i < k; ++i) mu /= 3;
        m *= mu;
    }
    return m;
}

} // namespace

TEST_CASE("small cases") {
    HalinMap h1 = build_halin(PlaneTree({1, 0}));
    CHECK(phi(h1) == MarkedTree(PlaneTree({0}), {0}));
    CHECK(phi_inverse(MarkedTree(PlaneTree({0}), {0})).tree() == h1.tree());

    std::set<MarkedTree> images;
    for (const auto& h : enumerate_halin(2)) images.insert(phi(h));
    CHECK(images == std::set<MarkedTree>{MarkedTree(PlaneTree({1, 0}), {0, 0}),
                                         MarkedTree(PlaneTree({1, 0}), {1, 0})});
}

TEST_CASE("phi is a bijection for n <= 5") {
    for (std::size_t n = 1; n <= 5; ++n) {
        auto maps = enumerate_halin(n);
        auto marked = enumerate_marked(n);
        std::set<MarkedTree> images;
        for (const auto& h : maps) {
            MarkedTree t = phi(h);
            CHECK(t.size() == n);
            images.insert(t);
            CHECK(phi_inverse(t).tree() == h.tree());
        }
        CHECK(images.size() == maps.size());
        CHECK(images == std::set<MarkedTree>(marked.begin(), marked.end()));
        for (const auto& t : marked) CHECK(phi(phi_inverse(t)) == t);
    }
}

TEST_CASE("inverse agrees with the brute-force table") {
    for (std::size_t n = 1; n <= 5; ++n) {
        InverseTable table(n);
        CHECK(table.injective());
        for (const auto& t : enumerate_marked(n)) CHECK(phi_inverse(t).tree() == table(t).tree());
    }
}

TEST_CASE("degree law: children = face degree - 4") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& h : enumerate_halin(n)) {
            PhiResult r = phi_detailed(h);
            std::multiset<std::size_t> ks, degs;
            for (std::size_t v = 0; v < n; ++v) {
                std::size_t f = r.face_of_vertex[v];
                CHECK(f != h.outer_face());
                CHECK(static_cast<std::size_t>(r.marked.shape().children(v)) + 4 == h.faces().degree(f));
                ks.insert(r.marked.shape().children(v));
                degs.insert(h.faces().degree(f) - 4);
            }
            CHECK(ks == degs);
            CHECK(r.face_of_vertex[0] == h.root_face());
        }
}

TEST_CASE("dissection minus the polygon is a tree") {
    for (std::size_t n = 2; n <= 4; ++n)
        for (const auto& h : enumerate_halin(n)) {
            MarkedDissection d = marked_dissection(h);
            PlanarMap t = dissection_tree(d);
            CHECK(is_tree_map(t));
            CHECK(t.vertex_count() == n);
        }
}

TEST_CASE("random round trips") {
    auto law = mu_from_weights(FaceWeights::ones());
    for (std::size_t n : {10u, 50u, 200u}) {
        ConditionedSampler s(law.mu, n);
        for (std::uint64_t i = 0; i < 60; ++i) {
            Rng rng(derive_seed(3, n, i));
            MarkedTree t = uniformly_marked(s(rng), rng);
            HalinMap h = phi_inverse(t);
            CHECK(validate(h, true).empty());
            CHECK(h.bounded_face_count() == n);
            CHECK(phi(h) == t);
            CHECK(phi_inverse(phi(h)).tree() == h.tree());
        }
    }
}

TEST_CASE("pushforward of the Boltzmann law") {
    auto r2 = pushforward_distribution(2, FaceWeights::ones());
    REQUIRE(r2.rows.size() == 1);
    CHECK(r2.rows[0].boltzmann == 1);

    auto r3 = pushforward_distribution(3, FaceWeights::ones());
    std::map<PlaneTree, Rational> law;
    for (const auto& row : r3.rows) law[row.shape] = row.boltzmann;
    CHECK(law[PlaneTree({1, 1, 0})] == Rational(4, 7));
    CHECK(law[PlaneTree({2, 0, 0})] == Rational(3, 7));
    CHECK(r3.exact_match);

    auto r4 = pushforward_distribution(4, FaceWeights::ones());
    CHECK(r4.rows.size() == 5);
    CHECK(r4.partition_function == 30);
    Rational total_gw = 0, total = 0;
    for (const auto& row : r4.rows) total_gw += gw_mass_geometric(row.shape);
    for (const auto& row : r4.rows) {
        CHECK(row.boltzmann == gw_mass_geometric(row.shape) / total_gw);
        CHECK(row.gw == row.boltzmann);
        total += row.boltzmann;
    }
    CHECK(total == 1);
    CHECK(r4.exact_match);
    CHECK(r4.max_abs_diff == 0);

    // the conditional law does not depend on (a, b)
    auto other = pushforward_distribution(4, FaceWeights::ones(), Rational(1, 7), Rational(2, 5));
    CHECK(other.exact_match);
    CHECK(pushforward_distribution(4, FaceWeights::linear()).exact_match);
    CHECK(pushforward_distribution(5, FaceWeights::parse("table:4=1,5=2,6=1/3,7=5")).exact_match);
}

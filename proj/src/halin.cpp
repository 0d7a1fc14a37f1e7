#include "hll/halin.hpp"

#include <algorithm>

#include "hll/audit.hpp"
#include "hll/error.hpp"

namespace hll {

bool satisfies_hstar(const PlaneTree& t) {
    auto L = layout(t);
    for (std::size_t v = 0; v < t.size(); ++v) {
        if (t.is_leaf(v)) continue;
        int leaf_children = 0;
        for (auto c : L.children(v)) leaf_children += t.is_leaf(c) ? 1 : 0;
        if (leaf_children != 1) return false;
    }
    return true;
}

HalinMap::HalinMap(PlaneTree tree) : tree_(std::move(tree)), leaf_cycle_(leaves(tree_)) {
    const std::size_t n = tree_.size();
    const std::size_t lam = leaf_cycle_.size();
    const std::size_t total = 2 * (n - 1) + 2 * lam + 1;
    const Dart h = total - 1;
    std::vector<Dart> twin(total), next(total);
    tail_.assign(total, npos);
    auto L = layout(tree_);
    for (std::size_t v = 1; v < n; ++v) {
        twin[down(v)] = up(v);
        twin[up(v)] = down(v);
        tail_[down(v)] = L.parent[v];
        tail_[up(v)] = v;
    }
    for (std::size_t i = 0; i < lam; ++i) {
        twin[to_next(i)] = to_prev((i + 1) % lam);
        twin[to_prev((i + 1) % lam)] = to_next(i);
        tail_[to_next(i)] = tail_[to_prev(i)] = leaf_cycle_[i];
    }
    twin[h] = h;
    tail_[h] = 0;
    std::vector<Dart> rot;
    std::size_t leaf_pos = 0;
    for (std::size_t v = 0; v < n; ++v) {
        rot.clear();
        rot.push_back(v == 0 ? h : up(v));
        if (tree_.is_leaf(v)) {
            rot.push_back(to_next(leaf_pos));
            rot.push_back(to_prev(leaf_pos));
            ++leaf_pos;
        } else {
            auto ch = L.children(v);
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) rot.push_back(down(*it));
        }
        for (std::size_t i = 0; i < rot.size(); ++i) next[rot[i]] = rot[(i + 1) % rot.size()];
    }
    Dart root = n > 1 ? down(1) : to_next(0);
    map_ = PlanarMap(std::move(twin), std::move(next), root, h);
    faces_ = map_.faces();
}

bool HalinMap::is_leaf_edge_dart(Dart d) const {
    if (d >= tree_dart_count()) return false;
    return tree_.is_leaf(d / 2 + 1);
}

HalinMap build_halin(const PlaneTree& t) {
    HalinMap h(t);
    auto problems = validate(h);
    if (!problems.empty()) throw InvariantViolation("build_halin: " + problems.front());
    return h;
}

std::vector<std::string> validate(const HalinMap& h, bool require_hstar) {
    std::vector<std::string> out;
    const auto& m = h.map();
    const auto& f = h.faces();

    bool euler = m.euler_characteristic() == 2 && face_degree_sum_ok(m);
    audit::record(audit::Check::euler_formula, euler);
    if (!euler) out.push_back("Euler formula V-E+F=2 fails");

    const std::size_t outer = h.outer_face();
    bool one_edge = f.size() == h.bounded_face_count() + 1;
    for (std::size_t i = 0; i < f.size() && one_edge; ++i) {
        if (i == outer) continue;
        int shared = 0;
        for (Dart d : f.cycles[i]) shared += f.of[m.twin(d)] == outer ? 1 : 0;
        one_edge = shared == 1;
    }
    audit::record(audit::Check::one_boundary_edge, one_edge);
    if (!one_edge) out.push_back("a bounded face does not share exactly one edge with the outer face");

    auto vp = m.vertices();
    bool deg3 = true;
    for (std::size_t i = 0; i < h.leaf_cycle().size(); ++i)
        deg3 = deg3 && vp.degree(vp.of[h.to_next(i)]) == 3;
    audit::record(audit::Check::boundary_degree, deg3);
    if (!deg3) out.push_back("a boundary vertex does not have degree 3");

    if (require_hstar) {
        bool hs = satisfies_hstar(h.tree());
        audit::record(audit::Check::hstar, hs);
        if (!hs) out.push_back("underlying tree violates the one-leaf-child condition");
        // Unary vertices are cut vertices, so only trees with the condition
        // give two-connected maps.
        if (hs && !is_two_connected(m)) out.push_back("map is not two-connected");
    }
    return out;
}

namespace {

template <class T, class F>
T face_product(const HalinMap& h, F&& w) {
    T prod = 1;
    const auto& f = h.faces();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i == h.outer_face()) continue;
        int deg = static_cast<int>(f.degree(i));
        if (deg < 4) throw InvariantViolation("bounded face of degree " + std::to_string(deg));
        prod *= w(deg);
    }
    return prod;
}

} // namespace

double weight(const HalinMap& h, const FaceWeights& w) {
    return face_product<double>(h, [&](int k) { return w(k); });
}

Rational weight_exact(const HalinMap& h, const FaceWeights& w) {
    return face_product<Rational>(h, [&](int k) { return w.exact(k); });
}

std::vector<PlaneTree> enumerate_hstar_trees(std::size_t n, std::size_t guard) {
    if (n < 1) throw InvalidInput("n must be at least 1");
    if (n > guard)
        throw SizeGuard("enumerate_halin: n=" + std::to_string(n) + " exceeds guard " +
                        std::to_string(guard));
    std::vector<PlaneTree> out;
    for (auto& t : enumerate_trees(2 * n, std::max<std::size_t>(2 * guard, 2 * n)))
        if (satisfies_hstar(t)) out.push_back(std::move(t));
    return out;
}

std::vector<HalinMap> enumerate_halin(std::size_t n, std::size_t guard) {
    std::vector<HalinMap> out;
    for (const auto& t : enumerate_hstar_trees(n, guard)) {
        HalinMap h(t);
        auto problems = validate(h, true);
        if (!problems.empty()) throw InvariantViolation("enumerate_halin: " + problems.front());
        out.push_back(std::move(h));
    }
    return out;
}

std::optional<PlaneTree> underlying_tree(const PlanarMap& m,
                                         const std::function<bool(Dart)>& is_boundary) {
    if (!m.half_edge()) return std::nullopt;
    const Dart half = *m.half_edge();
    auto vp = m.vertices();
    const Dart r = m.root_dart();
    if (r == npos || vp.of[r] != vp.of[half]) return std::nullopt;
    std::vector<char> seen(vp.size(), 0);
    std::vector<int> code{0};
    // Children of a vertex are read clockwise starting after the dart that
    // leads back to the parent (at the root: starting at the root dart and
    // stopping at the half-edge).
    struct Frame {
        Dart stop, cur;
        std::size_t slot;
    };
    std::vector<Frame> st{{half, r, 0}};
    seen[vp.of[r]] = 1;
    while (!st.empty()) {
        Frame& fr = st.back();
        Dart d = fr.cur;
        if (d == fr.stop) {
            st.pop_back();
            continue;
        }
        fr.cur = m.prev(d);
        if (is_boundary(d) || m.is_half_edge(d)) continue;
        std::size_t w = vp.of[m.twin(d)];
        if (seen[w]) return std::nullopt;
        seen[w] = 1;
        ++code[fr.slot];
        std::size_t slot = code.size();
        code.push_back(0);
        Dart back = m.twin(d);
        st.push_back({back, m.prev(back), slot});
    }
    if (code.size() != vp.size() || !PlaneTree::is_valid_code(code)) return std::nullopt;
    return PlaneTree(std::move(code));
}

namespace {

// The rooted isomorphism is unique when it exists (it is forced by the root
// dart), so map darts of h and m by a joint traversal from the roots and
// compare the outer faces.
bool same_outer_face(const HalinMap& h, const PlanarMap& m, Dart outer_dart) {
    const PlanarMap& a = h.map();
    std::vector<Dart> to(a.dart_count(), npos);
    std::vector<Dart> stack{a.root_dart()};
    to[a.root_dart()] = m.root_dart();
    while (!stack.empty()) {
        Dart d = stack.back();
        stack.pop_back();
        for (auto [x, y] : {std::pair{a.twin(d), m.twin(to[d])}, std::pair{a.next(d), m.next(to[d])}})
            if (to[x] == npos) {
                to[x] = y;
                stack.push_back(x);
            }
    }
    auto fm = m.faces();
    return fm.of[to[h.outer_dart()]] == fm.of[outer_dart];
}

} // namespace

std::optional<HalinMap> halin_from_map(const PlanarMap& m, std::optional<Dart> outer_dart) {
    if (!m.half_edge() || m.dart_count() < 3) return std::nullopt;
    const Dart half = *m.half_edge();
    auto fp = m.faces();
    if (outer_dart && *outer_dart >= m.dart_count()) return std::nullopt;
    std::optional<HalinMap> fallback;
    for (std::size_t F = 0; F < fp.size(); ++F) {
        if (F == fp.of[half] || (outer_dart && F != fp.of[*outer_dart])) continue;
        auto t = underlying_tree(
            m, [&](Dart d) { return fp.of[d] == F || fp.of[m.twin(d)] == F; });
        if (!t) continue;
        HalinMap h(*t);
        if (!rooted_isomorphic(h.map(), m)) continue;
        if (outer_dart && !same_outer_face(h, m, *outer_dart)) continue;
        if (satisfies_hstar(*t)) return h;
        if (!fallback) fallback = std::move(h);
    }
    return fallback;
}

} // namespace hll

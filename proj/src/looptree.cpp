#include "hll/looptree.hpp"

#include <algorithm>
#include <deque>

#include "hll/error.hpp"

namespace hll {

Graph loop(const PlaneTree& t) {
    auto L = layout(t);
    std::vector<Edge> edges;
    edges.reserve(2 * t.size());
    for (std::size_t v = 0; v < t.size(); ++v) {
        auto ch = L.children(v);
        if (ch.empty()) continue;
        edges.emplace_back(v, ch.front());
        edges.emplace_back(v, ch.back());
        for (std::size_t i = 0; i + 1 < ch.size(); ++i) edges.emplace_back(ch[i], ch[i + 1]);
    }
    return Graph(t.size(), std::move(edges));
}

namespace {

// Largest a_p + a_q + cyclic distance over positions p != q of a cycle.
long long cycle_pair_max(const std::vector<long long>& a) {
    const long long len = static_cast<long long>(a.size());
    if (len < 2) return a.empty() ? 0 : a[0];
    const long long half = len / 2;
    long long best = 0;
    std::deque<long long> dq; // positions with decreasing a[p % len] - p
    auto val = [&](long long p) { return a[static_cast<std::size_t>(p % len)] - p; };
    for (long long q = 0; q < 2 * len; ++q) {
        while (!dq.empty() && dq.front() < q - half) dq.pop_front();
        if (!dq.empty()) best = std::max(best, a[static_cast<std::size_t>(q % len)] + q + val(dq.front()));
        while (!dq.empty() && val(dq.back()) <= val(q)) dq.pop_back();
        dq.push_back(q);
    }
    return best;
}

} // namespace

int loop_diameter(const PlaneTree& t) {
    const std::size_t n = t.size();
    auto L = layout(t);
    // down[v]: farthest distance from v into the looptree below v.
    std::vector<long long> down(n, 0);
    long long diam = 0;
    std::vector<long long> a;
    for (std::size_t v = n; v-- > 0;) {
        auto ch = L.children(v);
        if (ch.empty()) continue;
        const long long len = static_cast<long long>(ch.size()) + 1;
        a.assign(1, 0);
        long long h = 0;
        for (std::size_t i = 0; i < ch.size(); ++i) {
            long long pos = static_cast<long long>(i) + 1;
            long long d = std::min(pos, len - pos);
            a.push_back(down[ch[i]]);
            h = std::max(h, d + down[ch[i]]);
        }
        down[v] = h;
        diam = std::max(diam, cycle_pair_max(a));
    }
    return static_cast<int>(diam);
}

FiniteMetricSpace loop_metric(const PlaneTree& t, unsigned threads) {
    return FiniteMetricSpace::from_graph(loop(t), threads);
}

Graph halin_graph(const HalinMap& h) {
    const auto& m = h.map();
    std::vector<Edge> edges;
    for (Dart d = 0; d < m.dart_count(); ++d) {
        Dart e = m.twin(d);
        if (d < e) edges.emplace_back(h.vertex_of(d), h.vertex_of(e));
    }
    return Graph(h.tree().size(), std::move(edges));
}

FiniteMetricSpace halin_metric(const HalinMap& h, unsigned threads) {
    return FiniteMetricSpace::from_graph(halin_graph(h), threads);
}

ContractedHalin contract_leaves(const HalinMap& h) {
    const auto& t = h.tree();
    const std::size_t n = t.size();
    if (n == 1) throw InvalidInput("contract_leaves needs a tree with an edge");
    std::vector<Dart> leaf_edges;
    for (std::size_t v = 1; v < n; ++v)
        if (t.is_leaf(v)) leaf_edges.push_back(h.down(v));
    MapEdit e = contract_edges_tracked(h.map(), leaf_edges);
    auto vp = e.map.vertices();
    ContractedHalin out;
    out.image.assign(n, npos);
    auto L = layout(t);
    for (std::size_t v = 0; v < n; ++v) {
        if (t.is_leaf(v)) continue;
        Dart keep = v == 0 ? h.half() : h.up(v);
        std::size_t w = vp.of[e.remap[keep]];
        out.image[v] = w;
        out.internal.push_back(v);
    }
    // Rename contracted vertices so that index i is internal[i].
    std::vector<std::size_t> rename(vp.size(), npos);
    for (std::size_t i = 0; i < out.internal.size(); ++i) rename[out.image[out.internal[i]]] = i;
    for (std::size_t v : out.internal) out.image[v] = rename[out.image[v]];
    for (std::size_t v = 0; v < n; ++v)
        if (t.is_leaf(v)) out.image[v] = out.image[L.parent[v]];
    std::vector<Edge> edges;
    for (Dart d = 0; d < e.map.dart_count(); ++d) {
        Dart x = e.map.twin(d);
        if (d < x) edges.emplace_back(rename[vp.of[d]], rename[vp.of[x]]);
    }
    out.graph = Graph(out.internal.size(), std::move(edges));
    return out;
}

FiniteMetricSpace hat_H(const HalinMap& h) {
    if (h.tree().size() == 1) return FiniteMetricSpace(1, {0.0});
    return FiniteMetricSpace::from_graph(contract_leaves(h).graph);
}

Graph hat_L_graph(const MarkedTree& t) {
    const auto& shape = t.shape();
    const std::size_t k = static_cast<std::size_t>(shape.children(0));
    const std::size_t m = static_cast<std::size_t>(t.mark(0));
    Graph base = loop(shape);
    if (m == 0 || m == k) return base;
    auto L = layout(shape);
    auto ch = L.children(0);
    std::vector<Edge> edges;
    // Cycle through the root children with the root between c_m and c_{m+1}.
    std::vector<std::size_t> cyc(ch.begin(), ch.begin() + static_cast<std::ptrdiff_t>(m));
    cyc.push_back(0);
    cyc.insert(cyc.end(), ch.begin() + static_cast<std::ptrdiff_t>(m), ch.end());
    for (std::size_t i = 0; i < cyc.size(); ++i) edges.emplace_back(cyc[i], cyc[(i + 1) % cyc.size()]);
    for (const auto& e : base.edges()) {
        bool root_loop = e.first == 0 || (L.parent[e.first] == 0 && L.parent[e.second] == 0);
        if (!root_loop) edges.push_back(e);
    }
    return Graph(shape.size(), std::move(edges));
}

FiniteMetricSpace hat_L(const MarkedTree& t) { return FiniteMetricSpace::from_graph(hat_L_graph(t)); }

Correspondence contraction_correspondence(const HalinMap& h, const ContractedHalin& c) {
    Correspondence r;
    for (std::size_t v = 0; v < h.tree().size(); ++v) r.pairs.emplace_back(v, c.image[v]);
    return r;
}

Correspondence root_shift_correspondence(const MarkedTree& t) {
    const std::size_t n = t.size();
    Correspondence r;
    for (std::size_t v = 0; v < n; ++v) r.pairs.emplace_back(v, v);
    const std::size_t k = static_cast<std::size_t>(t.shape().children(0));
    const std::size_t m = static_cast<std::size_t>(t.mark(0));
    if (m == 0 || m == k) return r;
    r.pairs.erase(r.pairs.begin());
    auto L = layout(t.shape());
    auto ch = L.children(0);
    r.pairs.emplace_back(0, ch[k - 1]);
    r.pairs.emplace_back(ch[m], 0);
    for (std::size_t j = m + 2; j <= k; ++j) r.pairs.emplace_back(ch[j - 1], ch[j - 2]);
    return r;
}

Correspondence canonical_correspondence(const HalinMap& h, const ContractedHalin& c,
                                        const PhiResult& p) {
    const auto& faces = h.faces();
    auto L = layout(p.marked.shape());
    Correspondence r;
    for (std::size_t i = 0; i < c.internal.size(); ++i) {
        std::size_t y = c.internal[i];
        if (y == 0) {
            r.pairs.emplace_back(i, 0);
            continue;
        }
        std::size_t a = p.vertex_of_face[faces.of[h.down(y)]];
        std::size_t b = p.vertex_of_face[faces.of[h.up(y)]];
        if (a == npos || b == npos) throw InvariantViolation("internal edge borders the outer face");
        r.pairs.emplace_back(i, L.depth[a] > L.depth[b] ? a : b);
    }
    return r;
}

} // namespace hll

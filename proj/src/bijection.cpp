#include "hll/bijection.hpp"

#include <algorithm>

#include "hll/error.hpp"

namespace hll {

MarkedDissection marked_dissection(const HalinMap& h) {
    const auto& m = h.map();
    const auto& fp = h.faces();
    MarkedDissection md;
    md.dual = weak_dual(m, h.outer_dart());
    const auto& wd = md.dual;
    const std::size_t k = wd.map.dart_count();
    md.boundary.assign(k, 0);
    for (Dart x = 0; x < k; ++x) md.boundary[x] = h.is_leaf_edge_dart(wd.to_primal[x]) ? 1 : 0;
    const std::size_t outer = h.outer_face();
    md.outer_corner.assign(wd.dual_vertex_face.size(), npos);
    for (std::size_t v = 0; v < wd.dual_vertex_face.size(); ++v) {
        const auto& cyc = fp.cycles[wd.dual_vertex_face[v]];
        Dart b = npos;
        for (Dart d : cyc) {
            if (fp.of[m.twin(d)] != outer) continue;
            if (b != npos) throw InvariantViolation("bounded face with two outer edges");
            b = d;
        }
        if (b == npos) throw InvariantViolation("bounded face without an outer edge");
        Dart x = wd.from_primal[m.phi(b)];
        if (x == npos) throw InvariantViolation("outer corner is not bordered by a dual edge");
        md.outer_corner[v] = x;
    }
    md.marked_corner = wd.from_primal[h.half()];
    md.root_vertex = wd.dual_vertices.of[md.marked_corner];
    return md;
}

PlanarMap dissection_tree(const MarkedDissection& md) {
    const auto& D = md.map();
    const std::size_t nv = md.outer_corner.size();
    auto faces = D.faces();
    std::size_t polygon = faces.of[D.next(md.outer_corner[0])];
    for (std::size_t v = 0; v < nv; ++v) {
        Dart x = md.outer_corner[v];
        if (!md.boundary[x] || !md.boundary[D.next(x)] || faces.of[D.next(x)] != polygon)
            throw InvariantViolation("dissection vertex not on the outer polygon");
    }
    std::size_t boundary_edges = 0;
    std::vector<Dart> del;
    for (Dart x = 0; x < D.dart_count(); ++x) {
        if (!md.boundary[x]) continue;
        if (faces.of[x] != polygon && faces.of[D.twin(x)] != polygon)
            throw InvariantViolation("polygon edge not on the outer face of the dissection");
        if (x < D.twin(x)) {
            ++boundary_edges;
            del.push_back(x);
        }
    }
    if (faces.degree(polygon) != nv || boundary_edges != nv)
        throw InvariantViolation("outer polygon does not pass once through every vertex");
    if (!is_two_connected(D)) throw InvariantViolation("dissection is not two-connected");
    PlanarMap t;
    try {
        t = delete_edges_tracked(D, del).map;
    } catch (const InvalidInput&) {
        throw InvariantViolation("dual minus polygon edges is disconnected");
    }
    if (!is_tree_map(t)) throw InvariantViolation("dual minus polygon edges is not a tree");
    return t;
}

PhiResult phi_detailed(const HalinMap& h) {
    MarkedDissection md = marked_dissection(h);
    dissection_tree(md);
    const auto& D = md.map();
    const auto& wd = md.dual;
    const std::size_t n = md.outer_corner.size();

    // Tree darts at a dual vertex, clockwise from the outer corner.
    auto tree_darts = [&](std::size_t v, std::size_t* half_pos) {
        std::vector<Dart> out;
        Dart x0 = md.outer_corner[v], x = x0;
        do {
            if (D.is_half_edge(x)) {
                if (half_pos) *half_pos = out.size();
            } else if (!md.boundary[x]) {
                out.push_back(x);
            }
            x = D.prev(x);
        } while (x != x0);
        return out;
    };

    PhiResult res;
    std::vector<int> code, marks;
    code.reserve(n);
    marks.reserve(n);
    res.face_of_vertex.reserve(n);

    struct Frame {
        std::vector<Dart> children;
        std::size_t i;
    };
    std::vector<Frame> st;

    std::size_t half_pos = npos;
    auto root_children = tree_darts(md.root_vertex, &half_pos);
    int root_mark = 0;
    Dart r = h.map().root_dart();
    if (!h.is_leaf_edge_dart(r)) {
        Dart x = wd.from_primal[h.map().twin(r)];
        auto it = std::find(root_children.begin(), root_children.end(), x);
        if (x == npos || it == root_children.end())
            throw InvariantViolation("root edge is not dual to an edge at the root face");
        root_mark = static_cast<int>(it - root_children.begin()) + 1;
    }
    if (half_pos != static_cast<std::size_t>(root_mark))
        throw InvariantViolation("half-edge corner disagrees with the root mark");
    code.push_back(static_cast<int>(root_children.size()));
    marks.push_back(root_mark);
    res.face_of_vertex.push_back(wd.dual_vertex_face[md.root_vertex]);
    st.push_back({std::move(root_children), 0});

    while (!st.empty()) {
        Frame& fr = st.back();
        if (fr.i == fr.children.size()) {
            st.pop_back();
            continue;
        }
        Dart x = fr.children[fr.i++];
        Dart back = D.twin(x);
        std::size_t v = wd.dual_vertices.of[back];
        auto tds = tree_darts(v, nullptr);
        auto it = std::find(tds.begin(), tds.end(), back);
        std::size_t pi = static_cast<std::size_t>(it - tds.begin());
        std::vector<Dart> ch(tds.begin() + pi + 1, tds.end());
        ch.insert(ch.end(), tds.begin(), tds.begin() + pi);
        code.push_back(static_cast<int>(ch.size()));
        marks.push_back(static_cast<int>(tds.size() - 1 - pi));
        res.face_of_vertex.push_back(wd.dual_vertex_face[v]);
        st.push_back({std::move(ch), 0});
    }
    if (code.size() != n) throw InvariantViolation("dual tree does not span the dissection");
    res.marked = MarkedTree(PlaneTree(std::move(code)), std::move(marks));
    res.vertex_of_face.assign(h.faces().size(), npos);
    for (std::size_t v = 0; v < n; ++v) res.vertex_of_face[res.face_of_vertex[v]] = v;
    return res;
}

MarkedTree phi(const HalinMap& h) { return phi_detailed(h).marked; }

PlanarMap phi_inverse_rotation(const MarkedTree& t) {
    const PlaneTree& shape = t.shape();
    const std::size_t n = shape.size();
    auto L = layout(shape);

    // Edge (parent(c), c): dd(c) lies in the face of the parent, du(c) in
    // the face of c. Each face v also owns its two leaf-edge darts a(v) and
    // bb(v), its outer edge dart bo(v) and the opposite outer dart ou(v).
    auto dd = [](std::size_t c) { return 2 * (c - 1); };
    auto du = [](std::size_t c) { return 2 * (c - 1) + 1; };
    const std::size_t base = 2 * (n - 1);
    auto a = [&](std::size_t v) { return base + 4 * v; };
    auto bb = [&](std::size_t v) { return base + 4 * v + 1; };
    auto bo = [&](std::size_t v) { return base + 4 * v + 2; };
    auto ou = [&](std::size_t v) { return base + 4 * v + 3; };
    const Dart h = base + 4 * n;
    const std::size_t total = h + 1;

    std::vector<Dart> phi(total, npos), twin(total, npos);
    std::vector<Dart> cyc;
    for (std::size_t v = 0; v < n; ++v) {
        auto ch = L.children(v);
        const std::size_t m = static_cast<std::size_t>(t.mark(v));
        cyc.assign({bo(v), bb(v)});
        if (v == 0) {
            for (std::size_t j = 0; j < ch.size(); ++j) {
                if (j == m) cyc.push_back(h);
                cyc.push_back(dd(ch[j]));
            }
            if (m == ch.size()) cyc.push_back(h);
        } else {
            for (std::size_t j = m; j < ch.size(); ++j) cyc.push_back(dd(ch[j]));
            cyc.push_back(du(v));
            for (std::size_t j = 0; j < m; ++j) cyc.push_back(dd(ch[j]));
        }
        cyc.push_back(a(v));
        for (std::size_t i = 0; i < cyc.size(); ++i) phi[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }

    // Order of the outer corners along the contour of the tree. Corner j of
    // v follows the subtree of its j-th child; the root uses corner 0.
    std::vector<std::size_t> when(n);
    {
        std::size_t clock = 0;
        struct Frame {
            std::size_t v, j;
        };
        std::vector<Frame> st{{0, 0}};
        while (!st.empty()) {
            Frame& f = st.back();
            auto ch = L.children(f.v);
            if (f.j == static_cast<std::size_t>(f.v == 0 ? 0 : t.mark(f.v))) when[f.v] = clock;
            ++clock;
            if (f.j == ch.size()) {
                st.pop_back();
                continue;
            }
            std::size_t c = ch[f.j++];
            st.push_back({c, 0});
        }
    }
    std::vector<std::size_t> poly(n);
    for (std::size_t v = 0; v < n; ++v) poly[v] = v;
    std::sort(poly.begin(), poly.end(), [&](auto x, auto y) { return when[x] < when[y]; });

    for (std::size_t c = 1; c < n; ++c) {
        twin[dd(c)] = du(c);
        twin[du(c)] = dd(c);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t u = poly[i], w = poly[(i + 1) % n];
        twin[bb(u)] = a(w);
        twin[a(w)] = bb(u);
        twin[bo(u)] = ou(u);
        twin[ou(u)] = bo(u);
        phi[ou(u)] = ou(poly[(i + n - 1) % n]);
    }
    twin[h] = h;

    std::vector<Dart> next(total), phi_inv(total);
    for (Dart d = 0; d < total; ++d) phi_inv[phi[d]] = d;
    for (Dart d = 0; d < total; ++d) next[d] = phi[twin[d]];
    Dart root = twin[phi_inv[h]];
    return PlanarMap(std::move(twin), std::move(next), root, h);
}

HalinMap phi_inverse(const MarkedTree& t) {
    PlanarMap m = phi_inverse_rotation(t);
    const std::size_t base = 2 * (t.size() - 1);
    const Dart h = *m.half_edge();
    auto tree = underlying_tree(m, [&](Dart d) {
        return d >= base && d != h && (d - base) % 4 >= 2;
    });
    if (!tree) throw InvariantViolation("phi_inverse: assembled map has no underlying tree");
    HalinMap out = build_halin(*tree);
    if (out.leaf_cycle().size() != t.size())
        throw InvariantViolation("phi_inverse: wrong number of bounded faces");
    return out;
}

InverseTable::InverseTable(std::size_t n) : maps_(enumerate_halin(n)) {
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        auto [it, fresh] = index_.emplace(phi(maps_[i]), i);
        if (!fresh) injective_ = false;
    }
}

const HalinMap& InverseTable::operator()(const MarkedTree& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) throw InvalidInput("marked tree not in the table");
    return maps_[it->second];
}

PushforwardReport pushforward_distribution(std::size_t n, const FaceWeights& w, const Rational& a,
                                           const Rational& b) {
    PushforwardReport rep;
    rep.n = n;
    auto trees = enumerate_trees(n);
    std::map<PlaneTree, Rational> mass;
    for (const auto& t : trees) mass[t] = 0;
    for (const auto& h : enumerate_halin(n)) {
        Rational wt = weight_exact(h, w);
        rep.partition_function += wt;
        mass[phi(h).shape()] += wt;
    }
    if (rep.partition_function == 0) throw InvalidInput("partition function is zero");

    auto mu = [&](int k) {
        Rational bk = 1;
        for (int i = 0; i < k; ++i) bk *= b;
        return a * bk * (k + 1) * w.exact(k + 4);
    };
    Rational gw_total = 0;
    std::vector<Rational> gw(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i) {
        Rational p = 1;
        for (int k : trees[i].code()) p *= mu(k);
        gw[i] = p;
        gw_total += p;
    }
    if (gw_total == 0) throw InvalidInput("offspring law gives zero mass to every tree");
    rep.exact_match = true;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        PushforwardRow row{trees[i], mass[trees[i]] / rep.partition_function, gw[i] / gw_total};
        Rational diff = abs(row.boltzmann - row.gw);
        if (diff > rep.max_abs_diff) rep.max_abs_diff = diff;
        if (diff != 0) rep.exact_match = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace hll

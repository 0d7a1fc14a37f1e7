#include "hll/planar_map.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hll/error.hpp"

namespace hll {

namespace {

void check_permutation(const std::vector<Dart>& p, const char* what) {
    std::vector<char> seen(p.size(), 0);
    for (Dart d : p) {
        if (d >= p.size() || seen[d])
            throw InvalidInput(std::string(what) + " is not a permutation of the darts");
        seen[d] = 1;
    }
}

bool transitive(const std::vector<Dart>& twin, const std::vector<Dart>& next) {
    const std::size_t n = twin.size();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<Dart> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        Dart d = stack.back();
        stack.pop_back();
        for (Dart e : {twin[d], next[d]}) {
            if (!seen[e]) {
                seen[e] = 1;
                ++count;
                stack.push_back(e);
            }
        }
    }
    return count == n;
}

struct Union {
    std::vector<std::size_t> p;
    explicit Union(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void join(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

// Mutable rotation system used by the editing operations.
struct Work {
    std::vector<Dart> twin, next, prev;
    std::vector<char> alive;
    Dart root;
    std::optional<Dart> half;

    explicit Work(const PlanarMap& m)
        : twin(m.twin_array()), next(m.next_array()), prev(m.dart_count()),
          alive(m.dart_count(), 1), root(m.root_dart()), half(m.half_edge()) {
        for (Dart d = 0; d < next.size(); ++d) prev[next[d]] = d;
    }

    void unlink(Dart x) {
        if (root == x) root = next[x] != x ? next[x] : npos;
        Dart p = prev[x], q = next[x];
        next[p] = q;
        prev[q] = p;
        next[x] = prev[x] = x;
        alive[x] = 0;
    }

    void contract(Dart a) {
        Dart b = twin[a];
        Dart na = next[a], pa = prev[a], nb = next[b], pb = prev[b];
        bool u_rest = na != a, v_rest = nb != b;
        if (root == a || root == b) root = u_rest ? na : (v_rest ? nb : npos);
        if (u_rest && v_rest) {
            next[pa] = nb;
            prev[nb] = pa;
            next[pb] = na;
            prev[na] = pb;
        } else if (u_rest) {
            next[pa] = na;
            prev[na] = pa;
        } else if (v_rest) {
            next[pb] = nb;
            prev[nb] = pb;
        }
        alive[a] = alive[b] = 0;
        next[a] = prev[a] = a;
        next[b] = prev[b] = b;
    }

    MapEdit finish() const {
        const std::size_t n = twin.size();
        std::vector<Dart> remap(n, npos);
        Dart k = 0;
        for (Dart d = 0; d < n; ++d)
            if (alive[d]) remap[d] = k++;
        std::vector<Dart> t(k), nx(k);
        for (Dart d = 0; d < n; ++d) {
            if (!alive[d]) continue;
            t[remap[d]] = remap[twin[d]];
            nx[remap[d]] = remap[next[d]];
        }
        std::optional<Dart> h;
        if (half && alive[*half]) h = remap[*half];
        Dart r = npos;
        if (root != npos && alive[root]) r = remap[root];
        else if (k > 0) r = h ? *h : 0;
        return {PlanarMap(std::move(t), std::move(nx), r, h), std::move(remap)};
    }
};

} // namespace

PlanarMap::PlanarMap() = default;

PlanarMap::PlanarMap(std::vector<Dart> twin, std::vector<Dart> next, Dart root,
                     std::optional<Dart> half_edge)
    : twin_(std::move(twin)), next_(std::move(next)), root_(root), half_(half_edge) {
    const std::size_t n = twin_.size();
    if (next_.size() != n) throw InvalidInput("twin and next have different lengths");
    check_permutation(twin_, "twin");
    check_permutation(next_, "next");
    for (Dart d = 0; d < n; ++d) {
        if (twin_[twin_[d]] != d) throw InvalidInput("twin is not an involution");
        bool fixed = twin_[d] == d;
        bool is_half = half_ && *half_ == d;
        if (fixed != is_half)
            throw InvalidInput("only the half-edge dart may be fixed by twin (dart " +
                               std::to_string(d) + ")");
    }
    if (half_ && *half_ >= n) throw InvalidInput("half-edge dart out of range");
    if (n > 0 && root_ >= n) throw InvalidInput("root dart out of range");
    if (n == 0) root_ = npos;
    if (!transitive(twin_, next_)) throw InvalidInput("map is not connected");
    prev_.resize(n);
    for (Dart d = 0; d < n; ++d) prev_[next_[d]] = d;
}

Partition orbits(std::span<const Dart> perm) {
    Partition p;
    p.of.assign(perm.size(), npos);
    for (Dart d = 0; d < perm.size(); ++d) {
        if (p.of[d] != npos) continue;
        std::size_t id = p.cycles.size();
        p.cycles.emplace_back();
        Dart e = d;
        do {
            p.of[e] = id;
            p.cycles.back().push_back(e);
            e = perm[e];
        } while (e != d);
    }
    return p;
}

std::size_t PlanarMap::edge_count() const { return (twin_.size() - (half_ ? 1 : 0)) / 2; }

Partition PlanarMap::vertices() const { return orbits(next_); }

Partition PlanarMap::faces() const {
    std::vector<Dart> phi(twin_.size());
    for (Dart d = 0; d < phi.size(); ++d) phi[d] = next_[twin_[d]];
    return orbits(phi);
}

std::size_t PlanarMap::vertex_count() const {
    return dart_count() == 0 ? 1 : vertices().size();
}

std::size_t PlanarMap::face_count() const { return dart_count() == 0 ? 1 : faces().size(); }

long long PlanarMap::euler_characteristic() const {
    return static_cast<long long>(vertex_count()) - static_cast<long long>(edge_count()) +
           static_cast<long long>(face_count());
}

bool face_degree_sum_ok(const PlanarMap& m) {
    auto f = m.faces();
    std::size_t s = 0;
    for (const auto& c : f.cycles) s += c.size();
    return s == 2 * m.edge_count() + (m.half_edge() ? 1 : 0);
}

bool is_two_connected(const PlanarMap& m) {
    auto vp = m.vertices();
    const std::size_t nv = vp.size();
    if (nv <= 2) return true;
    // Adjacency of the underlying multigraph without loops.
    std::vector<std::vector<std::size_t>> adj(nv);
    for (Dart d = 0; d < m.dart_count(); ++d) {
        Dart t = m.twin(d);
        if (t == d) continue;
        std::size_t u = vp.of[d], v = vp.of[t];
        if (u != v) adj[u].push_back(v);
    }
    std::vector<int> disc(nv, -1), low(nv, 0);
    int timer = 0;
    bool cut = false;
    // Iterative Tarjan articulation-point search.
    struct Frame {
        std::size_t v, parent, i;
        int children;
    };
    std::vector<Frame> st;
    st.push_back({0, npos, 0, 0});
    disc[0] = low[0] = timer++;
    std::vector<char> parent_skipped(nv, 0);
    while (!st.empty() && !cut) {
        Frame& f = st.back();
        if (f.i < adj[f.v].size()) {
            std::size_t w = adj[f.v][f.i++];
            if (w == f.parent && !parent_skipped[f.v]) {
                parent_skipped[f.v] = 1;
                continue;
            }
            if (disc[w] == -1) {
                disc[w] = low[w] = timer++;
                ++f.children;
                st.push_back({w, f.v, 0, 0});
            } else {
                low[f.v] = std::min(low[f.v], disc[w]);
            }
        } else {
            Frame done = f;
            st.pop_back();
            if (!st.empty()) {
                Frame& p = st.back();
                low[p.v] = std::min(low[p.v], low[done.v]);
                if (p.parent != npos && low[done.v] >= disc[p.v]) cut = true;
            } else if (done.children > 1) {
                cut = true;
            }
        }
    }
    return !cut;
}

bool is_tree_map(const PlanarMap& m) {
    return m.dart_count() == 0 || (m.face_count() == 1 && m.vertex_count() == m.edge_count() + 1);
}

MapEdit contract_edges_tracked(const PlanarMap& m, std::span<const Dart> edges) {
    Work w(m);
    auto vp = m.vertices();
    Union uf(vp.size());
    for (Dart e : edges) {
        if (e >= m.dart_count()) throw InvalidInput("dart out of range");
        if (m.is_half_edge(e)) throw InvalidInput("cannot contract the half-edge");
        if (!w.alive[e]) throw InvalidInput("edge listed twice");
        std::size_t a = uf.find(vp.of[e]), b = uf.find(vp.of[m.twin(e)]);
        if (a == b) throw InvalidInput("cannot contract a loop");
        uf.join(a, b);
        w.contract(e);
    }
    return w.finish();
}

MapEdit delete_edges_tracked(const PlanarMap& m, std::span<const Dart> edges) {
    Work w(m);
    for (Dart e : edges) {
        if (e >= m.dart_count()) throw InvalidInput("dart out of range");
        if (m.is_half_edge(e)) throw InvalidInput("cannot delete the half-edge");
        if (!w.alive[e]) throw InvalidInput("edge listed twice");
        w.unlink(e);
        w.unlink(m.twin(e));
    }
    std::size_t v0 = m.vertex_count(), f0 = m.face_count();
    MapEdit out = [&] {
        try {
            return w.finish();
        } catch (const InvalidInput&) {
            throw InvalidInput("edge deletion disconnects the map");
        }
    }();
    if (out.map.vertex_count() != v0 || out.map.face_count() + edges.size() != f0)
        throw InvalidInput("edge deletion disconnects the map");
    return out;
}

PlanarMap contract_edge(const PlanarMap& m, Dart e) {
    Dart one[1] = {e};
    return contract_edges_tracked(m, one).map;
}

PlanarMap delete_edge(const PlanarMap& m, Dart e) {
    Dart one[1] = {e};
    return delete_edges_tracked(m, one).map;
}

WeakDual weak_dual(const PlanarMap& m, Dart outer_dart) {
    if (outer_dart >= m.dart_count()) throw InvalidInput("outer dart out of range");
    if (!is_two_connected(m)) throw InvalidInput("weak dual needs a two-connected map");
    WeakDual out;
    out.primal_faces = m.faces();
    const auto& fp = out.primal_faces;
    const std::size_t outer = fp.of[outer_dart];
    const std::size_t n = m.dart_count();
    auto kept = [&](Dart d) { return fp.of[d] != outer && fp.of[m.twin(d)] != outer; };
    out.from_primal.assign(n, npos);
    for (Dart d = 0; d < n; ++d) {
        if (!kept(d)) continue;
        out.from_primal[d] = out.to_primal.size();
        out.to_primal.push_back(d);
    }
    const std::size_t k = out.to_primal.size();
    std::vector<Dart> twin(k), next(k);
    for (Dart x = 0; x < k; ++x) {
        Dart d = out.to_primal[x];
        twin[x] = out.from_primal[m.twin(d)];
        Dart e = m.twin(m.prev(d));
        while (!kept(e)) e = m.twin(m.prev(e));
        next[x] = out.from_primal[e];
    }
    std::optional<Dart> half;
    if (m.half_edge() && kept(*m.half_edge())) half = out.from_primal[*m.half_edge()];
    Dart root = 0;
    if (half) root = *half;
    else if (m.root_dart() != npos && out.from_primal[m.root_dart()] != npos)
        root = out.from_primal[m.root_dart()];
    out.map = PlanarMap(std::move(twin), std::move(next), root, half);
    out.dual_vertices = out.map.vertices();
    out.face_dual_vertex.assign(fp.size(), npos);
    for (const auto& c : out.dual_vertices.cycles) {
        std::size_t f = fp.of[out.to_primal[c.front()]];
        out.face_dual_vertex[f] = out.dual_vertex_face.size();
        out.dual_vertex_face.push_back(f);
    }
    std::size_t bounded = fp.size() - 1;
    if (k == 0) {
        if (bounded != 1) throw InvalidInput("bounded face without interior edges");
        for (std::size_t f = 0; f < fp.size(); ++f)
            if (f != outer) {
                out.face_dual_vertex[f] = 0;
                out.dual_vertex_face.push_back(f);
            }
    } else if (out.dual_vertex_face.size() != bounded) {
        throw InvalidInput("bounded face without interior edges");
    }
    return out;
}

bool rooted_isomorphic(const PlanarMap& a, const PlanarMap& b) {
    if (a.dart_count() != b.dart_count()) return false;
    if (a.half_edge().has_value() != b.half_edge().has_value()) return false;
    const std::size_t n = a.dart_count();
    if (n == 0) return true;
    std::vector<Dart> f(n, npos), g(n, npos);
    std::vector<std::pair<Dart, Dart>> stack;
    auto bind = [&](Dart x, Dart y) {
        if (f[x] == npos && g[y] == npos) {
            f[x] = y;
            g[y] = x;
            stack.emplace_back(x, y);
            return true;
        }
        return f[x] == y && g[y] == x;
    };
    if (!bind(a.root_dart(), b.root_dart())) return false;
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        if (a.is_half_edge(x) != b.is_half_edge(y)) return false;
        if (!bind(a.twin(x), b.twin(y)) || !bind(a.next(x), b.next(y))) return false;
    }
    return true;
}

PlanarMap tree_map(const PlaneTree& t) {
    const std::size_t n = t.size();
    if (n == 1) return PlanarMap();
    auto L = layout(t);
    std::vector<Dart> twin(2 * (n - 1)), next(2 * (n - 1));
    auto down = [](std::size_t v) { return 2 * (v - 1); };
    auto up = [](std::size_t v) { return 2 * (v - 1) + 1; };
    for (std::size_t v = 1; v < n; ++v) {
        twin[down(v)] = up(v);
        twin[up(v)] = down(v);
    }
    std::vector<Dart> rot;
    for (std::size_t v = 0; v < n; ++v) {
        rot.clear();
        if (v != 0) rot.push_back(up(v));
        auto ch = L.children(v);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) rot.push_back(down(*it));
        for (std::size_t i = 0; i < rot.size(); ++i) next[rot[i]] = rot[(i + 1) % rot.size()];
    }
    return PlanarMap(std::move(twin), std::move(next), down(1), std::nullopt);
}

} // namespace hll

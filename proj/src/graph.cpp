#include "hll/graph.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "hll/error.hpp"

namespace hll {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    off_.assign(n + 1, 0);
    for (auto [u, v] : edges_) {
        if (u >= n || v >= n) throw InvalidInput("edge endpoint out of range");
        ++off_[u + 1];
        ++off_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) off_[i + 1] += off_[i];
    adj_.resize(off_[n]);
    std::vector<std::size_t> fill(off_.begin(), off_.end() - 1);
    for (auto [u, v] : edges_) {
        adj_[fill[u]++] = v;
        adj_[fill[v]++] = u;
    }
}

Graph graph_of(const PlanarMap& m) {
    auto vp = m.vertices();
    std::vector<Edge> edges;
    for (Dart d = 0; d < m.dart_count(); ++d) {
        Dart t = m.twin(d);
        if (d < t) edges.emplace_back(vp.of[d], vp.of[t]);
    }
    return Graph(m.vertex_count(), std::move(edges));
}

void bfs_into(const Graph& g, std::size_t src, std::vector<int>& dist,
              std::vector<std::size_t>& queue) {
    dist.assign(g.vertex_count(), -1);
    queue.resize(g.vertex_count());
    std::size_t head = 0, tail = 0;
    dist[src] = 0;
    queue[tail++] = src;
    while (head < tail) {
        std::size_t u = queue[head++];
        for (std::size_t w : g.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue[tail++] = w;
            }
        }
    }
}

std::vector<int> bfs(const Graph& g, std::size_t src) {
    std::vector<int> dist;
    std::vector<std::size_t> q;
    bfs_into(g, src, dist, q);
    return dist;
}

bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    auto d = bfs(g, 0);
    return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

int graph_distance(const Graph& g, std::size_t u, std::size_t v) {
    int d = bfs(g, u)[v];
    if (d < 0) throw InvalidInput("vertices are in different components");
    return d;
}

namespace {

unsigned worker_count(unsigned threads, std::size_t work) {
    unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(1, work)));
}

} // namespace

std::vector<int> all_distances(const Graph& g, unsigned threads) {
    const std::size_t n = g.vertex_count();
    if (!is_connected(g)) throw InvalidInput("graph is disconnected");
    std::vector<int> out(n * n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        std::vector<int> dist;
        std::vector<std::size_t> q;
        for (std::size_t s; (s = next.fetch_add(1)) < n;) {
            bfs_into(g, s, dist, q);
            std::copy(dist.begin(), dist.end(), out.begin() + static_cast<std::ptrdiff_t>(s * n));
        }
    };
    unsigned t = worker_count(threads, n / 64);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < t; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return out;
}

int diameter(const Graph& g, unsigned threads) {
    const std::size_t n = g.vertex_count();
    if (n > all_pairs_diameter_limit) return diameter_fringe(g);
    if (!is_connected(g)) throw InvalidInput("graph is disconnected");
    std::atomic<std::size_t> next{0};
    std::atomic<int> best{0};
    auto work = [&] {
        std::vector<int> dist;
        std::vector<std::size_t> q;
        for (std::size_t s; (s = next.fetch_add(1)) < n;) {
            bfs_into(g, s, dist, q);
            int e = *std::max_element(dist.begin(), dist.end());
            int cur = best.load();
            while (e > cur && !best.compare_exchange_weak(cur, e)) {
            }
        }
    };
    unsigned t = worker_count(threads, n / 64);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < t; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return best.load();
}

int diameter_fringe(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n <= 1) return 0;
    std::vector<int> dist, d2;
    std::vector<std::size_t> q;
    auto far = [&](const std::vector<int>& d) {
        return static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
    };
    // Double sweep to pick a vertex near the middle of a long path.
    bfs_into(g, 0, dist, q);
    if (std::any_of(dist.begin(), dist.end(), [](int x) { return x < 0; }))
        throw InvalidInput("graph is disconnected");
    std::size_t a = far(dist);
    bfs_into(g, a, dist, q);
    std::size_t b = far(dist);
    int lb = dist[b];
    bfs_into(g, b, d2, q);
    std::size_t mid = b;
    for (std::size_t v = 0; v < n; ++v)
        if (dist[v] + d2[v] == lb && std::abs(dist[v] - d2[v]) <= 1) {
            mid = v;
            break;
        }
    bfs_into(g, mid, dist, q);
    int ecc = *std::max_element(dist.begin(), dist.end());
    lb = std::max(lb, ecc);
    std::vector<std::vector<std::size_t>> layers(static_cast<std::size_t>(ecc) + 1);
    for (std::size_t v = 0; v < n; ++v) layers[static_cast<std::size_t>(dist[v])].push_back(v);
    // Any pair with both ends in layers < i is at distance <= 2(i-1).
    for (int i = ecc; i > 0; --i) {
        int bi = 0;
        for (std::size_t v : layers[static_cast<std::size_t>(i)]) {
            bfs_into(g, v, d2, q);
            bi = std::max(bi, *std::max_element(d2.begin(), d2.end()));
        }
        lb = std::max(lb, bi);
        if (lb > 2 * (i - 1)) return lb;
    }
    return lb;
}

} // namespace hll

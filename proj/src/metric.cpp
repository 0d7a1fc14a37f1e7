#include "hll/metric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <boost/random/uniform_int_distribution.hpp>

#include "hll/error.hpp"

namespace hll {

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<double> dist, bool validate)
    : n_(n), d_(std::move(dist)) {
    if (d_.size() != n * n) throw InvalidInput("distance matrix has the wrong size");
    if (!validate) return;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(d_[i * n + i]) > metric_slack) throw InvalidInput("non-zero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            double a = d_[i * n + j];
            if (!(a >= -metric_slack)) throw InvalidInput("negative or NaN distance");
            if (std::abs(a - d_[j * n + i]) > metric_slack) throw InvalidInput("asymmetric distances");
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d_[i * n + j] > d_[i * n + k] + d_[k * n + j] + metric_slack)
                    throw InvalidInput("triangle inequality fails");
}

FiniteMetricSpace FiniteMetricSpace::from_graph(const Graph& g, unsigned threads) {
    auto d = all_distances(g, threads);
    return FiniteMetricSpace(g.vertex_count(), std::vector<double>(d.begin(), d.end()), false);
}

double FiniteMetricSpace::diameter() const {
    return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
}

bool is_correspondence(const Correspondence& r, std::size_t nx, std::size_t ny) {
    std::vector<char> sx(nx, 0), sy(ny, 0);
    for (auto [a, b] : r.pairs) {
        if (a >= nx || b >= ny) return false;
        sx[a] = sy[b] = 1;
    }
    return std::all_of(sx.begin(), sx.end(), [](char c) { return c; }) &&
           std::all_of(sy.begin(), sy.end(), [](char c) { return c; });
}

double distortion(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    if (!is_correspondence(r, x.size(), y.size()))
        throw InvalidInput("relation is not a correspondence");
    double best = 0;
    const auto& p = r.pairs;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            best = std::max(best, std::abs(x(p[i].first, p[j].first) - y(p[i].second, p[j].second)));
    return best;
}

Correspondence compose(const Correspondence& r, const Correspondence& s, std::size_t nmid) {
    std::vector<std::vector<std::size_t>> out_of(nmid);
    for (auto [b, c] : s.pairs) out_of[b].push_back(c);
    Correspondence t;
    for (auto [a, b] : r.pairs)
        for (auto c : out_of[b]) t.pairs.emplace_back(a, c);
    std::sort(t.pairs.begin(), t.pairs.end());
    t.pairs.erase(std::unique(t.pairs.begin(), t.pairs.end()), t.pairs.end());
    return t;
}

namespace {

// Depth-first search over assignments. Variable i < nx is f(x_i); variable
// nx + j is g(y_j). Pair lists are kept as (x, y).
struct Search {
    const FiniteMetricSpace& X;
    const FiniteMetricSpace& Y;
    std::size_t nx, ny;
    std::atomic<double>& best;
    double floor;
    double budget;
    std::atomic<std::uint64_t>& evals;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::pair<std::size_t, std::size_t>> best_pairs;
    double local_best = std::numeric_limits<double>::infinity();
    std::uint64_t local_evals = 0;

    std::pair<std::size_t, std::size_t> candidate(std::size_t var, std::size_t val) const {
        return var < nx ? std::pair{var, val} : std::pair{val, var - nx};
    }
    std::size_t domain(std::size_t var) const { return var < nx ? ny : nx; }

    void flush() {
        evals.fetch_add(local_evals);
        local_evals = 0;
        if (static_cast<double>(evals.load()) > budget)
            throw BudgetExceeded("gh_exact: distortion evaluation budget exhausted");
    }

    void run(std::size_t var, double cur) {
        if (cur >= best.load(std::memory_order_relaxed)) return;
        if (var == nx + ny) {
            double b = best.load();
            while (cur < b && !best.compare_exchange_weak(b, cur)) {
            }
            if (cur < local_best) {
                local_best = cur;
                best_pairs = pairs;
            }
            return;
        }
        for (std::size_t v = 0; v < domain(var); ++v) {
            auto c = candidate(var, v);
            double inc = cur;
            double limit = best.load(std::memory_order_relaxed);
            for (const auto& p : pairs) {
                inc = std::max(inc, std::abs(X(c.first, p.first) - Y(c.second, p.second)));
                if (inc >= limit) break;
            }
            local_evals += pairs.size() + 1;
            if (local_evals > (1u << 16)) flush();
            if (inc >= limit) continue;
            pairs.push_back(c);
            run(var + 1, inc);
            pairs.pop_back();
            if (best.load(std::memory_order_relaxed) <= floor) return;
        }
    }
};

} // namespace

GhExact gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double budget,
                 unsigned threads) {
    const std::size_t nx = x.size(), ny = y.size();
    if (nx == 0 || ny == 0) throw InvalidInput("empty metric space");
    double logsize = static_cast<double>(nx) * std::log(static_cast<double>(ny)) +
                     static_cast<double>(ny) * std::log(static_cast<double>(nx));
    if (logsize > std::log(budget) + 1e-9)
        throw BudgetExceeded("gh_exact: |Y|^|X| |X|^|Y| exceeds the budget");
    const double floor = std::abs(x.diameter() - y.diameter());
    // The product relation has distortion max(diam X, diam Y).
    std::atomic<double> best{std::max(x.diameter(), y.diameter()) + 1.0};
    std::atomic<std::uint64_t> evals{0};

    unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    t = static_cast<unsigned>(std::min<std::size_t>(t, ny));
    std::vector<Search> searches;
    searches.reserve(t);
    for (unsigned i = 0; i < t; ++i)
        searches.push_back(Search{x, y, nx, ny, best, floor, budget, evals, {}, {}, 
                                  std::numeric_limits<double>::infinity(), 0});
    std::atomic<std::size_t> next_first{0};
    std::vector<std::exception_ptr> errors(t);
    auto work = [&](unsigned id) {
        try {
            Search& s = searches[id];
            for (std::size_t v; (v = next_first.fetch_add(1)) < ny;) {
                if (best.load() <= floor) break;
                s.pairs.assign(1, {0, v});
                s.run(1, 0.0);
            }
            s.flush();
        } catch (...) {
            errors[id] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < t; ++i) pool.emplace_back(work, i);
    work(0);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    GhExact out;
    out.distortion = best.load();
    out.value = out.distortion / 2;
    out.evaluations = evals.load();
    double lb = std::numeric_limits<double>::infinity();
    for (auto& s : searches)
        if (s.local_best < lb) {
            lb = s.local_best;
            out.best.pairs = s.best_pairs;
        }
    return out;
}

namespace {

// Least distortion of a map from the listed points of a into b.
double least_map_distortion(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                            const std::vector<std::size_t>& pts, double cap) {
    const std::size_t s = pts.size(), nb = b.size();
    double best = cap;
    std::vector<std::size_t> img(s);
    auto rec = [&](auto&& self, std::size_t i, double cur) -> void {
        if (cur >= best) return;
        if (i == s) {
            best = cur;
            return;
        }
        for (std::size_t v = 0; v < nb; ++v) {
            double inc = cur;
            for (std::size_t j = 0; j < i && inc < best; ++j)
                inc = std::max(inc, std::abs(a(pts[i], pts[j]) - b(v, img[j])));
            if (inc >= best) continue;
            img[i] = v;
            self(self, i + 1, inc);
        }
    };
    rec(rec, 0, 0.0);
    return best;
}

std::size_t subset_size(std::size_t n_from, std::size_t n_to) {
    std::size_t s = 1;
    double work = static_cast<double>(n_to);
    while (s < n_from && s < 8 && work * static_cast<double>(n_to) <= 2e5) {
        work *= static_cast<double>(n_to);
        ++s;
    }
    return s;
}

} // namespace

double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y, int trials,
                      std::uint64_t seed) {
    double lb = std::abs(x.diameter() - y.diameter());
    const double cap = std::max(x.diameter(), y.diameter());
    std::mt19937_64 rng(seed);
    for (int side = 0; side < 2; ++side) {
        const auto& a = side == 0 ? x : y;
        const auto& b = side == 0 ? y : x;
        const std::size_t s = subset_size(a.size(), b.size());
        std::vector<std::size_t> idx(a.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (int t = 0; t < trials; ++t) {
            for (std::size_t i = 0; i < s; ++i) {
                boost::random::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
                std::swap(idx[i], idx[pick(rng)]);
            }
            std::vector<std::size_t> pts(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s));
            lb = std::max(lb, least_map_distortion(a, b, pts, cap + 1.0));
        }
    }
    return lb / 2;
}

double gh_upper_bound_via(const Correspondence& r, const FiniteMetricSpace& x,
                          const FiniteMetricSpace& y) {
    return distortion(r, x, y) / 2;
}

} // namespace hll

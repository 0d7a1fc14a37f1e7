#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hll/graph.hpp"

namespace hll {

inline constexpr double metric_slack = 1e-9;

class FiniteMetricSpace {
  public:
    FiniteMetricSpace() = default;
    // Row-major n x n matrix; checks zero diagonal, symmetry and the
    // triangle inequality up to metric_slack.
    FiniteMetricSpace(std::size_t n, std::vector<double> dist, bool validate = true);

    static FiniteMetricSpace from_graph(const Graph& g, unsigned threads = 0);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    const std::vector<double>& matrix() const { return d_; }
    double diameter() const;

  private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

// Pairs (x, y) with x in the first space and y in the second.
struct Correspondence {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

bool is_correspondence(const Correspondence& r, std::size_t nx, std::size_t ny);
double distortion(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

// Relational composition: (a, c) whenever (a, b) in r and (b, c) in s.
Correspondence compose(const Correspondence& r, const Correspondence& s, std::size_t nmid);

inline constexpr double default_gh_budget = 1e9;

struct GhExact {
    double value = 0;       // Gromov-Hausdorff distance
    double distortion = 0;  // 2 * value
    std::uint64_t evaluations = 0;
    Correspondence best;
};

// Every correspondence contains graph(f) ∪ graph(g)^T for some f: X -> Y and
// g: Y -> X, and distortion can only drop on a sub-relation, so the minimum
// over such function pairs is the minimum over all correspondences. The
// search assigns f then g point by point and prunes on the running best.
GhExact gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                 double budget = default_gh_budget, unsigned threads = 0);

// max(|diam X - diam Y| / 2, certificates): for S ⊆ X every correspondence
// restricts to a map S -> Y, so half the least distortion of such maps is a
// lower bound; random subsets of both sides are tried.
double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y, int trials,
                      std::uint64_t seed);
double gh_upper_bound_via(const Correspondence& r, const FiniteMetricSpace& x,
                          const FiniteMetricSpace& y);

} // namespace hll

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/random/discrete_distribution.hpp>

#include "hll/plane_tree.hpp"
#include "hll/weights.hpp"

namespace hll {

using Rng = std::mt19937_64;

// Hurwitz zeta sum_{j>=0} (q+j)^{-s} for s > 1, q > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double q);
double riemann_zeta(double s);

class OffspringDistribution {
  public:
    // Finite support; masses must sum to 1 within 1e-12.
    static OffspringDistribution from_table(std::vector<double> pmf, std::string name = "table");
    // mu(k) = c k^{-1-alpha} for k >= 1 with c = 1/zeta(alpha), mean 1.
    static OffspringDistribution stable(double alpha);

    double pmf(std::uint64_t k) const;
    // mu([k, infinity))
    double tail(std::uint64_t k) const;
    double mean() const { return mean_; }
    bool critical() const;
    // gcd of {k >= 1 : mu(k) > 0}; 0 when mu is concentrated on 0.
    std::uint64_t span() const { return span_; }
    bool aperiodic() const { return span_ == 1; }
    std::optional<double> alpha() const { return alpha_; }
    std::optional<double> tail_constant() const { return c_; }
    // Largest k with mu(k) > 0 when the support is finite.
    std::optional<std::uint64_t> max_support() const;
    const std::string& name() const { return name_; }

  private:
    std::string name_;
    std::vector<double> head_;
    std::vector<double> head_tail_;
    std::optional<double> alpha_, c_;
    double mean_ = 0;
    std::uint64_t span_ = 0;
};

struct CriticalLaw {
    double a = 0, b = 0;
    OffspringDistribution mu;
};

// Solves for mu(k) = a b^k (k+1) w(k+4) with total mass 1 and mean 1.
// radius: radius of convergence of sum w(k+4)(k+1) b^k; infinity for finite
// support. Omitted: 1 for unbounded weights, infinity for tables.
CriticalLaw mu_from_weights(const FaceWeights& w, std::optional<double> radius = std::nullopt);

// (n / (c |Gamma(-alpha)|))^{1/alpha}
double b_n(double alpha, double c, double n);
double b_n(const OffspringDistribution& mu, double n);

// Rotates increments k so that the partial sums of (k_i - 1) stay >= 0
// until the last step; requires sum k_i = len - 1.
std::vector<int> cycle_lemma_rotate(std::span<const int> k);

// Exact draw from GW_mu conditioned on n vertices.
//
// The offspring multiset of n i.i.d. draws is generated value by value: the
// number of draws equal to j among the r draws known to be >= j is
// Binomial(r, mu(j)/mu([j,inf))). Once few draws remain they are drawn one by
// one from mu conditioned on >= j. Attempts whose total cannot equal n-1 are
// rejected early. An accepted multiset is shuffled uniformly, which gives
// i.i.d. draws conditioned on the sum, then rotated by the cycle lemma.
class ConditionedSampler {
  public:
    ConditionedSampler(const OffspringDistribution& mu, std::size_t n);

    PlaneTree operator()(Rng& rng);
    // Accepted increments before rotation.
    std::vector<int> draw_increments(Rng& rng);

    std::uint64_t attempts() const { return attempts_; }
    std::uint64_t accepted() const { return accepted_; }
    std::size_t size() const { return n_; }

  private:
    bool try_counts(Rng& rng);
    std::size_t draw_at_least(std::size_t j, Rng& rng) const;

    std::size_t n_;
    std::vector<double> pmf_, tail_;
    std::vector<std::pair<std::size_t, std::size_t>> counts_;
    std::uint64_t attempts_ = 0, accepted_ = 0;
};

// Reference sampler: n i.i.d. draws (alias table on small values, inverse
// tail beyond), rejected unless they sum to n-1.
class NaiveConditionedSampler {
  public:
    NaiveConditionedSampler(const OffspringDistribution& mu, std::size_t n);
    PlaneTree operator()(Rng& rng);
    std::uint64_t attempts() const { return attempts_; }

  private:
    std::size_t n_;
    std::vector<double> tail_;
    std::size_t cut_;
    boost::random::discrete_distribution<std::size_t, double> alias_;
    std::uint64_t attempts_ = 0;
};

// Throws InvalidInput if no tree with n vertices has positive mass.
void check_support(const OffspringDistribution& mu, std::size_t n);

PlaneTree sample_conditioned(const OffspringDistribution& mu, std::size_t n, std::uint64_t seed);

// Mixes a base seed with cell coordinates into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

} // namespace hll

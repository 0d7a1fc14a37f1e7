#include "hll/gw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "hll/error.hpp"

namespace hll {

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0)) throw InvalidInput("hurwitz_zeta needs s > 1 and q > 0");
    // B_{2k} / (2k)!
    static constexpr double bern[] = {
        1.0 / 12.0,           -1.0 / 720.0,           1.0 / 30240.0,
        -1.0 / 1209600.0,     1.0 / 47900160.0,       -691.0 / 1307674368000.0,
        1.0 / 74724249600.0,  -3617.0 / 10670622842880000.0};
    double sum = 0.0;
    const double shift = q < 12.0 ? std::ceil(12.0 - q) : 0.0;
    for (double j = 0; j < shift; j += 1.0) sum += std::pow(q + j, -s);
    const double x = q + shift;
    sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
    double rising = s;           // s (s+1) ... (s+2k-2)
    double xp = std::pow(x, -s - 1.0);
    for (int k = 1; k <= 8; ++k) {
        sum += bern[k - 1] * rising * xp;
        rising *= (s + 2 * k - 1) * (s + 2 * k);
        xp /= x * x;
    }
    return sum;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

OffspringDistribution OffspringDistribution::from_table(std::vector<double> pmf, std::string name) {
    if (pmf.empty()) throw InvalidInput("empty offspring table");
    double total = 0, mean = 0;
    std::uint64_t g = 0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (!(pmf[k] >= 0)) throw InvalidInput("negative or NaN offspring mass");
        total += pmf[k];
        mean += static_cast<double>(k) * pmf[k];
        if (k >= 1 && pmf[k] > 0) g = std::gcd(g, static_cast<std::uint64_t>(k));
    }
    if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("offspring masses do not sum to 1");
    if (pmf.size() > 1 && pmf[1] >= 1.0) throw InvalidInput("mu(1) must be < 1");
    while (pmf.size() > 1 && pmf.back() == 0) pmf.pop_back();
    OffspringDistribution mu;
    mu.name_ = std::move(name);
    mu.head_ = std::move(pmf);
    mu.head_tail_.assign(mu.head_.size() + 1, 0.0);
    for (std::size_t k = mu.head_.size(); k-- > 0;)
        mu.head_tail_[k] = mu.head_tail_[k + 1] + mu.head_[k];
    mu.mean_ = mean;
    mu.span_ = g;
    return mu;
}

OffspringDistribution OffspringDistribution::stable(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw InvalidInput("stable tail index must lie in (1,2)");
    OffspringDistribution mu;
    mu.name_ = "stable(" + std::to_string(alpha) + ")";
    const double c = 1.0 / riemann_zeta(alpha);
    mu.alpha_ = alpha;
    mu.c_ = c;
    mu.head_ = {1.0 - c * riemann_zeta(1.0 + alpha)};
    mu.head_tail_ = {1.0, 1.0 - mu.head_[0]};
    mu.mean_ = c * riemann_zeta(alpha);
    mu.span_ = 1;
    return mu;
}

double OffspringDistribution::pmf(std::uint64_t k) const {
    if (k < head_.size()) return head_[k];
    if (!alpha_) return 0.0;
    return *c_ * std::pow(static_cast<double>(k), -1.0 - *alpha_);
}

double OffspringDistribution::tail(std::uint64_t k) const {
    if (k < head_tail_.size() && (!alpha_ || k < head_.size())) return head_tail_[k];
    if (!alpha_) return 0.0;
    return *c_ * hurwitz_zeta(1.0 + *alpha_, static_cast<double>(k));
}

bool OffspringDistribution::critical() const { return std::abs(mean_ - 1.0) <= 1e-10; }

std::optional<std::uint64_t> OffspringDistribution::max_support() const {
    if (alpha_) return std::nullopt;
    return head_.size() - 1;
}

CriticalLaw mu_from_weights(const FaceWeights& w, std::optional<double> radius) {
    const bool finite = w.max_degree().has_value();
    const double R = radius ? *radius
                            : (finite ? std::numeric_limits<double>::infinity() : 1.0);
    if (!(R > 0)) throw InvalidInput("radius of convergence must be positive");
    const std::size_t kmax_finite = finite ? static_cast<std::size_t>(std::max(*w.max_degree() - 4, 0)) : 0;

    // Terms t_k = b^k (k+1) w(k+4); returns (sum t_k, sum k t_k).
    auto sums = [&](double b) {
        double s0 = 0, s1 = 0, bk = 1;
        for (std::size_t k = 0;; ++k) {
            double t = bk * static_cast<double>(k + 1) * w(static_cast<int>(k) + 4);
            s0 += t;
            s1 += static_cast<double>(k) * t;
            if (finite && k >= kmax_finite) break;
            if (!finite && k > 16 && t * static_cast<double>(k + 1) < 1e-18 * s1) break;
            if (k > 2000000) break;
            bk *= b;
        }
        return std::pair{s0, s1};
    };
    auto mean_at = [&](double b) {
        auto [s0, s1] = sums(b);
        return s0 > 0 ? s1 / s0 : 0.0;
    };

    double lo = 0.0, hi;
    if (std::isinf(R)) {
        hi = 1.0;
        for (int i = 0; i < 200 && mean_at(hi) < 1.0; ++i) hi *= 2.0;
        if (mean_at(hi) < 1.0)
            throw InvalidInput("no critical b: the mean stays below 1 for all b");
    } else {
        hi = R * (1.0 - 1e-12);
        if (mean_at(hi) < 1.0)
            throw InvalidInput("no critical b inside the radius of convergence");
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (mean_at(mid) < 1.0 ? lo : hi) = mid;
    }
    const double b = 0.5 * (lo + hi);
    const double a = 1.0 / sums(b).first;

    std::vector<double> pmf;
    double total = 0, bk = 1;
    for (std::size_t k = 0;; ++k) {
        double p = a * bk * static_cast<double>(k + 1) * w(static_cast<int>(k) + 4);
        pmf.push_back(p);
        total += p;
        if (finite && k >= kmax_finite) break;
        if (!finite && k > 16 && p < 1e-19) break;
        bk *= b;
    }
    for (auto& p : pmf) p /= total;
    return {a, b, OffspringDistribution::from_table(std::move(pmf), "weights:" + w.name())};
}

double b_n(double alpha, double c, double n) {
    if (!(alpha > 1.0 && alpha < 2.0) || !(c > 0) || !(n > 0))
        throw InvalidInput("b_n needs alpha in (1,2), c > 0, n > 0");
    return std::pow(n / (c * std::abs(std::tgamma(-alpha))), 1.0 / alpha);
}

double b_n(const OffspringDistribution& mu, double n) {
    if (!mu.alpha() || !mu.tail_constant())
        throw InvalidInput("b_n is only available for the pure power-law family");
    return b_n(*mu.alpha(), *mu.tail_constant(), n);
}

std::vector<int> cycle_lemma_rotate(std::span<const int> k) {
    const std::size_t n = k.size();
    long long s = 0, best = std::numeric_limits<long long>::max();
    std::size_t at = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s += k[i] - 1;
        if (s < best) {
            best = s;
            at = i + 1;
        }
    }
    if (s != -1) throw InvalidInput("increments must sum to n-1");
    std::vector<int> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(k[(at + i) % n]);
    return out;
}

void check_support(const OffspringDistribution& mu, std::size_t n) {
    if (n < 1) throw InvalidInput("tree size must be at least 1");
    if (!(mu.pmf(0) > 0)) throw InvalidInput("mu(0) = 0: no finite trees");
    if (n == 1 || mu.aperiodic()) return;
    if (mu.span() == 0) throw InvalidInput("mu is concentrated on 0: only n = 1 is possible");
    // n-1 must be a sum of at most n values from the support (zeros fill up).
    auto kmax = mu.max_support();
    std::vector<std::size_t> support;
    for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(kmax ? *kmax : n - 1, n - 1); ++k)
        if (mu.pmf(k) > 0) support.push_back(k);
    const std::size_t target = n - 1;
    std::vector<std::size_t> parts(target + 1, npos);
    parts[0] = 0;
    for (std::size_t s = 1; s <= target; ++s)
        for (auto k : support)
            if (k <= s && parts[s - k] != npos) parts[s] = std::min(parts[s], parts[s - k] + 1);
    if (parts[target] == npos || parts[target] > n)
        throw InvalidInput("n = " + std::to_string(n) + " is outside the support of the tree size");
}

ConditionedSampler::ConditionedSampler(const OffspringDistribution& mu, std::size_t n) : n_(n) {
    check_support(mu, n);
    pmf_.resize(n);
    tail_.resize(n + 1);
    for (std::size_t k = 0; k < n; ++k) pmf_[k] = mu.pmf(k);
    for (std::size_t k = 0; k <= n; ++k) tail_[k] = mu.tail(k);
}

std::size_t ConditionedSampler::draw_at_least(std::size_t j, Rng& rng) const {
    boost::random::uniform_01<double> u01;
    double x = u01(rng) * tail_[j];
    if (x <= tail_[n_]) return n_;
    // Largest v in [j, n) with tail[v] >= x; tail is non-increasing.
    auto first_below = std::upper_bound(tail_.begin() + static_cast<std::ptrdiff_t>(j),
                                        tail_.begin() + static_cast<std::ptrdiff_t>(n_) + 1, x,
                                        [](double val, double t) { return t < val; });
    return static_cast<std::size_t>(first_below - tail_.begin()) - 1;
}

bool ConditionedSampler::try_counts(Rng& rng) {
    constexpr std::size_t one_by_one = 64;
    counts_.clear();
    const std::size_t target = n_ - 1;
    std::size_t r = n_, sum = 0, j = 0;
    while (r > one_by_one && j < n_) {
        double p = tail_[j] > 0 ? std::min(1.0, pmf_[j] / tail_[j]) : 1.0;
        boost::random::binomial_distribution<long long, double> bin(static_cast<long long>(r), p);
        auto c = static_cast<std::size_t>(bin(rng));
        if (c > 0) {
            sum += j * c;
            if (sum > target) return false;
            counts_.emplace_back(j, c);
            r -= c;
        }
        ++j;
        if (r > 0 && sum + r * j > target) return false;
    }
    if (r > 0 && j >= n_) return false;
    for (; r > 0; --r) {
        std::size_t v = draw_at_least(j, rng);
        if (v >= n_) return false;
        sum += v;
        if (sum > target) return false;
        counts_.emplace_back(v, 1);
    }
    return sum == target;
}

std::vector<int> ConditionedSampler::draw_increments(Rng& rng) {
    if (n_ == 1) return {0};
    do {
        ++attempts_;
    } while (!try_counts(rng));
    ++accepted_;
    std::vector<int> k;
    k.reserve(n_);
    for (auto [v, c] : counts_) k.insert(k.end(), c, static_cast<int>(v));
    for (std::size_t i = k.size(); i > 1; --i) {
        boost::random::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(k[i - 1], k[pick(rng)]);
    }
    return k;
}

PlaneTree ConditionedSampler::operator()(Rng& rng) {
    auto k = draw_increments(rng);
    return PlaneTree(cycle_lemma_rotate(k));
}

NaiveConditionedSampler::NaiveConditionedSampler(const OffspringDistribution& mu, std::size_t n)
    : n_(n) {
    check_support(mu, n);
    cut_ = std::min<std::size_t>(n, 1u << 16);
    std::vector<double> w(cut_ + 1);
    for (std::size_t k = 0; k < cut_; ++k) w[k] = mu.pmf(k);
    w[cut_] = mu.tail(cut_);
    alias_ = boost::random::discrete_distribution<std::size_t, double>(w.begin(), w.end());
    tail_.resize(n + 1);
    for (std::size_t k = cut_; k <= n; ++k) tail_[k] = mu.tail(k);
}

PlaneTree NaiveConditionedSampler::operator()(Rng& rng) {
    if (n_ == 1) return PlaneTree();
    const std::size_t target = n_ - 1;
    std::vector<int> k(n_);
    boost::random::uniform_01<double> u01;
    while (true) {
        ++attempts_;
        std::size_t sum = 0;
        bool ok = true;
        for (std::size_t i = 0; i < n_ && ok; ++i) {
            std::size_t v = alias_(rng);
            if (v == cut_) {
                double x = u01(rng) * tail_[cut_];
                if (x <= tail_[n_]) {
                    ok = false;
                    break;
                }
                auto it = std::upper_bound(tail_.begin() + static_cast<std::ptrdiff_t>(cut_),
                                           tail_.end(), x,
                                           [](double val, double t) { return t < val; });
                v = static_cast<std::size_t>(it - tail_.begin()) - 1;
            }
            sum += v;
            ok = sum <= target;
            k[i] = static_cast<int>(v);
        }
        if (ok && sum == target) return PlaneTree(cycle_lemma_rotate(k));
    }
}

PlaneTree sample_conditioned(const OffspringDistribution& mu, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    ConditionedSampler s(mu, n);
    return s(rng);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(base) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

} // namespace hll

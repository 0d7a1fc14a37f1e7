// Runs the eight acceptance checks and prints one PASS/FAIL line for each.
// Every tolerance and threshold is pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "hll/audit.hpp"
#include "hll/bijection.hpp"
#include "hll/experiments.hpp"
#include "hll/gw.hpp"
#include "hll/lemma.hpp"
#include "hll/looptree.hpp"

using namespace hll;

namespace {

// 1
constexpr std::size_t count_max_n = 5;
constexpr double count_seconds = 10;
// 2
constexpr std::size_t bij_exhaustive_max_n = 5;
constexpr std::size_t bij_random_instances = 1000;
constexpr std::size_t bij_random_sizes[] = {10, 50, 200};
// 3
constexpr std::size_t degree_max_n = 5;
// 4
constexpr std::size_t push_n = 4;
constexpr double push_float_tolerance = 1e-12;
// 5
constexpr std::size_t lemma_exhaustive_max_n = 3;
constexpr std::size_t lemma_random_n = 50;
constexpr std::size_t lemma_random_instances = 100;
constexpr double lemma_contraction_bound = 2.0; // GH(H, hat H)
constexpr double lemma_root_shift_bound = 0.5;  // GH(L, hat L)
constexpr double lemma_seconds = 300;
// 6
constexpr std::size_t chi_n = 4;
constexpr std::size_t chi_samples = 100000;
constexpr std::size_t chi_seeds = 10;
constexpr double chi_p_threshold = 0.01;
constexpr std::size_t chi_min_passing = 9;
// 7
constexpr double scaling_alpha = 1.5;
constexpr std::size_t scaling_samples = 200;
constexpr double scaling_slope_window = 0.1;
constexpr double scaling_height_ratio = 0.5;
constexpr double scaling_seconds = 600;
// shared
constexpr std::uint64_t base_seed = 20240601;
constexpr double slack = 1e-9;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::uint64_t closed_form_count(std::uint64_t n) {
    std::uint64_t b = 1;
    for (std::uint64_t i = 1; i <= n - 1; ++i) b = b * (2 * n - 1 + i) / i;
    return b / n;
}

Outcome counting() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (std::size_t n = 1; n <= count_max_n; ++n) {
        std::uint64_t maps = enumerate_halin(n).size();
        std::uint64_t sum = 0;
        for (const auto& t : enumerate_trees(n)) sum += marking_count(t);
        std::uint64_t closed = closed_form_count(n);
        ok = ok && maps == sum && sum == closed;
        detail += fmt("%s%llu", n > 1 ? "," : "", static_cast<unsigned long long>(maps));
    }
    double s = seconds_since(t0);
    ok = ok && s < count_seconds;
    return {ok, "counts " + detail + fmt(" (%.2fs, limit %.0fs)", s, count_seconds)};
}

Outcome bijection() {
    std::size_t failures = 0, checked = 0;
    for (std::size_t n = 1; n <= bij_exhaustive_max_n; ++n) {
        auto maps = enumerate_halin(n);
        auto marked = enumerate_marked(n);
        std::set<MarkedTree> images;
        for (const auto& h : maps) {
            MarkedTree t = phi(h);
            images.insert(t);
            ++checked;
            if (phi_inverse(t).tree() != h.tree()) ++failures;
        }
        if (images != std::set<MarkedTree>(marked.begin(), marked.end()) || images.size() != maps.size())
            ++failures;
    }
    auto law = mu_from_weights(FaceWeights::ones());
    for (std::size_t n : bij_random_sizes) {
        ConditionedSampler s(law.mu, n);
        for (std::size_t i = 0; i < bij_random_instances; ++i) {
            Rng rng(derive_seed(base_seed + 2, n, i));
            MarkedTree t = uniformly_marked(s(rng), rng);
            HalinMap h = phi_inverse(t);
            ++checked;
            if (!validate(h, true).empty() || phi(h) != t || phi_inverse(phi(h)).tree() != h.tree()) ++failures;
        }
    }
    return {failures == 0, fmt("%zu maps checked, %zu failures", checked, failures)};
}

Outcome degree_law() {
    std::size_t faces = 0, violations = 0;
    for (std::size_t n = 1; n <= degree_max_n; ++n)
        for (const auto& h : enumerate_halin(n)) {
            PhiResult r = phi_detailed(h);
            for (std::size_t v = 0; v < n; ++v) {
                ++faces;
                std::size_t deg = h.faces().degree(r.face_of_vertex[v]);
                if (static_cast<std::size_t>(r.marked.shape().children(v)) + 4 != deg) ++violations;
            }
        }
    return {violations == 0, fmt("%zu faces, %zu violations", faces, violations)};
}

Outcome pushforward() {
    auto r = pushforward_distribution(push_n, FaceWeights::ones(), Rational(4, 9), Rational(1, 3));
    Rational total = 0;
    double worst_float = 0;
    for (const auto& row : r.rows) {
        total += row.gw;
        worst_float = std::max(worst_float, std::abs(static_cast<double>(row.boltzmann) -
                                                     static_cast<double>(row.gw)));
    }
    bool ok = r.exact_match && r.max_abs_diff == 0 && total == 1 && r.rows.size() == 5 &&
              worst_float <= push_float_tolerance;
    return {ok, fmt("%zu shapes, exact rational match: %s, max |diff| = %s", r.rows.size(),
                    r.exact_match ? "yes" : "no", r.max_abs_diff.str().c_str())};
}

Outcome lemma() {
    auto t0 = std::chrono::steady_clock::now();
    std::size_t exhaustive = 0, exhaustive_fail = 0;
    double worst_margin = 1e300;
    for (std::size_t n = 1; n <= lemma_exhaustive_max_n; ++n)
        for (const auto& h : enumerate_halin(n)) {
            auto r = check_lemma_bound(h);
            ++exhaustive;
            bool ok = r.gh_exact && r.ok && r.gh_contraction_exact &&
                      *r.gh_contraction_exact <= lemma_contraction_bound + slack && r.gh_root_shift_exact &&
                      *r.gh_root_shift_exact <= lemma_root_shift_bound + slack &&
                      r.dis_canonical <= 2.0 * r.height + slack;
            if (r.gh_exact) worst_margin = std::min(worst_margin, r.margin);
            exhaustive_fail += !ok;
        }

    auto law = mu_from_weights(FaceWeights::ones());
    ConditionedSampler s(law.mu, lemma_random_n);
    std::size_t fail_contraction = 0, fail_shift = 0, fail_canonical = 0;
    double worst_contraction = 0, worst_shift = 0, worst_canonical_excess = -1e300;
    for (std::size_t i = 0; i < lemma_random_instances; ++i) {
        Rng rng(derive_seed(base_seed + 5, lemma_random_n, i));
        MarkedTree t = uniformly_marked(s(rng), rng);
        HalinMap h = phi_inverse(t);
        validate(h, true);
        PhiResult p = phi_detailed(h);
        auto c = contract_leaves(h);
        auto H = halin_metric(h, 1);
        auto Hh = FiniteMetricSpace::from_graph(c.graph, 1);
        auto L = loop_metric(p.marked.shape(), 1);
        auto Lh = hat_L(p.marked);
        double half_contraction = distortion(contraction_correspondence(h, c), H, Hh) / 2;
        double half_shift = distortion(root_shift_correspondence(p.marked), L, Lh) / 2;
        double canonical = distortion(canonical_correspondence(h, c, p), Hh, Lh);
        int ht = height(p.marked.shape());
        worst_contraction = std::max(worst_contraction, half_contraction);
        worst_shift = std::max(worst_shift, half_shift);
        worst_canonical_excess = std::max(worst_canonical_excess, canonical - 2.0 * ht);
        fail_contraction += half_contraction > lemma_contraction_bound + slack;
        fail_shift += half_shift > lemma_root_shift_bound + slack;
        fail_canonical += canonical > 2.0 * ht + slack;
    }
    double sec = seconds_since(t0);
    bool ok = exhaustive_fail == 0 && fail_contraction == 0 && fail_shift == 0 && fail_canonical == 0 &&
              sec < lemma_seconds;
    return {ok, fmt("exhaustive n<=%zu: %zu/%zu ok (min margin %.2f); random n=%zu: "
                    "dis(H,hatH)/2>2 in %zu/%zu (max %.1f), dis(L,hatL)/2>1/2 in %zu (max %.1f), "
                    "dis(canonical)>2Height in %zu (max excess %.1f); %.1fs",
                    lemma_exhaustive_max_n, exhaustive - exhaustive_fail, exhaustive, worst_margin,
                    lemma_random_n, fail_contraction, lemma_random_instances, worst_contraction, fail_shift,
                    worst_shift, fail_canonical, worst_canonical_excess, sec)};
}

std::size_t chi_square_passes(const OffspringDistribution& mu, std::uint64_t salt, std::string& ps) {
    std::map<PlaneTree, double> exact;
    double z = 0;
    for (const auto& t : enumerate_trees(chi_n)) {
        double p = 1;
        for (int k : t.code()) p *= mu.pmf(static_cast<std::uint64_t>(k));
        exact[t] = p;
        z += p;
    }
    std::size_t passing = 0;
    boost::math::chi_squared dist(static_cast<double>(exact.size() - 1));
    for (std::size_t seed = 0; seed < chi_seeds; ++seed) {
        Rng rng(derive_seed(base_seed + salt, seed));
        ConditionedSampler s(mu, chi_n);
        std::map<PlaneTree, std::size_t> seen;
        for (std::size_t i = 0; i < chi_samples; ++i) ++seen[s(rng)];
        double stat = 0;
        for (const auto& [t, p] : exact) {
            double e = p / z * static_cast<double>(chi_samples);
            double o = static_cast<double>(seen[t]);
            stat += (o - e) * (o - e) / e;
        }
        double pv = boost::math::cdf(boost::math::complement(dist, stat));
        passing += pv > chi_p_threshold && seen.size() == exact.size();
        ps += fmt("%s%.2f", seed ? "," : "", pv);
    }
    return passing;
}

Outcome sampler() {
    std::string p_stable, p_geo;
    std::size_t a = chi_square_passes(OffspringDistribution::stable(1.5), 61, p_stable);
    std::size_t b = chi_square_passes(mu_from_weights(FaceWeights::ones()).mu, 62, p_geo);
    return {a >= chi_min_passing && b >= chi_min_passing,
            fmt("stable: %zu/%zu seeds p>%.2f [%s]; geometric: %zu/%zu [%s]", a, chi_seeds, chi_p_threshold,
                p_stable.c_str(), b, chi_seeds, p_geo.c_str())};
}

Outcome scaling() {
    auto t0 = std::chrono::steady_clock::now();
    ScalingRunConfig cfg;
    cfg.alpha = scaling_alpha;
    for (std::size_t n = 1u << 10; n <= 1u << 16; n <<= 1) cfg.sizes.push_back(n);
    cfg.samples = scaling_samples;
    cfg.seed = base_seed + 7;
    auto r = scaling_run(cfg);
    double sec = seconds_since(t0);
    double target = 1 / scaling_alpha;
    bool slope_ok = std::abs(r.slope - target) <= scaling_slope_window;
    bool ratio_ok = r.height_ratio < scaling_height_ratio;
    return {slope_ok && ratio_ok && sec < scaling_seconds,
            fmt("slope %.3f (95%% CI [%.3f, %.3f], target %.3f +- %.1f); median Height/b_n ratio %.3f (< %.1f); "
                "%.0fs",
                r.slope, r.slope_ci_low, r.slope_ci_high, target, scaling_slope_window, r.height_ratio,
                scaling_height_ratio, sec)};
}

Outcome invariants() {
    auto c = audit::snapshot();
    std::string detail;
    for (int i = 0; i < audit::check_count; ++i)
        detail += fmt("%s%s %llu/%llu", i ? ", " : "", audit::name(static_cast<audit::Check>(i)).c_str(),
                      static_cast<unsigned long long>(c.violated[i]),
                      static_cast<unsigned long long>(c.checked[i]));
    bool all_seen = true;
    for (int i = 0; i < audit::check_count; ++i) all_seen = all_seen && c.checked[i] > 0;
    return {c.total_violated() == 0 && all_seen, "violations/checks: " + detail};
}

} // namespace

int main() {
    audit::reset();
    std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
        {"1 counting identity", counting},   {"2 bijection", bijection},
        {"3 degree law", degree_law},        {"4 pushforward", pushforward},
        {"5 GH height bound", lemma},        {"6 sampler exactness", sampler},
        {"7 scaling exponents", scaling},    {"8 structural invariants", invariants},
    };
    int failed = 0;
    for (const auto& [name, fn] : checks) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}

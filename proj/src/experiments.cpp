#include "hll/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "hll/audit.hpp"
#include "hll/bijection.hpp"
#include "hll/error.hpp"
#include "hll/halin.hpp"
#include "hll/looptree.hpp"
#include "hll/parallel.hpp"

namespace hll {

Quantiles quantiles(std::vector<double> v) {
    Quantiles q;
    if (v.empty()) return q;
    std::sort(v.begin(), v.end());
    auto at = [&](double p) {
        double x = p * static_cast<double>(v.size() - 1);
        auto i = static_cast<std::size_t>(std::floor(x));
        double f = x - static_cast<double>(i);
        return i + 1 < v.size() ? v[i] * (1 - f) + v[i + 1] * f : v[i];
    };
    q.q10 = at(0.10);
    q.q25 = at(0.25);
    q.q50 = at(0.50);
    q.q75 = at(0.75);
    q.q90 = at(0.90);
    return q;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) return 0;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(a.size()) -
                                 static_cast<double>(j) / static_cast<double>(b.size())));
    }
    return d;
}

namespace {

void check_config(double alpha, const std::vector<std::size_t>& sizes, std::size_t samples) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw InvalidInput("alpha must lie in (1,2)");
    if (sizes.empty()) throw InvalidInput("no sizes given");
    if (samples == 0) throw InvalidInput("samples must be positive");
    for (auto n : sizes)
        if (n < 1) throw InvalidInput("sizes must be positive");
}

int tree_height(const PlaneTree& t) { return height(t); }

int max_step(const PlaneTree& t) {
    return *std::max_element(t.code().begin(), t.code().end()) - 1;
}

} // namespace

ScalingResult scaling_run(const ScalingRunConfig& cfg) {
    check_config(cfg.alpha, cfg.sizes, cfg.samples);
    const auto mu = OffspringDistribution::stable(cfg.alpha);
    ScalingResult res;
    res.config = cfg;
    const std::size_t cells = cfg.sizes.size() * cfg.samples;
    res.rows.resize(cells);
    parallel_for(cells, cfg.threads, [&](std::size_t cell) {
        const std::size_t si = cell / cfg.samples, s = cell % cfg.samples;
        const std::size_t n = cfg.sizes[si];
        ScalingRow row;
        row.n = n;
        row.sample = s;
        row.seed = derive_seed(cfg.seed, n, s);
        row.b_n = b_n(mu, static_cast<double>(n));
        Rng rng(row.seed);
        ConditionedSampler sampler(mu, n);
        PlaneTree t = sampler(rng);
        row.attempts = sampler.attempts();
        if (t.size() != n) throw InvariantViolation("sampled tree has the wrong size");
        LukasiewiczPath w = lukasiewicz(t);
        if (w.values().back() != -1) throw InvariantViolation("path does not end at -1");
        row.height = tree_height(t);
        row.diam_loop = loop_diameter(t);
        row.max_jump = max_step(t);
        if (cfg.halin_diameters && n <= cfg.halin_max_n) {
            MarkedTree mt = uniformly_marked(t, rng);
            HalinMap h = phi_inverse(mt);
            auto problems = validate(h, true);
            if (!problems.empty()) throw InvariantViolation(problems.front());
            row.diam_halin = diameter_fringe(halin_graph(h));
        }
        res.rows[cell] = row;
    });

    std::vector<double> lx, ly;
    for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
        SizeSummary sm;
        sm.n = cfg.sizes[si];
        std::vector<double> h, d, j, hb, db, jb;
        std::uint64_t attempts = 0;
        for (std::size_t s = 0; s < cfg.samples; ++s) {
            const auto& r = res.rows[si * cfg.samples + s];
            sm.b_n = r.b_n;
            h.push_back(r.height);
            d.push_back(r.diam_loop);
            j.push_back(r.max_jump);
            hb.push_back(r.height / r.b_n);
            db.push_back(r.diam_loop / r.b_n);
            jb.push_back(r.max_jump / r.b_n);
            attempts += r.attempts;
            if (r.diam_halin) {
                ++sm.halin_pairs;
                if (std::abs(*r.diam_halin - r.diam_loop) > 2 * r.height + 3) ++sm.halin_gap_violations;
            }
        }
        sm.median_height = quantiles(h).q50;
        sm.median_diam_loop = quantiles(d).q50;
        sm.median_max_jump = quantiles(j).q50;
        sm.height_over_bn = quantiles(hb);
        sm.diam_over_bn = quantiles(db);
        sm.jump_over_bn = quantiles(jb);
        sm.acceptance_rate = attempts ? static_cast<double>(cfg.samples) / static_cast<double>(attempts) : 1.0;
        lx.push_back(std::log(static_cast<double>(sm.n)));
        ly.push_back(std::log(std::max(sm.median_diam_loop, 1e-300)));
        res.sizes.push_back(sm);
    }

    const std::size_t k = lx.size();
    if (k >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < k; ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(k);
        my /= static_cast<double>(k);
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < k; ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        res.slope = sxx > 0 ? sxy / sxx : 0;
        res.intercept = my - res.slope * mx;
        res.slope_ci_low = res.slope_ci_high = res.slope;
        if (k >= 3 && sxx > 0) {
            double sse = 0;
            for (std::size_t i = 0; i < k; ++i) {
                double e = ly[i] - res.intercept - res.slope * lx[i];
                sse += e * e;
            }
            res.slope_se = std::sqrt(sse / static_cast<double>(k - 2) / sxx);
            boost::math::students_t dist(static_cast<double>(k - 2));
            double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
            res.slope_ci_low = res.slope - tq * res.slope_se;
            res.slope_ci_high = res.slope + tq * res.slope_se;
        }
    }
    const auto& first = res.sizes.front();
    const auto& last = res.sizes.back();
    res.height_ratio = first.height_over_bn.q50 > 0 ? last.height_over_bn.q50 / first.height_over_bn.q50 : 0;
    return res;
}

std::string scaling_csv(const ScalingResult& r) {
    std::ostringstream os;
    os.precision(17);
    os << "n,seed,sample,height,diam_loop,max_jump,b_n";
    if (r.config.halin_diameters) os << ",diam_halin";
    os << "\n";
    for (const auto& row : r.rows) {
        os << row.n << ',' << row.seed << ',' << row.sample << ',' << row.height << ','
           << row.diam_loop << ',' << row.max_jump << ',' << row.b_n;
        if (r.config.halin_diameters) {
            os << ',';
            if (row.diam_halin) os << *row.diam_halin;
        }
        os << "\n";
    }
    return os.str();
}

namespace {

nlohmann::json quantiles_json(const Quantiles& q) {
    return {{"q10", q.q10}, {"q25", q.q25}, {"q50", q.q50}, {"q75", q.q75}, {"q90", q.q90}};
}

} // namespace

nlohmann::json scaling_summary(const ScalingResult& r) {
    nlohmann::json sizes = nlohmann::json::array();
    for (const auto& s : r.sizes) {
        nlohmann::json j = {{"n", s.n},
                            {"b_n", s.b_n},
                            {"median_height", s.median_height},
                            {"median_diam_loop", s.median_diam_loop},
                            {"median_max_jump", s.median_max_jump},
                            {"height_over_bn", quantiles_json(s.height_over_bn)},
                            {"diam_loop_over_bn", quantiles_json(s.diam_over_bn)},
                            {"max_jump_over_bn", quantiles_json(s.jump_over_bn)},
                            {"acceptance_rate", s.acceptance_rate}};
        if (s.halin_pairs) {
            j["halin_pairs"] = s.halin_pairs;
            j["halin_gap_violations"] = s.halin_gap_violations;
        }
        sizes.push_back(j);
    }
    return {{"alpha", r.config.alpha},
            {"seed", r.config.seed},
            {"samples", r.config.samples},
            {"sizes", sizes},
            {"regression",
             {{"slope", r.slope},
              {"intercept", r.intercept},
              {"slope_se", r.slope_se},
              {"slope_ci95", {r.slope_ci_low, r.slope_ci_high}},
              {"target", 1.0 / r.config.alpha}}},
            {"height_ratio_last_over_first", r.height_ratio}};
}

ProfileResult lukasiewicz_profile(const ProfileConfig& cfg) {
    check_config(cfg.alpha, cfg.sizes, cfg.samples);
    if (!(cfg.final_fraction > 0 && cfg.final_fraction < 1))
        throw InvalidInput("final fraction must lie in (0,1)");
    const auto mu = OffspringDistribution::stable(cfg.alpha);
    ProfileResult res;
    res.config = cfg;
    const std::size_t cells = cfg.sizes.size() * cfg.samples;
    struct Cell {
        double sup = 0, fin = 0, jump = 0;
        bool end_ok = true, sup_ok = true;
    };
    std::vector<Cell> out(cells);
    parallel_for(cells, cfg.threads, [&](std::size_t cell) {
        const std::size_t si = cell / cfg.samples, s = cell % cfg.samples;
        const std::size_t n = cfg.sizes[si];
        Rng rng(derive_seed(cfg.seed, n, s));
        ConditionedSampler sampler(mu, n);
        PlaneTree t = sampler(rng);
        LukasiewiczPath p = lukasiewicz(t);
        const auto& w = p.values();
        const double bn = b_n(mu, static_cast<double>(n));
        Cell c;
        long long sup = 0, jump = -1;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            sup = std::max(sup, w[i]);
            jump = std::max(jump, w[i + 1] - w[i]);
        }
        auto idx = static_cast<std::size_t>(std::floor(cfg.final_fraction * static_cast<double>(n)));
        c.sup = static_cast<double>(sup) / bn;
        c.fin = static_cast<double>(w[idx]) / bn;
        c.jump = static_cast<double>(jump) / bn;
        c.end_ok = w.back() == -1;
        c.sup_ok = sup >= 0;
        audit::record(audit::Check::path_endpoint, c.end_ok);
        out[cell] = c;
    });
    std::vector<double> prev_sup, prev_jump;
    for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
        ProfileSize ps;
        ps.n = cfg.sizes[si];
        ps.b_n = b_n(mu, static_cast<double>(ps.n));
        std::vector<double> sup, fin, jump;
        for (std::size_t s = 0; s < cfg.samples; ++s) {
            const auto& c = out[si * cfg.samples + s];
            sup.push_back(c.sup);
            fin.push_back(c.fin);
            jump.push_back(c.jump);
            ps.endpoint_violations += c.end_ok ? 0 : 1;
            ps.sup_violations += c.sup_ok ? 0 : 1;
        }
        ps.sup_w = quantiles(sup);
        ps.final_w = quantiles(fin);
        ps.max_jump = quantiles(jump);
        if (si > 0) {
            ps.ks_sup_w = ks_distance(prev_sup, sup);
            ps.ks_max_jump = ks_distance(prev_jump, jump);
        }
        prev_sup = sup;
        prev_jump = jump;
        res.sizes.push_back(ps);
    }
    return res;
}

nlohmann::json profile_json(const ProfileResult& r) {
    nlohmann::json sizes = nlohmann::json::array();
    for (const auto& s : r.sizes) {
        nlohmann::json j = {{"n", s.n},
                            {"b_n", s.b_n},
                            {"sup_w_over_bn", quantiles_json(s.sup_w)},
                            {"final_w_over_bn", quantiles_json(s.final_w)},
                            {"max_jump_over_bn", quantiles_json(s.max_jump)},
                            {"max_jump_iqr", s.max_jump.q75 - s.max_jump.q25},
                            {"endpoint_violations", s.endpoint_violations},
                            {"sup_violations", s.sup_violations}};
        if (s.ks_sup_w) j["ks_sup_w_vs_previous"] = *s.ks_sup_w;
        if (s.ks_max_jump) j["ks_max_jump_vs_previous"] = *s.ks_max_jump;
        sizes.push_back(j);
    }
    return {{"alpha", r.config.alpha},
            {"seed", r.config.seed},
            {"samples", r.config.samples},
            {"final_fraction", r.config.final_fraction},
            {"sizes", sizes}};
}

} // namespace hll

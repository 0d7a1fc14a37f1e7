#include "hll/lemma.hpp"

#include <algorithm>
#include <cmath>

#include "hll/bijection.hpp"
#include "hll/error.hpp"
#include "hll/looptree.hpp"

namespace hll {

namespace {

std::optional<double> try_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                const LemmaOptions& opt) {
    try {
        return gh_exact(x, y, opt.budget, opt.threads).value;
    } catch (const BudgetExceeded&) {
        return std::nullopt;
    }
}

} // namespace

LemmaReport check_lemma_bound(const HalinMap& h, const LemmaOptions& opt) {
    LemmaReport rep;
    PhiResult p = phi_detailed(h);
    const auto& shape = p.marked.shape();
    rep.n = shape.size();
    rep.height = height(shape);
    rep.bound = rep.height + 1.5;

    FiniteMetricSpace H = halin_metric(h, opt.threads);
    FiniteMetricSpace L = loop_metric(shape, opt.threads);
    FiniteMetricSpace Lh = hat_L(p.marked);

    Correspondence shift = root_shift_correspondence(p.marked);
    rep.dis_root_shift = distortion(shift, L, Lh);

    Correspondence composite;
    if (h.tree().size() == 1) {
        throw InvalidInput("Halin map without edges");
    }
    ContractedHalin c = contract_leaves(h);
    FiniteMetricSpace Hh = FiniteMetricSpace::from_graph(c.graph);
    Correspondence contraction = contraction_correspondence(h, c);
    Correspondence canonical = canonical_correspondence(h, c, p);
    rep.dis_contraction = distortion(contraction, H, Hh);
    rep.dis_canonical = distortion(canonical, Hh, Lh);
    rep.contraction_diameter_gap = std::abs(H.diameter() - Hh.diameter());

    // H -> hat H -> hat L -> Loop T; the last step uses the inverse relation
    // of the root shift.
    Correspondence back;
    for (auto [a, b] : shift.pairs) back.pairs.emplace_back(b, a);
    composite = compose(compose(contraction, canonical, Hh.size()), back, Lh.size());
    rep.dis_composite = distortion(composite, H, L);

    double three_term = (rep.dis_contraction + rep.dis_root_shift + rep.dis_canonical) / 2;
    rep.gh_upper = std::min(three_term, rep.dis_composite / 2);

    if (opt.exact_parts) {
        rep.gh_contraction_exact = try_exact(H, Hh, opt);
        rep.gh_root_shift_exact = try_exact(L, Lh, opt);
    }
    rep.gh_exact = try_exact(H, L, opt);
    if (rep.gh_exact) {
        rep.gh_lower = *rep.gh_exact;
        rep.gh_upper = std::min(rep.gh_upper, *rep.gh_exact);
    } else {
        rep.gh_lower = std::abs(H.diameter() - L.diameter()) / 2;
    }
    double judged = rep.gh_exact ? *rep.gh_exact : rep.gh_upper;
    rep.margin = rep.bound - judged;
    rep.ok = judged <= rep.bound + metric_slack;
    return rep;
}

} // namespace hll

#pragma once

#include <cstddef>
#include <optional>

#include "hll/halin.hpp"
#include "hll/metric.hpp"

namespace hll {

struct LemmaOptions {
    // Exact GH(H, Loop T) is attempted when |Y|^|X| |X|^|Y| fits this budget.
    double budget = default_gh_budget;
    // Also compute exact GH for the two auxiliary pairs when they fit.
    bool exact_parts = true;
    unsigned threads = 0;
};

struct LemmaReport {
    std::size_t n = 0;          // bounded faces
    int height = 0;             // Height of the dual tree
    double bound = 0;           // Height + 3/2

    std::optional<double> gh_exact; // GH(H, Loop T) when within budget
    double gh_lower = 0;            // certified lower bound (exact value if known)
    double gh_upper = 0;            // best correspondence upper bound

    // Distortions of the explicit correspondences.
    double dis_contraction = 0;     // H vs hat H
    double dis_root_shift = 0;      // Loop T vs hat L
    double dis_canonical = 0;       // hat H vs hat L
    double dis_composite = 0;       // H vs Loop T through the chain

    std::optional<double> gh_contraction_exact; // GH(H, hat H)
    std::optional<double> gh_root_shift_exact;  // GH(Loop T, hat L)
    double contraction_diameter_gap = 0;        // |diam H - diam hat H|

    // GH(H, Loop T) <= Height + 3/2, judged on the exact value when known and
    // on the upper bound otherwise.
    bool ok = false;
    double margin = 0;              // bound minus the judged value
};

LemmaReport check_lemma_bound(const HalinMap& h, const LemmaOptions& opt = {});

} // namespace hll

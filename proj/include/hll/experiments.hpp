#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hll/gw.hpp"
#include "hll/plane_tree.hpp"

namespace hll {

struct ScalingRunConfig {
    double alpha = 1.5;
    std::vector<std::size_t> sizes;
    std::size_t samples = 200;
    std::uint64_t seed = 42;
    // Also build a Halin map from a uniformly marked sample and record its
    // diameter, for n up to halin_max_n.
    bool halin_diameters = false;
    std::size_t halin_max_n = 10000;
    unsigned threads = 0;
};

struct ScalingRow {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t sample = 0;
    int height = 0;
    int diam_loop = 0;
    int max_jump = 0; // largest step of the Lukasiewicz path, i.e. max k_v - 1
    double b_n = 0;
    std::optional<int> diam_halin;
    std::uint64_t attempts = 0;
};

struct Quantiles {
    double q10 = 0, q25 = 0, q50 = 0, q75 = 0, q90 = 0;
};

Quantiles quantiles(std::vector<double> v);

struct SizeSummary {
    std::size_t n = 0;
    double b_n = 0;
    double median_height = 0;
    double median_diam_loop = 0;
    double median_max_jump = 0;
    Quantiles height_over_bn, diam_over_bn, jump_over_bn;
    double acceptance_rate = 0;
    std::size_t halin_pairs = 0;
    std::size_t halin_gap_violations = 0; // |diam H - diam Loop| > 2 Height + 3
};

struct ScalingResult {
    ScalingRunConfig config;
    std::vector<ScalingRow> rows;
    std::vector<SizeSummary> sizes;
    // Least squares fit of log median diam(Loop) against log n.
    double slope = 0, intercept = 0, slope_se = 0, slope_ci_low = 0, slope_ci_high = 0;
    // median Height/b_n at the largest size over the same at the smallest.
    double height_ratio = 0;
};

ScalingResult scaling_run(const ScalingRunConfig& cfg);
std::string scaling_csv(const ScalingResult& r);
nlohmann::json scaling_summary(const ScalingResult& r);

struct ProfileConfig {
    double alpha = 1.5;
    std::vector<std::size_t> sizes;
    std::size_t samples = 200;
    std::uint64_t seed = 42;
    double final_fraction = 0.9; // W sampled at this fraction of the path
    unsigned threads = 0;
};

struct ProfileSize {
    std::size_t n = 0;
    double b_n = 0;
    Quantiles sup_w, final_w, max_jump; // all divided by b_n
    std::size_t endpoint_violations = 0; // W_zeta != -1
    std::size_t sup_violations = 0;      // sup W < 0
    // Kolmogorov-Smirnov distance to the previous size (reported only).
    std::optional<double> ks_sup_w, ks_max_jump;
};

struct ProfileResult {
    ProfileConfig config;
    std::vector<ProfileSize> sizes;
};

ProfileResult lukasiewicz_profile(const ProfileConfig& cfg);
nlohmann::json profile_json(const ProfileResult& r);

double ks_distance(std::vector<double> a, std::vector<double> b);

} // namespace hll

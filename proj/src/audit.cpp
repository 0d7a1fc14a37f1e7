#include "hll/audit.hpp"

#include <atomic>

namespace hll::audit {

namespace {
std::array<std::atomic<std::uint64_t>, check_count> g_checked{};
std::array<std::atomic<std::uint64_t>, check_count> g_violated{};
} // namespace

std::uint64_t Counts::total_checked() const {
    std::uint64_t s = 0;
    for (auto v : checked) s += v;
    return s;
}

std::uint64_t Counts::total_violated() const {
    std::uint64_t s = 0;
    for (auto v : violated) s += v;
    return s;
}

void record(Check c, bool ok) {
    auto i = static_cast<std::size_t>(c);
    g_checked[i].fetch_add(1, std::memory_order_relaxed);
    if (!ok) g_violated[i].fetch_add(1, std::memory_order_relaxed);
}

Counts snapshot() {
    Counts out;
    for (int i = 0; i < check_count; ++i) {
        out.checked[i] = g_checked[i].load(std::memory_order_relaxed);
        out.violated[i] = g_violated[i].load(std::memory_order_relaxed);
    }
    return out;
}

void reset() {
    for (int i = 0; i < check_count; ++i) {
        g_checked[i].store(0);
        g_violated[i].store(0);
    }
}

std::string name(Check c) {
    switch (c) {
    case Check::lukasiewicz_validity: return "lukasiewicz_validity";
    case Check::path_endpoint: return "path_endpoint";
    case Check::euler_formula: return "euler_formula";
    case Check::one_boundary_edge: return "one_boundary_edge";
    case Check::boundary_degree: return "boundary_degree";
    case Check::hstar: return "hstar";
    case Check::count_: break;
    }
    return "?";
}

} // namespace hll::audit

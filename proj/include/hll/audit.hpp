#pragma once

#include <array>
#include <cstdint>
#include <string>

// Process-wide counters of structural invariant checks. Constructors and
// validators record every check they perform so that a run can report how
// many objects were audited and how many violations were seen.
namespace hll::audit {

enum class Check : int {
    lukasiewicz_validity = 0,
    path_endpoint,
    euler_formula,
    one_boundary_edge,
    boundary_degree,
    hstar,
    count_
};

inline constexpr int check_count = static_cast<int>(Check::count_);

struct Counts {
    std::array<std::uint64_t, check_count> checked{};
    std::array<std::uint64_t, check_count> violated{};

    std::uint64_t total_checked() const;
    std::uint64_t total_violated() const;
};

void record(Check c, bool ok);
Counts snapshot();
void reset();
std::string name(Check c);

} // namespace hll::audit

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "hll/halin.hpp"
#include "hll/plane_tree.hpp"

namespace hll {

enum class RenderFormat { dot, svg };

RenderFormat parse_render_format(std::string_view s);

inline constexpr std::size_t render_guard = 5000;

// Deterministic drawings with fixed coordinates (neato-style pos="x,y!" in
// DOT). Trees and looptrees are drawn top-down by depth; Halin maps radially
// with the leaves on a circle and the boundary cycle highlighted.
std::string render_tree(const PlaneTree& t, RenderFormat f);
std::string render_looptree(const PlaneTree& t, RenderFormat f);
std::string render_halin(const HalinMap& h, RenderFormat f);

} // namespace hll

#pragma once

#include <cstddef>
#include <vector>

#include "hll/bijection.hpp"
#include "hll/graph.hpp"
#include "hll/halin.hpp"
#include "hll/metric.hpp"
#include "hll/plane_tree.hpp"

namespace hll {

// Loop(T): for each vertex v with k >= 1 children v1..vk, the edges (v,v1),
// (v,vk) (twice when k = 1) and (vi, vi+1). Vertex ids are lex indices.
Graph loop(const PlaneTree& t);

// Exact diameter of Loop(T) in O(n): the looptree is a cactus whose blocks
// are the cycles (v, v1, ..., vk).
int loop_diameter(const PlaneTree& t);

FiniteMetricSpace loop_metric(const PlaneTree& t, unsigned threads = 0);

// Graph of a Halin map on the vertices of its underlying tree (lex ids).
Graph halin_graph(const HalinMap& h);
FiniteMetricSpace halin_metric(const HalinMap& h, unsigned threads = 0);

// Halin map with every leaf edge contracted.
struct ContractedHalin {
    Graph graph;
    // Contracted vertex i is the internal tree vertex internal[i].
    std::vector<std::size_t> internal;
    // Tree vertex -> contracted vertex (a leaf goes to its parent's image).
    std::vector<std::size_t> image;
};

ContractedHalin contract_leaves(const HalinMap& h);
FiniteMetricSpace hat_H(const HalinMap& h);

// Loop(T) with the root moved on its loop so that it sits between the
// children m and m+1, m the root mark; unchanged when m is 0 or k_root.
Graph hat_L_graph(const MarkedTree& t);
FiniteMetricSpace hat_L(const MarkedTree& t);

// H -> hat H: each vertex to its image after contraction.
Correspondence contraction_correspondence(const HalinMap& h, const ContractedHalin& c);

// Loop(T) -> hat L: identity away from the root loop; on it the root goes to
// the last child, child m+1 to the root and child j to child j-1 for
// m+2 <= j <= k.
Correspondence root_shift_correspondence(const MarkedTree& t);

// hat H -> hat L: the root goes to the root; another internal vertex y goes
// to the deeper endpoint of the dual tree edge crossing the edge from y to
// its parent.
Correspondence canonical_correspondence(const HalinMap& h, const ContractedHalin& c,
                                        const PhiResult& p);

} // namespace hll

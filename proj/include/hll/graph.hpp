#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hll/planar_map.hpp"

namespace hll {

using Edge = std::pair<std::size_t, std::size_t>;

// Undirected multigraph in compressed adjacency form. Loops appear twice in
// the adjacency of their vertex.
class Graph {
  public:
    Graph() = default;
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const std::size_t> neighbors(std::size_t v) const {
        return {adj_.data() + off_[v], off_[v + 1] - off_[v]};
    }

  private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> off_{0};
    std::vector<std::size_t> adj_;
};

// Underlying graph of a map; vertex ids are the vertex orbit indices.
Graph graph_of(const PlanarMap& m);

// Unit-length BFS distances from src; -1 where unreachable.
std::vector<int> bfs(const Graph& g, std::size_t src);
void bfs_into(const Graph& g, std::size_t src, std::vector<int>& dist, std::vector<std::size_t>& queue);

bool is_connected(const Graph& g);
int graph_distance(const Graph& g, std::size_t u, std::size_t v);

// Row-major |V| x |V| matrix; threads = 0 means hardware concurrency.
std::vector<int> all_distances(const Graph& g, unsigned threads = 0);

inline constexpr std::size_t all_pairs_diameter_limit = 20000;

// Exact diameter: all-pairs BFS up to all_pairs_diameter_limit vertices,
// otherwise the certified fringe method below.
int diameter(const Graph& g, unsigned threads = 0);

// Exact diameter by iterative fringe upper bounds: BFS from a central vertex
// found by double sweeps, then eccentricities of the deepest layers until the
// lower bound certifies the answer.
int diameter_fringe(const Graph& g);

} // namespace hll

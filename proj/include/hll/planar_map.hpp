#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hll/plane_tree.hpp"

namespace hll {

using Dart = std::size_t;

// Orbits of a permutation on darts. cycles[i] lists the orbit in
// permutation order; of[d] is the index of the orbit containing d.
struct Partition {
    std::vector<std::size_t> of;
    std::vector<std::vector<Dart>> cycles;

    std::size_t size() const { return cycles.size(); }
    std::size_t degree(std::size_t i) const { return cycles[i].size(); }
};

// Rotation system on the sphere. next is counterclockwise around vertices;
// faces are the orbits of next∘twin and each dart has its face on the right,
// so the face to the left of d is the face of twin(d). The optional half-edge
// is a dart fixed by twin that counts for the degree of its face only.
class PlanarMap {
  public:
    PlanarMap(); // one vertex, no darts
    PlanarMap(std::vector<Dart> twin, std::vector<Dart> next, Dart root,
              std::optional<Dart> half_edge);

    std::size_t dart_count() const { return twin_.size(); }
    Dart twin(Dart d) const { return twin_[d]; }
    Dart next(Dart d) const { return next_[d]; }
    Dart prev(Dart d) const { return prev_[d]; }
    Dart phi(Dart d) const { return next_[twin_[d]]; }
    Dart root_dart() const { return root_; }
    std::optional<Dart> half_edge() const { return half_; }
    bool is_half_edge(Dart d) const { return half_ && *half_ == d; }

    const std::vector<Dart>& twin_array() const { return twin_; }
    const std::vector<Dart>& next_array() const { return next_; }

    std::size_t edge_count() const;
    Partition vertices() const;
    Partition faces() const;
    std::size_t vertex_count() const;
    std::size_t face_count() const;
    long long euler_characteristic() const;

    friend bool operator==(const PlanarMap&, const PlanarMap&) = default;

  private:
    std::vector<Dart> twin_, next_, prev_;
    Dart root_ = npos;
    std::optional<Dart> half_;
};

Partition orbits(std::span<const Dart> perm);

// Degree sum check: face degrees add up to 2E plus one for the half-edge.
bool face_degree_sum_ok(const PlanarMap& m);

// No vertex whose removal disconnects the underlying graph (loops ignored).
bool is_two_connected(const PlanarMap& m);

// A map with a single face is a plane tree (possibly with a half-edge).
bool is_tree_map(const PlanarMap& m);

// Result of an edit: the new map and, for each old dart, its new identifier
// or npos when it was removed.
struct MapEdit {
    PlanarMap map;
    std::vector<Dart> remap;
};

MapEdit contract_edges_tracked(const PlanarMap& m, std::span<const Dart> edges);
MapEdit delete_edges_tracked(const PlanarMap& m, std::span<const Dart> edges);
PlanarMap contract_edge(const PlanarMap& m, Dart e);
PlanarMap delete_edge(const PlanarMap& m, Dart e);

struct WeakDual {
    PlanarMap map;
    std::vector<Dart> to_primal;        // dual dart -> primal dart (same edge)
    std::vector<Dart> from_primal;      // primal dart -> dual dart or npos
    std::vector<std::size_t> dual_vertex_face; // dual vertex -> primal face index
    std::vector<std::size_t> face_dual_vertex; // primal face -> dual vertex or npos
    Partition primal_faces;
    Partition dual_vertices;
};

// Dual restricted to the bounded faces; the face containing outer_dart is
// removed together with every edge on its boundary. The rotation at a dual
// vertex is counterclockwise, i.e. the reverse of the primal face orbit. The
// half-edge, if any, is kept at the vertex of its face.
WeakDual weak_dual(const PlanarMap& m, Dart outer_dart);

// Same map up to renaming darts, with roots and half-edges corresponding.
bool rooted_isomorphic(const PlanarMap& a, const PlanarMap& b);

// Plane tree drawn as a map: counterclockwise order parent, last child, …,
// first child; the root dart goes to the first child.
PlanarMap tree_map(const PlaneTree& t);

} // namespace hll

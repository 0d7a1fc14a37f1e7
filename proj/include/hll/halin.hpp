#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hll/planar_map.hpp"
#include "hll/plane_tree.hpp"
#include "hll/weights.hpp"

namespace hll {

bool satisfies_hstar(const PlaneTree& t);

// Plane tree plus the cycle through its leaves in lexicographic order.
//
// Dart layout: for a tree vertex v >= 1, down(v) = 2(v-1) goes from the
// parent to v and up(v) = down(v)+1 goes back. For the i-th leaf, to_next(i)
// and to_prev(i) are the boundary darts towards leaf i+1 and leaf i-1. The
// half-edge is the last dart. Counterclockwise rotation at an internal vertex
// is (parent, last child, ..., first child), the half-edge taking the parent
// slot at the root; at a leaf it is (up, to_next, to_prev).
class HalinMap {
  public:
    explicit HalinMap(PlaneTree tree);

    const PlanarMap& map() const { return map_; }
    const PlaneTree& tree() const { return tree_; }
    const std::vector<std::size_t>& leaf_cycle() const { return leaf_cycle_; }
    const Partition& faces() const { return faces_; }

    std::size_t vertex_of(Dart d) const { return tail_[d]; }
    Dart down(std::size_t v) const { return 2 * (v - 1); }
    Dart up(std::size_t v) const { return 2 * (v - 1) + 1; }
    Dart to_next(std::size_t i) const { return tree_dart_count() + 2 * i; }
    Dart to_prev(std::size_t i) const { return tree_dart_count() + 2 * i + 1; }
    Dart half() const { return map_.dart_count() - 1; }

    std::size_t tree_dart_count() const { return 2 * (tree_.size() - 1); }
    bool is_boundary_dart(Dart d) const { return d >= tree_dart_count() && d != half(); }
    // Tree edge whose lower endpoint is a leaf.
    bool is_leaf_edge_dart(Dart d) const;
    // Tree vertex at the far end of a dart.
    std::size_t head_of(Dart d) const { return tail_[map_.twin(d)]; }

    Dart outer_dart() const { return to_prev(0); }
    std::size_t outer_face() const { return faces_.of[to_prev(0)]; }
    std::size_t root_face() const { return faces_.of[half()]; }
    // Number of bounded faces; equals the number of leaves.
    std::size_t bounded_face_count() const { return leaf_cycle_.size(); }

  private:
    PlaneTree tree_;
    std::vector<std::size_t> leaf_cycle_;
    PlanarMap map_;
    std::vector<std::size_t> tail_;
    Partition faces_;
};

HalinMap build_halin(const PlaneTree& t);

// Structural checks; each is also recorded in the audit counters. Returns
// the list of violations, empty when all hold.
std::vector<std::string> validate(const HalinMap& h, bool require_hstar = false);

double weight(const HalinMap& h, const FaceWeights& w);
Rational weight_exact(const HalinMap& h, const FaceWeights& w);

inline constexpr std::size_t default_halin_guard = 6;

std::vector<PlaneTree> enumerate_hstar_trees(std::size_t n, std::size_t guard = default_halin_guard);
std::vector<HalinMap> enumerate_halin(std::size_t n, std::size_t guard = default_halin_guard);

// Reads the tree left after removing boundary darts: depth-first from the
// root dart, children clockwise. Fails if the remaining graph is not a tree
// rooted at the half-edge vertex.
std::optional<PlaneTree> underlying_tree(const PlanarMap& m,
                                         const std::function<bool(Dart)>& is_boundary);

// Recognizes an arbitrary rotation system as a Halin map: tries each face
// other than the half-edge face as the outer face (only the face of
// outer_dart when given), reads off the tree and accepts when the rebuilt map
// is a relabeling of the input. Distinct Halin maps can share the same
// rooted rotation system and differ only in their outer face, so without
// outer_dart the answer is the first match with the one-leaf-child condition.
std::optional<HalinMap> halin_from_map(const PlanarMap& m, std::optional<Dart> outer_dart = std::nullopt);

} // namespace hll

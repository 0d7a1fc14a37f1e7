#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "hll/halin.hpp"
#include "hll/planar_map.hpp"
#include "hll/plane_tree.hpp"
#include "hll/weights.hpp"

namespace hll {

// Weak dual of a Halin map seen as a dissection of a polygon.
struct MarkedDissection {
    WeakDual dual;
    // Per dual dart: the edge lies on the outer polygon.
    std::vector<char> boundary;
    // Per dual vertex: the dart x such that the corner between x and
    // next(x) faces the outside of the polygon.
    std::vector<Dart> outer_corner;
    std::size_t root_vertex = 0;
    // Half-edge dart of the dual: marks the corner of the root vertex dual
    // to the root vertex of the Halin map.
    Dart marked_corner = npos;

    const PlanarMap& map() const { return dual.map; }
};

MarkedDissection marked_dissection(const HalinMap& h);

// Checks that every vertex lies on the polygon, that the dissection is
// two-connected and that dropping the polygon edges leaves a tree. Returns
// the tree (as a map) or throws InvariantViolation.
PlanarMap dissection_tree(const MarkedDissection& d);

struct PhiResult {
    MarkedTree marked;
    std::vector<std::size_t> face_of_vertex; // tree vertex -> face index of H
    std::vector<std::size_t> vertex_of_face; // face index of H -> tree vertex, npos for outer
};

PhiResult phi_detailed(const HalinMap& h);
MarkedTree phi(const HalinMap& h);

// Rotation system of the Halin map assembled face by face from T*; its darts
// are not in the canonical layout of HalinMap.
PlanarMap phi_inverse_rotation(const MarkedTree& t);
HalinMap phi_inverse(const MarkedTree& t);

// Brute-force inverse: tabulates phi over all of enumerate_halin(n).
class InverseTable {
  public:
    explicit InverseTable(std::size_t n);
    const HalinMap& operator()(const MarkedTree& t) const;
    std::size_t size() const { return index_.size(); }
    bool injective() const { return injective_; }

  private:
    std::vector<HalinMap> maps_;
    std::map<MarkedTree, std::size_t> index_;
    bool injective_ = true;
};

struct PushforwardRow {
    PlaneTree shape;
    Rational boltzmann; // law of the shape of phi(H) under the Boltzmann measure
    Rational gw;        // GW_mu(tau = shape | zeta = n)
};

struct PushforwardReport {
    std::size_t n = 0;
    Rational partition_function;
    std::vector<PushforwardRow> rows;
    Rational max_abs_diff;
    bool exact_match = false;
};

// mu(k) = a b^k (k+1) w(k+4); the conditional law does not depend on a, b.
PushforwardReport pushforward_distribution(std::size_t n, const FaceWeights& w,
                                           const Rational& a = 1, const Rational& b = 1);

} // namespace hll

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/random/uniform_int_distribution.hpp>

namespace hll {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Rooted ordered tree stored as its child counts in depth-first order.
class PlaneTree {
  public:
    PlaneTree();
    explicit PlaneTree(std::vector<int> code);

    static bool is_valid_code(std::span<const int> code);
    static PlaneTree parse(std::string_view text);

    const std::vector<int>& code() const { return code_; }
    std::size_t size() const { return code_.size(); }
    int children(std::size_t v) const { return code_[v]; }
    bool is_leaf(std::size_t v) const { return code_[v] == 0; }

    std::string to_string() const;

    friend bool operator==(const PlaneTree&, const PlaneTree&) = default;
    friend auto operator<=>(const PlaneTree&, const PlaneTree&) = default;

  private:
    std::vector<int> code_;
};

struct VertexInfo {
    int depth;
    int children;
    std::size_t parent;
};

std::vector<VertexInfo> lex_vertices(const PlaneTree& t);

// Parent/child structure in compressed form. Children of v, in order, are
// child_list[child_offset[v] .. child_offset[v+1]).
struct TreeLayout {
    std::vector<std::size_t> parent;
    std::vector<int> depth;
    std::vector<std::size_t> child_offset;
    std::vector<std::size_t> child_list;
    std::vector<int> child_index; // 1-based position of v among its siblings

    std::span<const std::size_t> children(std::size_t v) const {
        return {child_list.data() + child_offset[v],
                child_offset[v + 1] - child_offset[v]};
    }
};

TreeLayout layout(const PlaneTree& t);

class LukasiewiczPath {
  public:
    explicit LukasiewiczPath(std::vector<long long> values);

    static bool is_valid(std::span<const long long> values);

    const std::vector<long long>& values() const { return values_; }
    std::size_t length() const { return values_.size() - 1; }

    friend bool operator==(const LukasiewiczPath&, const LukasiewiczPath&) = default;

  private:
    std::vector<long long> values_;
};

LukasiewiczPath lukasiewicz(const PlaneTree& t);
PlaneTree tree_from_lukasiewicz(const LukasiewiczPath& p);

int height(const PlaneTree& t);
std::size_t zeta(const PlaneTree& t);
std::size_t leaf_count(const PlaneTree& t);
std::vector<std::size_t> leaves(const PlaneTree& t);

class MarkedTree {
  public:
    MarkedTree();
    MarkedTree(PlaneTree shape, std::vector<int> marks);

    static MarkedTree parse(std::string_view text);

    const PlaneTree& shape() const { return shape_; }
    const std::vector<int>& marks() const { return marks_; }
    int mark(std::size_t v) const { return marks_[v]; }
    std::size_t size() const { return shape_.size(); }

    std::string to_string() const;

    friend bool operator==(const MarkedTree&, const MarkedTree&) = default;
    friend auto operator<=>(const MarkedTree&, const MarkedTree&) = default;

  private:
    PlaneTree shape_;
    std::vector<int> marks_;
};

inline constexpr std::size_t default_tree_guard = 12;
inline constexpr std::size_t default_marked_guard = 10;

std::vector<PlaneTree> enumerate_trees(std::size_t n, std::size_t guard = default_tree_guard);
std::vector<MarkedTree> enumerate_marked(std::size_t n, std::size_t guard = default_marked_guard);

// Number of ways to mark t, i.e. the product of (k_v + 1).
std::uint64_t marking_count(const PlaneTree& t);

template <class Urbg>
MarkedTree uniformly_marked(const PlaneTree& t, Urbg& rng) {
    std::vector<int> marks(t.size());
    for (std::size_t v = 0; v < t.size(); ++v) {
        boost::random::uniform_int_distribution<int> d(0, t.children(v));
        marks[v] = t.children(v) == 0 ? 0 : d(rng);
    }
    return MarkedTree(t, std::move(marks));
}

} // namespace hll

#include "hll/plane_tree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "hll/audit.hpp"
#include "hll/error.hpp"

namespace hll {

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

int parse_int(std::string_view tok) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw InvalidInput("not an integer: '" + std::string(tok) + "'");
    return v;
}

} // namespace

PlaneTree::PlaneTree() : code_{0} {}

PlaneTree::PlaneTree(std::vector<int> code) : code_(std::move(code)) {
    bool ok = is_valid_code(code_);
    audit::record(audit::Check::lukasiewicz_validity, ok);
    if (!ok) throw InvalidInput("child-count sequence is not a valid plane tree code");
}

bool PlaneTree::is_valid_code(std::span<const int> code) {
    if (code.empty()) return false;
    long long w = 0;
    for (std::size_t i = 0; i < code.size(); ++i) {
        if (code[i] < 0) return false;
        w += code[i] - 1;
        if (i + 1 < code.size() && w < 0) return false;
    }
    return w == -1;
}

PlaneTree PlaneTree::parse(std::string_view text) {
    std::vector<int> code;
    for (auto tok : split_ws(text)) code.push_back(parse_int(tok));
    return PlaneTree(std::move(code));
}

std::string PlaneTree::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < code_.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(code_[i]);
    }
    return s;
}

std::vector<VertexInfo> lex_vertices(const PlaneTree& t) {
    std::vector<VertexInfo> out(t.size());
    // Stack of (vertex, remaining children).
    std::vector<std::pair<std::size_t, int>> stack;
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::size_t parent = npos;
        int depth = 0;
        if (!stack.empty()) {
            parent = stack.back().first;
            depth = out[parent].depth + 1;
            if (--stack.back().second == 0) stack.pop_back();
        }
        out[i] = {depth, t.children(i), parent};
        if (t.children(i) > 0) stack.emplace_back(i, t.children(i));
    }
    return out;
}

TreeLayout layout(const PlaneTree& t) {
    const std::size_t n = t.size();
    TreeLayout L;
    L.parent.resize(n);
    L.depth.resize(n);
    L.child_index.assign(n, 0);
    L.child_offset.resize(n + 1);
    L.child_offset[0] = 0;
    for (std::size_t v = 0; v < n; ++v) L.child_offset[v + 1] = L.child_offset[v] + t.children(v);
    L.child_list.resize(L.child_offset[n]);
    std::vector<std::size_t> fill(L.child_offset.begin(), L.child_offset.end() - 1);
    auto info = lex_vertices(t);
    for (std::size_t v = 0; v < n; ++v) {
        L.parent[v] = info[v].parent;
        L.depth[v] = info[v].depth;
        if (v > 0) {
            std::size_t p = info[v].parent;
            L.child_index[v] = static_cast<int>(fill[p] - L.child_offset[p]) + 1;
            L.child_list[fill[p]++] = v;
        }
    }
    return L;
}

LukasiewiczPath::LukasiewiczPath(std::vector<long long> values) : values_(std::move(values)) {
    bool ok = is_valid(values_);
    audit::record(audit::Check::path_endpoint, !values_.empty() && values_.back() == -1);
    if (!ok) throw InvalidInput("sequence is not a valid Lukasiewicz path");
}

bool LukasiewiczPath::is_valid(std::span<const long long> w) {
    if (w.size() < 2 || w[0] != 0 || w.back() != -1) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] < 0) return false;
        if (w[i + 1] - w[i] < -1) return false;
    }
    return true;
}

LukasiewiczPath lukasiewicz(const PlaneTree& t) {
    std::vector<long long> w(t.size() + 1);
    w[0] = 0;
    for (std::size_t i = 0; i < t.size(); ++i) w[i + 1] = w[i] + t.children(i) - 1;
    return LukasiewiczPath(std::move(w));
}

PlaneTree tree_from_lukasiewicz(const LukasiewiczPath& p) {
    const auto& w = p.values();
    std::vector<int> code(w.size() - 1);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) code[i] = static_cast<int>(w[i + 1] - w[i] + 1);
    return PlaneTree(std::move(code));
}

int height(const PlaneTree& t) {
    int h = 0;
    for (const auto& v : lex_vertices(t)) h = std::max(h, v.depth);
    return h;
}

std::size_t zeta(const PlaneTree& t) { return t.size(); }

std::size_t leaf_count(const PlaneTree& t) {
    return static_cast<std::size_t>(std::count(t.code().begin(), t.code().end(), 0));
}

std::vector<std::size_t> leaves(const PlaneTree& t) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < t.size(); ++v)
        if (t.is_leaf(v)) out.push_back(v);
    return out;
}

MarkedTree::MarkedTree() : shape_(), marks_{0} {}

MarkedTree::MarkedTree(PlaneTree shape, std::vector<int> marks)
    : shape_(std::move(shape)), marks_(std::move(marks)) {
    if (marks_.size() != shape_.size()) throw InvalidInput("mark count differs from vertex count");
    for (std::size_t v = 0; v < marks_.size(); ++v)
        if (marks_[v] < 0 || marks_[v] > shape_.children(v))
            throw InvalidInput("mark of vertex " + std::to_string(v) + " outside 0..k_v");
}

MarkedTree MarkedTree::parse(std::string_view text) {
    std::vector<int> code, marks;
    for (auto tok : split_ws(text)) {
        auto colon = tok.find(':');
        if (colon == std::string_view::npos)
            throw InvalidInput("marked tree token must be k:m, got '" + std::string(tok) + "'");
        code.push_back(parse_int(tok.substr(0, colon)));
        marks.push_back(parse_int(tok.substr(colon + 1)));
    }
    return MarkedTree(PlaneTree(std::move(code)), std::move(marks));
}

std::string MarkedTree::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(shape_.children(i)) + ":" + std::to_string(marks_[i]);
    }
    return s;
}

namespace {

void enumerate_codes(std::size_t n, std::vector<int>& code, long long w,
                     std::vector<PlaneTree>& out) {
    std::size_t i = code.size();
    if (i == n) {
        if (w == -1) out.emplace_back(code);
        return;
    }
    // After this step w' = w + k - 1 must stay >= 0 unless it is the last
    // step, and the remaining n-i-1 steps can lower it by at most n-i-1.
    std::size_t rest = n - i - 1;
    for (long long k = 0;; ++k) {
        long long w2 = w + k - 1;
        if (w2 > static_cast<long long>(rest) - 1) break;
        if (rest > 0 && w2 < 0) continue;
        if (rest == 0 && w2 != -1) continue;
        code.push_back(static_cast<int>(k));
        enumerate_codes(n, code, w2, out);
        code.pop_back();
    }
}

} // namespace

std::vector<PlaneTree> enumerate_trees(std::size_t n, std::size_t guard) {
    if (n < 1) throw InvalidInput("tree size must be at least 1");
    if (n > guard)
        throw SizeGuard("enumerate_trees: n=" + std::to_string(n) + " exceeds guard " +
                        std::to_string(guard));
    std::vector<PlaneTree> out;
    std::vector<int> code;
    enumerate_codes(n, code, 0, out);
    return out;
}

std::vector<MarkedTree> enumerate_marked(std::size_t n, std::size_t guard) {
    if (n > guard)
        throw SizeGuard("enumerate_marked: n=" + std::to_string(n) + " exceeds guard " +
                        std::to_string(guard));
    std::vector<MarkedTree> out;
    for (const auto& t : enumerate_trees(n, std::max(guard, n))) {
        std::vector<int> marks(n, 0);
        while (true) {
            out.emplace_back(t, marks);
            std::size_t v = 0;
            while (v < n && marks[v] == t.children(v)) marks[v++] = 0;
            if (v == n) break;
            ++marks[v];
        }
    }
    return out;
}

std::uint64_t marking_count(const PlaneTree& t) {
    std::uint64_t c = 1;
    for (int k : t.code()) c *= static_cast<std::uint64_t>(k + 1);
    return c;
}

} // namespace hll

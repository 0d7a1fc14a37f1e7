#include "hll/render.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "hll/error.hpp"
#include "hll/looptree.hpp"

namespace hll {

RenderFormat parse_render_format(std::string_view s) {
    if (s == "dot") return RenderFormat::dot;
    if (s == "svg") return RenderFormat::svg;
    throw InvalidInput("unknown render format \"" + std::string(s) + "\"");
}

namespace {

struct Point {
    double x = 0, y = 0;
};

enum class EdgeKind { tree, loop, boundary };

struct Drawing {
    std::string name;
    std::vector<Point> pos;
    std::vector<std::pair<Edge, EdgeKind>> edges;
    std::optional<std::size_t> half_at; // vertex carrying the half-edge
    Point half_dir{0, -1};
};

void guard(std::size_t vertices) {
    if (vertices > render_guard)
        throw SizeGuard("rendering is limited to " + std::to_string(render_guard) + " vertices");
}

// Leaves at consecutive x positions, internal vertices centred over their
// children, y = depth.
std::vector<Point> top_down(const PlaneTree& t) {
    TreeLayout l = layout(t);
    std::vector<Point> p(t.size());
    double x = 0;
    for (std::size_t v = 0; v < t.size(); ++v) {
        p[v].y = l.depth[v];
        if (t.is_leaf(v)) p[v].x = x++;
    }
    for (std::size_t v = t.size(); v-- > 0;) {
        auto ch = l.children(v);
        if (!ch.empty()) p[v].x = (p[ch.front()].x + p[ch.back()].x) / 2;
    }
    return p;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << (std::abs(v) < 0.005 ? 0.0 : v);
    return os.str();
}

const char* kind_name(EdgeKind k) {
    switch (k) {
    case EdgeKind::tree: return "tree";
    case EdgeKind::loop: return "loop";
    case EdgeKind::boundary: return "boundary";
    }
    return "";
}

std::string to_dot(const Drawing& d) {
    std::ostringstream os;
    os << "graph " << d.name << " {\n";
    os << "  layout=neato;\n  node [shape=circle, width=0.25, fixedsize=true, fontsize=8];\n";
    for (std::size_t v = 0; v < d.pos.size(); ++v)
        os << "  " << v << " [pos=\"" << fmt(d.pos[v].x) << "," << fmt(-d.pos[v].y) << "!\"];\n";
    for (const auto& [e, k] : d.edges) {
        os << "  " << e.first << " -- " << e.second;
        if (k == EdgeKind::boundary) os << " [class=boundary, color=red, penwidth=2]";
        else if (k == EdgeKind::loop) os << " [class=loop]";
        os << ";\n";
    }
    if (d.half_at) {
        const Point& p = d.pos[*d.half_at];
        os << "  half [shape=point, width=0.05, pos=\"" << fmt(p.x + 0.4 * d.half_dir.x) << ","
           << fmt(-(p.y + 0.4 * d.half_dir.y)) << "!\"];\n";
        os << "  " << *d.half_at << " -- half [class=half, style=dashed];\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_svg(const Drawing& d) {
    const double scale = 40, margin = 30;
    double minx = 0, maxx = 0, miny = 0, maxy = 0;
    for (std::size_t v = 0; v < d.pos.size(); ++v) {
        minx = std::min(minx, d.pos[v].x);
        maxx = std::max(maxx, d.pos[v].x);
        miny = std::min(miny, d.pos[v].y);
        maxy = std::max(maxy, d.pos[v].y);
    }
    auto sx = [&](double x) { return fmt(margin + (x - minx) * scale); };
    auto sy = [&](double y) { return fmt(margin + (y - miny) * scale); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(2 * margin + (maxx - minx) * scale)
       << "\" height=\"" << fmt(2 * margin + (maxy - miny) * scale) << "\">\n";
    std::map<Edge, int> seen;
    for (const auto& [e, k] : d.edges) {
        Edge key{std::min(e.first, e.second), std::max(e.first, e.second)};
        int copy = seen[key]++;
        const char* stroke = k == EdgeKind::boundary ? "red" : "black";
        const char* width = k == EdgeKind::boundary ? "2" : "1";
        const Point& a = d.pos[e.first];
        const Point& b = d.pos[e.second];
        os << "  <path class=\"" << kind_name(k) << "\" fill=\"none\" stroke=\"" << stroke
           << "\" stroke-width=\"" << width << "\" d=\"";
        if (e.first == e.second) {
            // self-loop drawn as a teardrop below the vertex
            os << "M " << sx(a.x) << " " << sy(a.y) << " C " << sx(a.x - 0.6) << " " << sy(a.y + 0.9) << " "
               << sx(a.x + 0.6) << " " << sy(a.y + 0.9) << " " << sx(a.x) << " " << sy(a.y);
        } else if (copy == 0) {
            os << "M " << sx(a.x) << " " << sy(a.y) << " L " << sx(b.x) << " " << sy(b.y);
        } else {
            double mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2;
            double dx = b.x - a.x, dy = b.y - a.y, len = std::hypot(dx, dy);
            double off = 0.3 * copy * (copy % 2 ? 1 : -1);
            os << "M " << sx(a.x) << " " << sy(a.y) << " Q " << sx(mx - dy / len * off) << " "
               << sy(my + dx / len * off) << " " << sx(b.x) << " " << sy(b.y);
        }
        os << "\"/>\n";
    }
    if (d.half_at) {
        const Point& p = d.pos[*d.half_at];
        os << "  <line class=\"half\" stroke=\"black\" stroke-dasharray=\"3,2\" x1=\"" << sx(p.x) << "\" y1=\""
           << sy(p.y) << "\" x2=\"" << sx(p.x + 0.4 * d.half_dir.x) << "\" y2=\"" << sy(p.y + 0.4 * d.half_dir.y)
           << "\"/>\n";
    }
    for (std::size_t v = 0; v < d.pos.size(); ++v)
        os << "  <circle cx=\"" << sx(d.pos[v].x) << "\" cy=\"" << sy(d.pos[v].y)
           << "\" r=\"4\" fill=\"white\" stroke=\"black\"><title>" << v << "</title></circle>\n";
    os << "</svg>\n";
    return os.str();
}

std::string emit(const Drawing& d, RenderFormat f) {
    return f == RenderFormat::dot ? to_dot(d) : to_svg(d);
}

} // namespace

std::string render_tree(const PlaneTree& t, RenderFormat f) {
    guard(t.size());
    Drawing d;
    d.name = "tree";
    d.pos = top_down(t);
    TreeLayout l = layout(t);
    for (std::size_t v = 1; v < t.size(); ++v) d.edges.push_back({{l.parent[v], v}, EdgeKind::tree});
    return emit(d, f);
}

std::string render_looptree(const PlaneTree& t, RenderFormat f) {
    guard(t.size());
    Drawing d;
    d.name = "looptree";
    d.pos = top_down(t);
    Graph g = loop(t);
    for (const auto& e : g.edges()) d.edges.push_back({e, EdgeKind::loop});
    return emit(d, f);
}

std::string render_halin(const HalinMap& h, RenderFormat f) {
    const PlaneTree& t = h.tree();
    guard(t.size());
    TreeLayout l = layout(t);
    const auto& cyc = h.leaf_cycle();
    const double lambda = static_cast<double>(cyc.size());
    const double radius = std::max(2.0, lambda / std::numbers::pi);
    const int ht = std::max(1, height(t));
    // Angles: leaves evenly spaced in cycle order, internal vertices at the
    // mean angle of their first and last child (leaf angles increase along
    // the contour, so no wrap-around occurs inside a subtree).
    std::vector<double> angle(t.size(), 0);
    for (std::size_t i = 0; i < cyc.size(); ++i) angle[cyc[i]] = 2 * std::numbers::pi * static_cast<double>(i) / lambda;
    for (std::size_t v = t.size(); v-- > 0;) {
        auto ch = l.children(v);
        if (!ch.empty()) angle[v] = (angle[ch.front()] + angle[ch.back()]) / 2;
    }
    Drawing d;
    d.name = "halin";
    d.pos.resize(t.size());
    for (std::size_t v = 0; v < t.size(); ++v) {
        double r = t.is_leaf(v) ? radius : radius * l.depth[v] / (ht + 1.0);
        d.pos[v] = {r * std::cos(angle[v]), r * std::sin(angle[v])};
    }
    for (std::size_t v = 1; v < t.size(); ++v) d.edges.push_back({{l.parent[v], v}, EdgeKind::tree});
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        d.edges.push_back({{cyc[i], cyc[(i + 1) % cyc.size()]}, EdgeKind::boundary});
    }
    d.half_at = 0;
    // half-edge points away from the root's first child
    auto ch = l.children(0);
    if (!ch.empty()) {
        Point c = d.pos[ch.front()];
        double len = std::hypot(c.x, c.y);
        if (len > 0) d.half_dir = {-c.x / len, -c.y / len};
    }
    return emit(d, f);
}

} // namespace hll

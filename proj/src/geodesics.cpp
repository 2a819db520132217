#include "flatsys/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "flatsys/error.hpp"

namespace flatsys {

namespace {

using TS = TriangulatedSurface;

constexpr double kWedgeTol = 1e-12;
constexpr double kLengthTol = 1e-9;

struct Window {
    int node;   // path node of the crossing into the current triangle, -1 at the root
    int cross;  // half-edge of the current triangle to cross next
    Vec2 right, left; // developed endpoints of `cross` (origin and target)
    Vec2 wr, wl;      // wedge rays
};

struct PathNode {
    int parent;
    int crossing;
};

bool strictly_left(Vec2 ray, Vec2 p)
{
    return cross(ray, p) > kWedgeTol * ray.norm() * p.norm();
}

// Distance from the origin to the part of [a, b] inside the wedge (wr, wl);
// +inf if that part is empty.
double visible_distance(Vec2 a, Vec2 b, Vec2 wr, Vec2 wl)
{
    double lo = 0.0, hi = 1.0;
    auto clip = [&](double f0, double f1) {
        const double slack = kWedgeTol * std::max(std::abs(f0), std::abs(f1)) + 1e-300;
        if (f0 >= -slack && f1 >= -slack) return;
        if (f0 < -slack && f1 < -slack) {
            lo = 1.0;
            hi = 0.0;
            return;
        }
        const double t = f0 / (f0 - f1);
        if (f0 < 0) lo = std::max(lo, t - 1e-12);
        else hi = std::min(hi, t + 1e-12);
    };
    clip(cross(wr, a), cross(wr, b));
    clip(cross(a, wl), cross(b, wl));
    if (lo > hi) return std::numeric_limits<double>::infinity();
    lo = std::clamp(lo, 0.0, 1.0);
    hi = std::clamp(hi, 0.0, 1.0);
    const Vec2 p = a + lo * (b - a), q = a + hi * (b - a);
    const Vec2 d = q - p;
    const double len2 = d.norm2();
    if (len2 == 0.0) return p.norm();
    const double t = std::clamp(-dot(p, d) / len2, 0.0, 1.0);
    return (p + t * d).norm();
}

bool less_connection(const SaddleConnection& a, const SaddleConnection& b)
{
    return std::tie(a.length, a.holonomy.x, a.holonomy.y, a.start, a.end, a.corner, a.crossings) <
           std::tie(b.length, b.holonomy.x, b.holonomy.y, b.start, b.end, b.corner, b.crossings);
}

} // namespace

SaddleConnection edge_connection(const TriangulatedSurface& s, int h)
{
    SaddleConnection sc;
    sc.start = s.origin(h);
    sc.end = s.target(h);
    sc.holonomy = s.vec(h);
    sc.length = sc.holonomy.norm();
    sc.corner = h;
    return sc;
}

double shortest_edge(const TriangulatedSurface& s)
{
    double m = std::numeric_limits<double>::infinity();
    for (int h = 0; h < s.num_half_edges(); ++h) m = std::min(m, s.vec(h).norm());
    return m;
}

std::vector<SaddleConnection> saddle_connections(const TriangulatedSurface& s, double max_length,
                                                 const SaddleOptions& opts)
{
    if (!(max_length > 0.0)) throw Error(Errc::Precondition, "length bound must be positive");
    const double bound = max_length + kLengthTol;
    std::vector<SaddleConnection> out;

    for (int h = 0; h < s.num_half_edges(); ++h)
        if (s.vec(h).norm() <= bound && is_canonical_direction(s.vec(h))) out.push_back(edge_connection(s, h));

    std::vector<PathNode> nodes;
    std::vector<Window> stack;
    auto path_of = [&](int node) {
        std::vector<int> path;
        for (int k = node; k >= 0; k = nodes[k].parent) path.push_back(nodes[k].crossing);
        std::reverse(path.begin(), path.end());
        return path;
    };

    for (int h0 = 0; h0 < s.num_half_edges(); ++h0) {
        nodes.clear();
        const Vec2 b = s.vec(h0);
        const Vec2 c = -s.vec(TS::prev(h0));
        stack.push_back({-1, TS::next(h0), b, c, b, c});
        while (!stack.empty()) {
            const Window w = stack.back();
            stack.pop_back();
            if (visible_distance(w.right, w.left, w.wr, w.wl) > bound) continue;
            if (nodes.size() >= opts.node_limit)
                throw Error(Errc::BudgetExceeded,
                            "unfolding exceeded " + std::to_string(opts.node_limit) + " nodes");
            const int node = static_cast<int>(nodes.size());
            nodes.push_back({w.node, w.cross});

            const int g = s.twin(w.cross);
            const int to_right = TS::next(g); // right endpoint -> far vertex
            const int to_left = TS::prev(g);  // far vertex -> left endpoint
            const Vec2 d = w.right + s.vec(to_right);
            const bool right_ok = strictly_left(w.wr, d);
            const bool left_ok = strictly_left(d, w.wl);
            if (right_ok && left_ok) {
                if (d.norm() <= bound && is_canonical_direction(d)) {
                    SaddleConnection sc;
                    sc.start = s.origin(h0);
                    sc.end = s.origin(to_left);
                    sc.holonomy = d;
                    sc.length = d.norm();
                    sc.corner = h0;
                    sc.crossings = path_of(node);
                    out.push_back(std::move(sc));
                }
                stack.push_back({node, to_right, w.right, d, w.wr, d});
                stack.push_back({node, to_left, d, w.left, d, w.wl});
            } else if (!right_ok) {
                stack.push_back({node, to_left, d, w.left, w.wr, w.wl});
            } else {
                stack.push_back({node, to_right, w.right, d, w.wr, w.wl});
            }
        }
    }
    std::sort(out.begin(), out.end(), less_connection);
    return out;
}

SystoleReport systole(const TriangulatedSurface& s, const SaddleOptions& opts)
{
    const auto all = saddle_connections(s, shortest_edge(s), opts);
    SystoleReport r;
    r.value = std::numeric_limits<double>::infinity();
    for (const auto& sc : all) r.value = std::min(r.value, sc.length);
    for (const auto& sc : all)
        if (sc.length <= r.value + kLengthTol) r.minimizers.push_back(sc);
    return r;
}

SaddleConnection reversed(const TriangulatedSurface& s, const SaddleConnection& sc)
{
    SaddleConnection r;
    r.start = sc.end;
    r.end = sc.start;
    r.holonomy = -sc.holonomy;
    r.length = sc.length;
    if (sc.crossings.empty()) {
        r.corner = s.twin(sc.corner);
        return r;
    }
    r.corner = TS::prev(s.twin(sc.crossings.back()));
    for (auto it = sc.crossings.rbegin(); it != sc.crossings.rend(); ++it) r.crossings.push_back(s.twin(*it));
    return r;
}

SaddleConnection canonical(const TriangulatedSurface& s, const SaddleConnection& sc)
{
    return is_canonical_direction(sc.holonomy) ? sc : reversed(s, sc);
}

std::vector<Vec2> sleeve_offsets(const TriangulatedSurface& s, const SaddleConnection& sc)
{
    std::vector<Vec2> off;
    off.push_back(-s.corner_position(sc.corner));
    for (int c : sc.crossings) {
        const int g = s.twin(c);
        off.push_back(off.back() + s.corner_position(c) + s.vec(c) - s.corner_position(g));
    }
    return off;
}

SurfacePoint point_along(const TriangulatedSurface& s, const SaddleConnection& sc, double f)
{
    const Vec2 start = s.corner_position(sc.corner);
    const auto tr = trace_ray(s, {TS::tri(sc.corner), start}, sc.holonomy, f * sc.length);
    return tr.end;
}

TraceResult trace_ray(const TriangulatedSurface& s, SurfacePoint p, Vec2 dir, double length)
{
    const Vec2 u = dir / dir.norm();
    TraceResult r;
    int t = p.tri;
    Vec2 x = p.pos;
    double remaining = length;
    const std::size_t max_steps = 10'000'000;
    for (std::size_t step = 0; step < max_steps; ++step) {
        const Vec2 pts[3] = {Vec2{}, s.vec(3 * t), s.vec(3 * t) + s.vec(3 * t + 1)};
        double best = std::numeric_limits<double>::infinity();
        int exit = -1;
        for (int k = 0; k < 3; ++k) {
            const Vec2 e = s.vec(3 * t + k);
            const double den = cross(e, u);
            if (den >= -1e-14 * e.norm()) continue;
            const double sk = cross(e, pts[k] - x) / den;
            if (sk >= -1e-12 && sk < best) {
                best = std::max(sk, 0.0);
                exit = k;
            }
        }
        if (exit < 0) throw Error(Errc::NoSuchConnection, "ray trace left the triangle");
        const double scale = std::max(s.vec(3 * t + exit).norm(), 1.0);
        if (best >= remaining) {
            r.end = {t, x + remaining * u};
            r.travelled += remaining;
            // A finite trace may still end on a vertex.
            for (int k = 0; k < 3; ++k)
                if ((r.end.pos - pts[k]).norm() <= 1e-9 * scale) r.vertex_corner = 3 * t + k;
            return r;
        }
        const Vec2 hit = x + best * u;
        const int k0 = exit, k1 = (exit + 1) % 3;
        const double vtol = 1e-9 * scale;
        if ((hit - pts[k0]).norm() <= vtol || (hit - pts[k1]).norm() <= vtol) {
            r.vertex_corner = 3 * t + ((hit - pts[k0]).norm() <= vtol ? k0 : k1);
            r.end = {t, (hit - pts[k0]).norm() <= vtol ? pts[k0] : pts[k1]};
            r.travelled += best;
            return r;
        }
        const int c = 3 * t + exit;
        const Vec2 e = s.vec(c);
        const double lambda = dot(hit - pts[exit], e) / e.norm2();
        const int g = s.twin(c);
        r.crossings.push_back(c);
        r.travelled += best;
        remaining -= best;
        t = TS::tri(g);
        x = s.corner_position(g) + (1.0 - lambda) * s.vec(g);
    }
    throw Error(Errc::BudgetExceeded, "ray trace did not terminate");
}

SaddleConnection connection_through(const TriangulatedSurface& s, SurfacePoint p, Vec2 dir)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto back = trace_ray(s, p, -dir, inf);
    const auto fwd = trace_ray(s, p, dir, inf);
    if (back.vertex_corner < 0 || fwd.vertex_corner < 0)
        throw Error(Errc::NoSuchConnection, "trace did not reach a vertex");
    const Vec2 u = dir / dir.norm();

    SaddleConnection sc;
    for (auto it = back.crossings.rbegin(); it != back.crossings.rend(); ++it) sc.crossings.push_back(s.twin(*it));
    sc.crossings.insert(sc.crossings.end(), fwd.crossings.begin(), fwd.crossings.end());
    sc.holonomy = (back.travelled + fwd.travelled) * u;
    sc.length = sc.holonomy.norm();
    sc.start = s.origin(back.vertex_corner);
    sc.end = s.origin(fwd.vertex_corner);

    if (sc.crossings.empty()) {
        const int t = back.end.tri;
        const double tol = 1e-7 * std::max(1.0, sc.length);
        // p may sit on the edge itself, seen from either side.
        for (int h = 3 * t; h < 3 * t + 3; ++h) {
            if (near(s.vec(h), sc.holonomy, tol)) sc.corner = h;
            else if (near(s.vec(h), -sc.holonomy, tol)) sc.corner = s.twin(h);
        }
        if (sc.corner < 0) throw Error(Errc::NoSuchConnection, "segment is not an edge");
        sc.holonomy = s.vec(sc.corner);
        sc.length = sc.holonomy.norm();
    } else {
        sc.corner = TS::prev(sc.crossings.front());
        // Re-develop for an exact holonomy along the sleeve.
        const auto off = sleeve_offsets(s, sc);
        const int g = s.twin(sc.crossings.back());
        sc.holonomy = off.back() + s.corner_position(TS::prev(g));
        sc.length = sc.holonomy.norm();
    }
    return sc;
}

std::vector<int> right_bank_chain(const TriangulatedSurface& s, const SaddleConnection& sc)
{
    std::vector<int> chain{sc.corner};
    const auto& c = sc.crossings;
    for (std::size_t j = 0; j + 1 < c.size(); ++j) {
        const int g = s.twin(c[j]);
        if (c[j + 1] == TS::prev(g)) chain.push_back(TS::next(g));
    }
    if (!c.empty()) chain.push_back(TS::next(s.twin(c.back())));
    return chain;
}

std::vector<int> left_bank_chain(const TriangulatedSurface& s, const SaddleConnection& sc)
{
    if (sc.crossings.empty()) return {sc.corner};
    std::vector<int> chain{s.twin(TS::prev(sc.corner))};
    const auto& c = sc.crossings;
    for (std::size_t j = 0; j + 1 < c.size(); ++j) {
        const int g = s.twin(c[j]);
        if (c[j + 1] == TS::next(g)) chain.push_back(s.twin(TS::prev(g)));
    }
    chain.push_back(s.twin(TS::prev(s.twin(c.back()))));
    return chain;
}

} // namespace flatsys

#include <cmath>

#include "flatsys/constructions.hpp"
#include "flatsys/delaunay.hpp"
#include "flatsys/error.hpp"

namespace flatsys {

namespace {

using TS = TriangulatedSurface;

// Fraction of the segment used as the tracked interior point; kept away
// from 1/2 so it rarely lands on a lattice edge.
constexpr double kTrackFraction = 0.4142135623730951;

bool inside(Vec2 a, Vec2 b, Vec2 c, Vec2 p)
{
    const double tol = 1e-12;
    return cross(b - a, p - a) >= -tol && cross(c - b, p - b) >= -tol && cross(a - c, p - c) >= -tol;
}

// Flips h while keeping the tracked point p located in the new triangles.
bool flip_tracking(TS& s, int h, SurfacePoint& p)
{
    const int g = s.twin(h);
    const int t = TS::tri(h), u = TS::tri(g);
    const Vec2 d = s.vec(TS::next(g));
    Vec2 q;
    const bool tracked = p.tri == t || p.tri == u;
    if (p.tri == t) q = p.pos - s.corner_position(h);
    else if (p.tri == u) q = p.pos - s.corner_position(TS::next(g));
    if (!s.flip(h)) return false;
    if (tracked) {
        // New t has corner A (origin of h) at 0; new u has corner D at 0.
        const Vec2 c = s.vec(3 * t) + s.vec(3 * t + 1);
        if (inside({}, d, c, q)) p = {t, q};
        else p = {u, q - d};
    }
    return true;
}

} // namespace

EdgeInsertion insert_edge(const TriangulatedSurface& s, const SaddleConnection& sc)
{
    if (sc.crossings.empty()) return {s, sc.corner};
    TS m = s;
    SurfacePoint p = point_along(s, sc, kTrackFraction);
    SaddleConnection cur = sc;
    const int guard = 10 * s.num_half_edges() + 100;
    for (int it = 0; it < guard && !cur.crossings.empty(); ++it) {
        bool flipped = false;
        for (int c : cur.crossings)
            if (flip_tracking(m, c, p)) {
                flipped = true;
                break;
            }
        if (!flipped) throw Error(Errc::SlitOnBoundary, "no crossed edge can be flipped");
        cur = connection_through(m, p, sc.holonomy);
    }
    if (!cur.crossings.empty()) throw Error(Errc::SlitOnBoundary, "edge insertion did not terminate");
    if (!near(m.vec(cur.corner), sc.holonomy, 1e-9 * std::max(1.0, sc.length)))
        throw Error(Errc::SlitOnBoundary, "inserted edge does not match the connection");
    return {std::move(m), cur.corner};
}

TriangulatedSurface slit_glue(const TriangulatedSurface& s1, const SaddleConnection& g1,
                              const TriangulatedSurface& s2, const SaddleConnection& g2)
{
    if (std::abs(g1.length - g2.length) > 1e-9)
        throw Error(Errc::LengthMismatch, "slit lengths differ: " + std::to_string(g1.length) + " vs " +
                                              std::to_string(g2.length));
    const double theta = std::atan2(g1.holonomy.y, g1.holonomy.x) - std::atan2(g2.holonomy.y, g2.holonomy.x);
    const TS r2 = rotate(s2, theta);
    SaddleConnection h2 = g2;
    h2.holonomy = rotated(g2.holonomy, theta);

    const auto e1 = insert_edge(s1, g1);
    const auto e2 = insert_edge(r2, h2);
    const TS& a = e1.surface;
    const TS& b = e2.surface;
    const int n1 = a.num_half_edges();

    std::vector<Vec2> vecs(a.vecs().begin(), a.vecs().end());
    std::vector<int> twins(a.twins().begin(), a.twins().end());
    std::vector<int> tags(a.tags().begin(), a.tags().end());
    int tag_base = 0;
    for (int t : tags) tag_base = std::max(tag_base, t + 1);
    for (int h = 0; h < b.num_half_edges(); ++h) {
        vecs.push_back(b.vec(h));
        twins.push_back(b.twin(h) + n1);
        tags.push_back(b.tag(h) < 0 ? -1 : b.tag(h) + tag_base);
    }
    const int x = e1.half_edge, y = e2.half_edge + n1;
    const int tx = twins[x], ty = twins[y];
    if (x == tx || y == ty) throw Error(Errc::SlitOnBoundary, "slit edge is glued to itself");
    // Left bank of g1 (tri(x)) meets the right bank of g2 (tri(ty)), and vice versa.
    twins[x] = ty;
    twins[ty] = x;
    twins[y] = tx;
    twins[tx] = y;
    TS glued(std::move(vecs), std::move(twins), std::move(tags));
    return delaunayize(glued).surface;
}

} // namespace flatsys

#include "flatsys/surface.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "flatsys/error.hpp"

namespace flatsys {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string slot_name(EdgeSlot s)
{
    return "(" + std::to_string(s.polygon) + "," + std::to_string(s.edge) + ")";
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<Vec2> vertices_of(const std::vector<Vec2>& edges)
{
    std::vector<Vec2> pts(edges.size());
    Vec2 p;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        pts[i] = p;
        p += edges[i];
    }
    return pts;
}

bool on_segment(Vec2 p, Vec2 a, Vec2 b, double tol)
{
    const Vec2 ab = b - a;
    const double len2 = ab.norm2();
    if (len2 == 0.0) return (p - a).norm() <= tol;
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return (a + t * ab - p).norm() <= tol;
}

bool segments_touch(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol)
{
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    if (((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
        ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol)))
        return true;
    return on_segment(c, a, b, tol) || on_segment(d, a, b, tol) ||
           on_segment(a, c, d, tol) || on_segment(b, c, d, tol);
}

bool in_closed_triangle(Vec2 p, Vec2 a, Vec2 b, Vec2 c, double tol)
{
    return cross(b - a, p - a) >= -tol && cross(c - b, p - b) >= -tol &&
           cross(a - c, p - c) >= -tol;
}

// Ear clipping; returns triangles as CCW vertex index triples.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& pts, int polygon)
{
    std::vector<int> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::array<int, 3>> tris;
    while (idx.size() > 3) {
        const std::size_t m = idx.size();
        bool clipped = false;
        for (std::size_t k = 0; k < m && !clipped; ++k) {
            const int ia = idx[(k + m - 1) % m], ib = idx[k], ic = idx[(k + 1) % m];
            const Vec2 a = pts[ia], b = pts[ib], c = pts[ic];
            const double scale2 = std::max({(b - a).norm2(), (c - b).norm2(), 1e-300});
            if (cross(b - a, c - b) <= 1e-12 * scale2) continue;
            bool empty = true;
            for (int j : idx) {
                if (j == ia || j == ib || j == ic) continue;
                if (in_closed_triangle(pts[j], a, b, c, 1e-12 * scale2)) {
                    empty = false;
                    break;
                }
            }
            if (!empty) continue;
            tris.push_back({ia, ib, ic});
            idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
            clipped = true;
        }
        if (!clipped)
            throw Error(Errc::SelfCrossingPolygon,
                        "polygon " + std::to_string(polygon) + " admits no ear");
    }
    tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

} // namespace

int SurfaceSpec::slot_index(EdgeSlot s) const
{
    int base = 0;
    for (int p = 0; p < s.polygon; ++p) base += static_cast<int>(polygons[p].size());
    return base + s.edge;
}

SurfaceSpec spec_from_vertices(const std::vector<std::vector<Vec2>>& polygons,
                               std::vector<std::pair<EdgeSlot, EdgeSlot>> gluings)
{
    SurfaceSpec spec;
    for (const auto& poly : polygons) {
        std::vector<Vec2> edges(poly.size());
        for (std::size_t i = 0; i < poly.size(); ++i) edges[i] = poly[(i + 1) % poly.size()] - poly[i];
        spec.polygons.push_back(std::move(edges));
    }
    spec.gluings = std::move(gluings);
    return spec;
}

// ---------------------------------------------------------------------------
// TriangulatedSurface

TriangulatedSurface::TriangulatedSurface(std::vector<Vec2> vecs, std::vector<int> twins,
                                         std::vector<int> tags)
    : vec_(std::move(vecs)), twin_(std::move(twins)), tag_(std::move(tags))
{
    const int n = static_cast<int>(vec_.size());
    if (n == 0 || n % 3 != 0 || static_cast<int>(twin_.size()) != n)
        throw Error(Errc::DegenerateSurface, "half-edge arrays have inconsistent sizes");
    if (tag_.empty()) tag_.assign(n, -1);
    if (static_cast<int>(tag_.size()) != n)
        throw Error(Errc::DegenerateSurface, "tag array has wrong size");

    for (int h = 0; h < n; ++h) {
        const int t = twin_[h];
        if (t < 0 || t >= n || t == h || twin_[t] != h)
            throw Error(Errc::DegenerateSurface, "twin map is not a fixed-point-free involution at " +
                                                     std::to_string(h));
        const double tol = kGeomTol * std::max(1.0, vec_[h].norm());
        if (!near(vec_[h], -vec_[t], tol))
            throw Error(Errc::DegenerateSurface,
                        "glued half-edges " + std::to_string(h) + "," + std::to_string(t) +
                            " are not opposite");
    }
    for (int t = 0; t < n / 3; ++t) {
        const Vec2 s = vec_[3 * t] + vec_[3 * t + 1] + vec_[3 * t + 2];
        const double scale = std::max({vec_[3 * t].norm(), vec_[3 * t + 1].norm(), vec_[3 * t + 2].norm()});
        if (s.norm() > kGeomTol * std::max(1.0, scale))
            throw Error(Errc::DegenerateSurface, "triangle " + std::to_string(t) + " does not close");
        if (triangle_area(t) <= 1e-14 * scale * scale)
            throw Error(Errc::DegenerateSurface,
                        "triangle " + std::to_string(t) + " has non-positive area");
    }
    compute_vertices();
}

void TriangulatedSurface::compute_vertices()
{
    const int n = num_half_edges();
    UnionFind uf(n);
    for (int h = 0; h < n; ++h) uf.unite(h, next(twin_[h]));
    origin_.assign(n, -1);
    std::vector<int> id_of_root(n, -1);
    int nv = 0;
    for (int h = 0; h < n; ++h) {
        const int r = uf.find(h);
        if (id_of_root[r] < 0) id_of_root[r] = nv++;
        origin_[h] = id_of_root[r];
    }
    cone_angle_.assign(nv, 0.0);
    for (int h = 0; h < n; ++h) cone_angle_[origin_[h]] += corner_angle(h);
    order_.assign(nv, 0);
    for (int v = 0; v < nv; ++v) {
        const double turns = cone_angle_[v] / kTwoPi;
        const long k = std::lround(turns) - 1;
        if (k < 0 || std::abs(turns - static_cast<double>(k + 1)) > 1e-6)
            throw Error(Errc::DegenerateSurface,
                        "vertex " + std::to_string(v) + " has cone angle " +
                            std::to_string(cone_angle_[v]) + ", not a multiple of 2pi");
        order_[v] = static_cast<int>(k);
    }
}

double TriangulatedSurface::corner_angle(int h) const
{
    return ccw_angle(vec_[h], -vec_[prev(h)]);
}

double TriangulatedSurface::triangle_area(int t) const
{
    return 0.5 * cross(vec_[3 * t], vec_[3 * t + 1]);
}

double TriangulatedSurface::area() const
{
    double a = 0.0;
    for (int t = 0; t < num_triangles(); ++t) a += triangle_area(t);
    return a;
}

Vec2 TriangulatedSurface::corner_position(int h) const
{
    const int base = 3 * tri(h);
    Vec2 p;
    for (int k = base; k < h; ++k) p += vec_[k];
    return p;
}

std::vector<int> TriangulatedSurface::corners_ccw(int v) const
{
    int start = -1;
    for (int h = 0; h < num_half_edges(); ++h)
        if (origin_[h] == v) {
            start = h;
            break;
        }
    std::vector<int> out;
    if (start < 0) return out;
    int h = start;
    do {
        out.push_back(h);
        h = ccw_corner(h);
    } while (h != start);
    return out;
}

bool TriangulatedSurface::flip(int h)
{
    const int g = twin_[h];
    const int t = tri(h), u = tri(g);
    const int e1 = next(h), e2 = prev(h), e3 = next(g), e4 = prev(g);

    const Vec2 B = vec_[h];
    const Vec2 C = B + vec_[e1];
    const Vec2 D = vec_[e3];
    const double scale2 = std::max({B.norm2(), C.norm2(), D.norm2()});
    // New triangles A,D,C and D,B,C must both be strictly positive.
    if (cross(D, C) <= 1e-12 * scale2 || cross(B - D, C - D) <= 1e-12 * scale2) return false;

    const int vA = origin_[h], vB = origin_[g], vC = origin_[e2], vD = origin_[e4];

    struct Old { Vec2 vec; int twin; int tag; };
    const std::array<int, 4> outer = {e1, e2, e3, e4};
    const std::array<int, 4> slot = {3 * u + 1, 3 * t + 2, 3 * t + 0, 3 * u + 0};
    std::array<Old, 4> old;
    for (int k = 0; k < 4; ++k) old[k] = {vec_[outer[k]], twin_[outer[k]], tag_[outer[k]]};
    auto remap = [&](int x) {
        for (int k = 0; k < 4; ++k)
            if (outer[k] == x) return slot[k];
        return x;
    };

    for (int k = 0; k < 4; ++k) {
        vec_[slot[k]] = old[k].vec;
        tag_[slot[k]] = old[k].tag;
    }
    for (int k = 0; k < 4; ++k) {
        const int tw = remap(old[k].twin);
        twin_[slot[k]] = tw;
        twin_[tw] = slot[k];
    }
    vec_[3 * t + 1] = C - D;
    vec_[3 * u + 2] = D - C;
    twin_[3 * t + 1] = 3 * u + 2;
    twin_[3 * u + 2] = 3 * t + 1;
    tag_[3 * t + 1] = tag_[3 * u + 2] = -1;

    origin_[3 * t + 0] = vA;
    origin_[3 * t + 1] = vD;
    origin_[3 * t + 2] = vC;
    origin_[3 * u + 0] = vD;
    origin_[3 * u + 1] = vB;
    origin_[3 * u + 2] = vC;
    return true;
}

TriangulatedSurface TriangulatedSurface::transformed(double a, double b, double c, double d) const
{
    if (a * d - b * c <= 0.0)
        throw Error(Errc::Precondition, "linear map must preserve orientation");
    std::vector<Vec2> v(vec_.size());
    for (std::size_t h = 0; h < vec_.size(); ++h)
        v[h] = {a * vec_[h].x + b * vec_[h].y, c * vec_[h].x + d * vec_[h].y};
    return {std::move(v), twin_, tag_};
}

// ---------------------------------------------------------------------------

void validate_spec(const SurfaceSpec& spec)
{
    if (spec.polygons.empty()) throw Error(Errc::DegenerateSurface, "no polygons");
    for (std::size_t p = 0; p < spec.polygons.size(); ++p) {
        const auto& edges = spec.polygons[p];
        const int ip = static_cast<int>(p);
        if (edges.size() < 3)
            throw Error(Errc::SelfCrossingPolygon, "polygon " + std::to_string(p) + " has fewer than 3 sides");
        Vec2 sum;
        double scale = 0.0;
        for (Vec2 e : edges) {
            sum += e;
            scale = std::max(scale, e.norm());
        }
        if (sum.norm() > kGeomTol * std::max(1.0, scale))
            throw Error(Errc::NonClosedPolygon, "polygon " + std::to_string(p) + " does not close");
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edges[e].norm() <= kGeomTol)
                throw Error(Errc::SelfCrossingPolygon,
                            "zero-length side " + slot_name({ip, static_cast<int>(e)}));

        const auto pts = vertices_of(edges);
        const std::size_t n = pts.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = pts[i], b = pts[(i + 1) % n];
            // Adjacent sides must not fold back onto each other.
            const Vec2 nxt = pts[(i + 2) % n];
            if (std::abs(cross(b - a, nxt - b)) <= kGeomTol * scale && dot(b - a, nxt - b) < 0)
                throw Error(Errc::SelfCrossingPolygon,
                            "sides " + slot_name({ip, static_cast<int>(i)}) + " and " +
                                slot_name({ip, static_cast<int>((i + 1) % n)}) + " overlap");
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                if (segments_touch(a, b, pts[j], pts[(j + 1) % n], kGeomTol))
                    throw Error(Errc::SelfCrossingPolygon,
                                "sides " + slot_name({ip, static_cast<int>(i)}) + " and " +
                                    slot_name({ip, static_cast<int>(j)}) + " cross");
            }
        }
        if (shoelace(pts) <= 0.0)
            throw Error(Errc::SelfCrossingPolygon,
                        "polygon " + std::to_string(p) + " is not counterclockwise");
    }

    std::map<std::pair<int, int>, int> count;
    auto check_range = [&](EdgeSlot s) {
        if (s.polygon < 0 || s.polygon >= static_cast<int>(spec.polygons.size()) || s.edge < 0 ||
            s.edge >= static_cast<int>(spec.polygons[s.polygon].size()))
            throw Error(Errc::UnpairedEdge, "gluing refers to missing slot " + slot_name(s));
    };
    for (const auto& [s1, s2] : spec.gluings) {
        check_range(s1);
        check_range(s2);
        ++count[{s1.polygon, s1.edge}];
        ++count[{s2.polygon, s2.edge}];
        const Vec2 v1 = spec.polygons[s1.polygon][s1.edge];
        const Vec2 v2 = spec.polygons[s2.polygon][s2.edge];
        if (!near(v1, -v2, kGeomTol * std::max(1.0, v1.norm())))
            throw Error(Errc::NonOppositeGluing,
                        "slots " + slot_name(s1) + " and " + slot_name(s2) + " are not opposite");
    }
    for (std::size_t p = 0; p < spec.polygons.size(); ++p)
        for (std::size_t e = 0; e < spec.polygons[p].size(); ++e) {
            const auto it = count.find({static_cast<int>(p), static_cast<int>(e)});
            const int c = it == count.end() ? 0 : it->second;
            if (c != 1)
                throw Error(Errc::UnpairedEdge,
                            "slot " + slot_name({static_cast<int>(p), static_cast<int>(e)}) +
                                " appears in " + std::to_string(c) + " gluings");
        }
}

TriangulatedSurface build_surface(const SurfaceSpec& spec)
{
    validate_spec(spec);

    std::vector<Vec2> vecs;
    std::vector<int> twins, tags;
    std::map<std::pair<int, int>, int> slot_half_edge;

    for (std::size_t p = 0; p < spec.polygons.size(); ++p) {
        const auto& edges = spec.polygons[p];
        const auto pts = vertices_of(edges);
        const int n = static_cast<int>(pts.size());
        const auto tris = ear_clip(pts, static_cast<int>(p));
        std::map<std::pair<int, int>, int> directed;
        for (const auto& tr : tris) {
            for (int k = 0; k < 3; ++k) {
                const int i = tr[k], j = tr[(k + 1) % 3];
                const int h = static_cast<int>(vecs.size());
                const bool boundary = (j == (i + 1) % n);
                vecs.push_back(boundary ? edges[i] : pts[j] - pts[i]);
                twins.push_back(-1);
                tags.push_back(boundary ? spec.slot_index({static_cast<int>(p), i}) : -1);
                if (boundary)
                    slot_half_edge[{static_cast<int>(p), i}] = h;
                else
                    directed[{i, j}] = h;
            }
        }
        for (const auto& [key, h] : directed) {
            const int g = directed.at({key.second, key.first});
            twins[h] = g;
        }
    }
    for (const auto& [s1, s2] : spec.gluings) {
        const int h1 = slot_half_edge.at({s1.polygon, s1.edge});
        const int h2 = slot_half_edge.at({s2.polygon, s2.edge});
        twins[h1] = h2;
        twins[h2] = h1;
        // Use exactly opposite holonomies on glued pairs.
        vecs[h2] = -vecs[h1];
    }
    return {std::move(vecs), std::move(twins), std::move(tags)};
}

StratumSignature surface_invariants(const TriangulatedSurface& s)
{
    StratumSignature sig;
    const int chi = s.num_vertices() - s.num_edges() + s.num_triangles();
    sig.genus = (2 - chi) / 2;
    for (int v = 0; v < s.num_vertices(); ++v) sig.orders.push_back(s.order(v));
    std::sort(sig.orders.rbegin(), sig.orders.rend());
    sig.area = s.area();
    return sig;
}

TriangulatedSurface scale(const TriangulatedSurface& s, double factor)
{
    return s.transformed(factor, 0.0, 0.0, factor);
}

TriangulatedSurface normalize_area(const TriangulatedSurface& s)
{
    const double a = s.area();
    if (!(a > 0.0)) throw Error(Errc::DegenerateSurface, "surface has non-positive area");
    return scale(s, 1.0 / std::sqrt(a));
}

TriangulatedSurface rotate(const TriangulatedSurface& s, double theta)
{
    const double c = std::cos(theta), sn = std::sin(theta);
    return s.transformed(c, -sn, sn, c);
}

SurfaceSpec export_spec(const TriangulatedSurface& s)
{
    SurfaceSpec spec;
    for (int t = 0; t < s.num_triangles(); ++t)
        spec.polygons.push_back({s.vec(3 * t), s.vec(3 * t + 1), s.vec(3 * t + 2)});
    for (int h = 0; h < s.num_half_edges(); ++h) {
        const int g = s.twin(h);
        if (h < g) spec.gluings.push_back({{h / 3, h % 3}, {g / 3, g % 3}});
    }
    return spec;
}

double holonomy_distance(const TriangulatedSurface& a, const TriangulatedSurface& b)
{
    if (a.num_half_edges() != b.num_half_edges()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (int h = 0; h < a.num_half_edges(); ++h) {
        if (a.twin(h) != b.twin(h)) return std::numeric_limits<double>::infinity();
        d = std::max(d, (a.vec(h) - b.vec(h)).norm());
    }
    return d;
}

} // namespace flatsys

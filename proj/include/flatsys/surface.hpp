#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "flatsys/vec2.hpp"

namespace flatsys {

inline constexpr double kGeomTol = 1e-9;

/// Reference to one side of one polygon of a SurfaceSpec.
struct EdgeSlot {
    int polygon = 0;
    int edge = 0;
    bool operator==(const EdgeSlot&) const = default;
};

/// Polygons given by their counterclockwise edge vectors, plus side pairings.
struct SurfaceSpec {
    std::vector<std::vector<Vec2>> polygons;
    std::vector<std::pair<EdgeSlot, EdgeSlot>> gluings;

    /// Global index of a slot: polygons are numbered consecutively.
    int slot_index(EdgeSlot s) const;
};

/// Builds a spec from polygon vertex lists instead of edge vectors.
SurfaceSpec spec_from_vertices(const std::vector<std::vector<Vec2>>& polygons,
                               std::vector<std::pair<EdgeSlot, EdgeSlot>> gluings);

/// Stratum data recovered from a triangulation.
struct StratumSignature {
    std::vector<int> orders; // sorted descending, 0 = marked point
    int genus = 0;
    double area = 0.0;
};

/// Oriented triangle mesh with translation gluings.
///
/// Half-edge h lives in triangle h / 3; the three half-edges of a triangle are
/// stored counterclockwise, so next(h) = 3*(h/3) + (h+1)%3.  vec(h) is the
/// holonomy of the side, twin(h) the glued side (vec(twin) == -vec).
/// Vertices are the classes of triangle corners under the gluing; every
/// vertex is a singularity or a marked point.  tag(h) is an opaque label
/// carried through flips (polygon slot index for built surfaces, -1 for
/// diagonals).
class TriangulatedSurface {
public:
    TriangulatedSurface() = default;

    /// Validates and builds.  Throws Error(DegenerateSurface) on broken input.
    TriangulatedSurface(std::vector<Vec2> vecs, std::vector<int> twins,
                        std::vector<int> tags = {});

    static constexpr int tri(int h) { return h / 3; }
    static constexpr int next(int h) { return 3 * (h / 3) + (h + 1) % 3; }
    static constexpr int prev(int h) { return 3 * (h / 3) + (h + 2) % 3; }

    int num_triangles() const { return static_cast<int>(vec_.size() / 3); }
    int num_half_edges() const { return static_cast<int>(vec_.size()); }
    int num_edges() const { return num_half_edges() / 2; }
    int num_vertices() const { return static_cast<int>(cone_angle_.size()); }

    Vec2 vec(int h) const { return vec_[h]; }
    int twin(int h) const { return twin_[h]; }
    int origin(int h) const { return origin_[h]; }
    int target(int h) const { return origin_[next(h)]; }
    int tag(int h) const { return tag_[h]; }
    std::span<const Vec2> vecs() const { return vec_; }
    std::span<const int> twins() const { return twin_; }
    std::span<const int> tags() const { return tag_; }

    /// Representative of the undirected edge containing h (the smaller index).
    int edge_rep(int h) const { return std::min(h, twin_[h]); }

    double cone_angle(int v) const { return cone_angle_[v]; }
    /// Zero order k with cone angle 2pi(k+1).
    int order(int v) const { return order_[v]; }

    /// Interior angle of triangle tri(h) at origin(h).
    double corner_angle(int h) const;
    double triangle_area(int t) const;
    double area() const;

    /// Position of origin(h) in the frame of tri(h) (corner 0 at the origin).
    Vec2 corner_position(int h) const;

    /// Corners around a vertex in counterclockwise order, starting from the
    /// smallest half-edge leaving it.
    std::vector<int> corners_ccw(int v) const;
    /// Corner following h counterclockwise around origin(h).
    int ccw_corner(int h) const { return twin_[prev(h)]; }

    /// Flips the edge of h inside the quadrilateral of its two triangles.
    ///
    /// With A = origin(h), B = target(h), C opposite in tri(h), D opposite in
    /// tri(twin(h)), the triangle tri(h) becomes [A->D, D->C, C->A] and
    /// tri(twin(h)) becomes [D->B, B->C, C->D].  Returns false (and leaves the
    /// surface untouched) if the quadrilateral is not strictly convex.
    bool flip(int h);

    /// Applies the linear map [[a, b], [c, d]] (det > 0) to all holonomies.
    TriangulatedSurface transformed(double a, double b, double c, double d) const;

private:
    void compute_vertices();

    std::vector<Vec2> vec_;
    std::vector<int> twin_;
    std::vector<int> origin_;
    std::vector<int> tag_;
    std::vector<double> cone_angle_;
    std::vector<int> order_;
};

/// Triangulates every polygon by ear clipping and glues.  Throws Error with
/// NonClosedPolygon, UnpairedEdge, NonOppositeGluing or SelfCrossingPolygon.
TriangulatedSurface build_surface(const SurfaceSpec& spec);

/// Checks the spec invariants without building.
void validate_spec(const SurfaceSpec& spec);

StratumSignature surface_invariants(const TriangulatedSurface& s);

TriangulatedSurface normalize_area(const TriangulatedSurface& s);
TriangulatedSurface rotate(const TriangulatedSurface& s, double theta);
TriangulatedSurface scale(const TriangulatedSurface& s, double factor);

/// One triangle per polygon; triangle t's sides are slots (t, 0..2).
SurfaceSpec export_spec(const TriangulatedSurface& s);

/// Largest holonomy difference between two surfaces with identical
/// combinatorics; +infinity if the combinatorics differ.
double holonomy_distance(const TriangulatedSurface& a, const TriangulatedSurface& b);

} // namespace flatsys

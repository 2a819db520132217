#pragma once

#include <vector>

#include "flatsys/surface.hpp"

namespace flatsys {

struct DelaunayOptions {
    double incircle_tol = 1e-9;
    long max_flips = 100000;
};

struct DelaunayResult {
    TriangulatedSurface surface;
    long flips = 0;
};

/// In-circle determinant of the developed quadrilateral around edge h: positive
/// when the far vertex of tri(twin(h)) lies inside the circumcircle of tri(h).
/// Normalised by the fourth power of the largest developed distance.
double incircle(const TriangulatedSurface& s, int h);

bool is_delaunay(const TriangulatedSurface& s, double tol = 1e-9);

/// Flips non-Delaunay edges (FIFO work queue) until every edge passes the
/// in-circle test.  Cocircular ties are left alone.  Throws
/// Error(FlipLimitExceeded) after opts.max_flips flips.
DelaunayResult delaunayize(const TriangulatedSurface& s, const DelaunayOptions& opts = {});

/// Union of triangles merged across cocircular edges.
struct DelaunayCell {
    std::vector<int> boundary;  ///< counterclockwise boundary half-edges
    std::vector<Vec2> vertices; ///< developed corners, vertices[0] = origin
    std::vector<int> triangles;
    bool cyclic = false;
    Vec2 center;                ///< circumcenter in the developed frame
    double radius = 0.0;

    int sides() const { return static_cast<int>(boundary.size()); }
    std::vector<double> side_lengths(const TriangulatedSurface& s) const;
};

struct CellDecomposition {
    std::vector<DelaunayCell> cells;
    std::vector<int> cell_of_triangle;
    std::vector<Vec2> triangle_offset; ///< position of corner 0 of each triangle in its cell frame
    std::vector<char> merged;          ///< per half-edge: interior to a cell
};

/// Cell decomposition of a Delaunay surface.  Throws Error(NotDelaunay).
CellDecomposition cell_decomposition(const TriangulatedSurface& s, double merge_tol = 1e-7);
std::vector<DelaunayCell> delaunay_cells(const TriangulatedSurface& s);

/// True iff every Delaunay cell is a triangle with three equal sides.
bool equilateral_certificate(const TriangulatedSurface& s, double tol = 1e-9);

/// Circumcenter of a, b, c.
Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c);

} // namespace flatsys

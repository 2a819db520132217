#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "flatsys/surface.hpp"

namespace flatsys {

/// Straight segment between two vertices with no vertex in its interior.
///
/// The segment leaves origin(corner) inside tri(corner) and crosses the
/// half-edges listed in `crossings`, each given as seen from the triangle it
/// leaves.  Half-edge ids refer to the surface the connection was found on.
/// Every crossed half-edge runs from the right of the segment to its left.
struct SaddleConnection {
    int start = -1;
    int end = -1;
    Vec2 holonomy;
    double length = 0.0;
    int corner = -1;
    std::vector<int> crossings;

    bool is_closed() const { return start == end; }
};

struct SaddleOptions {
    std::size_t node_limit = 10'000'000;
};

/// All unoriented saddle connections of length <= max_length, each reported
/// once with canonical holonomy (y > 0, or y == 0 and x > 0), sorted by
/// length, then holonomy, then endpoints.  Throws Error(BudgetExceeded).
std::vector<SaddleConnection> saddle_connections(const TriangulatedSurface& s, double max_length,
                                                 const SaddleOptions& opts = {});

struct SystoleReport {
    double value = 0.0;
    /// Per-segment count: parallel distinct connections are listed separately.
    std::vector<SaddleConnection> minimizers;
};

SystoleReport systole(const TriangulatedSurface& s, const SaddleOptions& opts = {});

/// Length of the shortest triangulation edge.
double shortest_edge(const TriangulatedSurface& s);

/// The same segment traversed backwards.
SaddleConnection reversed(const TriangulatedSurface& s, const SaddleConnection& sc);
/// Orientation with canonical holonomy.
SaddleConnection canonical(const TriangulatedSurface& s, const SaddleConnection& sc);

/// Saddle connection along a single edge.
SaddleConnection edge_connection(const TriangulatedSurface& s, int h);

/// A point of the surface: triangle plus position in its frame (corner 0 of
/// the triangle at the origin).
struct SurfacePoint {
    int tri = -1;
    Vec2 pos;
};

/// Offset of each triangle of the sleeve crossed by sc, in the frame where
/// sc starts at the origin: entry j is the position of corner 0 of the j-th
/// triangle (tri(corner) first).
std::vector<Vec2> sleeve_offsets(const TriangulatedSurface& s, const SaddleConnection& sc);

/// Point at fraction f in [0,1] along sc.
SurfacePoint point_along(const TriangulatedSurface& s, const SaddleConnection& sc, double f);

struct TraceResult {
    std::vector<int> crossings;
    SurfacePoint end;
    int vertex_corner = -1; ///< half-edge whose origin was hit, if the trace hit a vertex
    double travelled = 0.0;
};

/// Follows the straight ray from p in direction dir for `length` (or until
/// it reaches a vertex when length is infinite).
TraceResult trace_ray(const TriangulatedSurface& s, SurfacePoint p, Vec2 dir, double length);

/// The saddle connection through interior point p with direction dir,
/// oriented along dir.  Throws Error(NoSuchConnection) if the trace fails.
SaddleConnection connection_through(const TriangulatedSurface& s, SurfacePoint p, Vec2 dir);

/// Edge paths homotopic (rel endpoints) to sc, running along the right and
/// left banks of its sleeve.
std::vector<int> right_bank_chain(const TriangulatedSurface& s, const SaddleConnection& sc);
std::vector<int> left_bank_chain(const TriangulatedSurface& s, const SaddleConnection& sc);

} // namespace flatsys

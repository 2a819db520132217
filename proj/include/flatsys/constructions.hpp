#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatsys/geodesics.hpp"
#include "flatsys/surface.hpp"
#include "flatsys/topology.hpp"

namespace flatsys {

/// Square-tiled surface: square i has right neighbour h[i] and top neighbour v[i].
struct Origami {
    std::vector<int> h, v;
    int size() const { return static_cast<int>(h.size()); }
};

/// Parses a permutation of {0..n-1} in cycle notation, e.g. "(0 1 2)(3 4)";
/// "()" or "id" is the identity.  Throws Error(ParseError).
std::vector<int> parse_cycles(const std::string& text, int n);
/// Number of points named in a cycle string (largest label + 1).
int cycles_extent(const std::string& text);

/// Throws Error(DisconnectedOrigami) if <h, v> is not transitive, and
/// Precondition if h, v are not permutations of equal size.
TriangulatedSurface build_origami(const Origami& o);

/// Linear map (1,0) -> (1,0), (0,1) -> (1/2, sqrt(3)/2) and its inverse.
TriangulatedSurface shear_to_equilateral(const TriangulatedSurface& s);
TriangulatedSurface unshear_from_equilateral(const TriangulatedSurface& s);

struct CatalogEntry {
    std::string name;
    SurfaceSpec spec;
    std::vector<int> orders;        ///< expected, descending
    double normalized_systole = 0;  ///< expected
    bool global_max = false;
    bool local_max = false;
    bool hyperelliptic = false;
};

const std::vector<std::string>& catalog_names();
/// Throws Error(UnknownName).
const CatalogEntry& catalog_entry(const std::string& name);
/// Built and made Delaunay; polygon slot labels survive as edge tags.
TriangulatedSurface catalog(const std::string& name);

/// Saddle connection along the edge carrying tag `slot`, canonically
/// oriented.  Throws Error(NoSuchConnection) if no edge carries the tag.
SaddleConnection tagged_edge(const TriangulatedSurface& s, int slot);

struct IndexedConnection {
    SaddleConnection connection;
    BypassSide side = BypassSide::Left;
    int index = 0;
};

/// First systolic closed saddle connection at a zero of order k whose
/// turning index is 0 for some bypass side (left tried first).
/// Throws Error(NoSuchConnection).
IndexedConnection find_index_zero_closed_systolic(const TriangulatedSurface& s, int k);

/// Cuts S1 along g1 and S2 along g2 (equal lengths) and cross-glues the
/// banks: left of g1 to right of g2, right of g1 to left of g2.  S2 is
/// rotated so that g2 is parallel to g1.  Throws LengthMismatch or
/// SlitOnBoundary.
TriangulatedSurface slit_glue(const TriangulatedSurface& s1, const SaddleConnection& g1,
                              const TriangulatedSurface& s2, const SaddleConnection& g2);

/// Makes the segment of sc an edge by flipping the edges it crosses.
/// Returns the modified surface and the half-edge along sc (same direction).
struct EdgeInsertion {
    TriangulatedSurface surface;
    int half_edge = -1;
};
EdgeInsertion insert_edge(const TriangulatedSurface& s, const SaddleConnection& sc);

} // namespace flatsys

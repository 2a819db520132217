#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatsys/delaunay.hpp"
#include "flatsys/geodesics.hpp"
#include "flatsys/surface.hpp"

namespace flatsys {

/// Relative homology H1(S, Sigma; Z) from a dual spanning tree: the basis is
/// the set of edges not crossed by the tree, and every edge is an integer
/// combination of basis edges.
struct RelativeHomology {
    std::vector<int> basis;                  ///< half-edge representatives (edge_rep)
    std::vector<std::vector<int>> expansion; ///< per half-edge: coefficients over `basis`
    std::vector<int> dual_parent;            ///< per triangle: half-edge crossed towards the parent, -1 at root
    std::vector<int> dual_order;             ///< triangles in BFS order

    int dimension() const { return static_cast<int>(basis.size()); }
    /// Coefficients of half-edge h; its twin has the negation.
    std::vector<int> coefficients(int h) const;
};

RelativeHomology relative_homology(const TriangulatedSurface& s);

/// Closed loop in the dual graph: the sequence of crossed half-edges, each
/// seen from the triangle it leaves.  The smoothed representative passes
/// through interior points of the crossed edges, so it avoids every vertex.
struct Cycle {
    std::vector<int> crossings;
};

/// Element of a symplectic basis, as an integer combination of generators.
struct BasisCycle {
    std::vector<int> coefficients;   ///< over SymplecticBasis::generators
    int index_parity = 0;            ///< turning index mod 2
    std::optional<int> index;        ///< exact turning index when the cycle is (+/-) a single generator
};

struct SymplecticBasis {
    std::vector<Cycle> generators;          ///< 2g simple tree-cotree loops
    std::vector<int> generator_index;       ///< turning index of each generator
    std::vector<std::vector<int>> generator_intersections;
    std::vector<BasisCycle> a, b;           ///< a_i . b_i = 1, other pairings 0
    std::vector<std::vector<int>> intersection_matrix; ///< over (a_1, b_1, ..., a_g, b_g)

    int genus() const { return static_cast<int>(a.size()); }
};

/// Throws Error(NoBasis) on genus 0.
SymplecticBasis symplectic_basis(const TriangulatedSurface& s);

/// Algebraic intersection number of two dual loops.
int intersection_number(const TriangulatedSurface& s, const Cycle& x, const Cycle& y);

/// Turning index of a dual loop.
int turning_index(const TriangulatedSurface& s, const Cycle& c);

/// Which side of a vertex a closed saddle connection is pushed off to.
enum class BypassSide { Left, Right };

/// Turning index of a closed saddle connection smoothed at its vertex.  The
/// two sides differ by the order of the vertex.  Throws SingularityOnCurve
/// without a side, and Precondition if sc is not closed.
int turning_index(const TriangulatedSurface& s, const SaddleConnection& sc, std::optional<BypassSide> side);

/// Turning index of a closed planar polygon (vertices in order).
int polygon_turning_index(const std::vector<Vec2>& pts);

/// Spin parity.  Throws Error(OddOrderPresent).
int spin_parity(const TriangulatedSurface& s);
int spin_parity(const TriangulatedSurface& s, const SymplecticBasis& basis);

/// Isometric involution with derivative -Id, described on Delaunay cells.
struct Involution {
    std::vector<int> cell_map;   ///< cell -> image cell
    std::vector<int> shift;      ///< boundary[i] of a cell maps onto boundary[i + shift] of its image
    std::vector<int> vertex_map;
    int fixed_vertices = 0;
    int fixed_edges = 0;
    int fixed_cells = 0;

    int fixed_points() const { return fixed_vertices + fixed_edges + fixed_cells; }
};

/// First involution (lowest seed) whose fixed-point count is 2g + 2, i.e.
/// whose quotient is a sphere.  S must be Delaunay.
std::optional<Involution> find_involution(const TriangulatedSurface& s);
/// Every involution with derivative -Id, in seed order.
std::vector<Involution> all_involutions(const TriangulatedSurface& s);

/// Image of a saddle connection, reoriented to canonical holonomy.
SaddleConnection apply_involution(const TriangulatedSurface& s, const Involution& tau, const SaddleConnection& sc);

/// Coordinates of sc in the relative homology basis of relative_homology(s).
std::vector<int> homology_class(const TriangulatedSurface& s, const SaddleConnection& sc);
std::vector<int> homology_class(const RelativeHomology& rh, const TriangulatedSurface& s,
                                const std::vector<int>& chain);

/// Component label: hyperelliptic, odd, even, unique-nonhyperelliptic or
/// connected.  Throws InconsistentInvariants or Precondition (genus < 2).
std::string classify_component(const StratumSignature& sig, std::optional<int> spin, bool hyperelliptic);

} // namespace flatsys

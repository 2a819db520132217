#include <algorithm>
#include <cmath>
#include <deque>

#include "flatsys/error.hpp"
#include "flatsys/topology.hpp"

namespace flatsys {

namespace {

using TS = TriangulatedSurface;
constexpr double kHolTol = 1e-9;

struct BoundarySlot {
    int cell = -1;
    int index = -1;
};

std::vector<BoundarySlot> boundary_slots(const TS& s, const CellDecomposition& dec)
{
    std::vector<BoundarySlot> slots(s.num_half_edges());
    for (std::size_t c = 0; c < dec.cells.size(); ++c)
        for (std::size_t i = 0; i < dec.cells[c].boundary.size(); ++i)
            slots[dec.cells[c].boundary[i]] = {static_cast<int>(c), static_cast<int>(i)};
    return slots;
}

bool cells_match(const TS& s, const DelaunayCell& c, const DelaunayCell& d, int r)
{
    const int n = c.sides();
    if (d.sides() != n) return false;
    for (int i = 0; i < n; ++i)
        if (!near(s.vec(d.boundary[(i + r) % n]), -s.vec(c.boundary[i]), kHolTol)) return false;
    return true;
}

// Propagates the seed (cell 0 -> image with shift r) across cell walls.
std::optional<Involution> propagate(const TS& s, const CellDecomposition& dec, const std::vector<BoundarySlot>& slots,
                                    int image, int r0)
{
    const int nc = static_cast<int>(dec.cells.size());
    Involution tau;
    tau.cell_map.assign(nc, -1);
    tau.shift.assign(nc, 0);
    if (!cells_match(s, dec.cells[0], dec.cells[image], r0)) return std::nullopt;
    tau.cell_map[0] = image;
    tau.shift[0] = r0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        const auto& cell = dec.cells[c];
        const auto& img = dec.cells[tau.cell_map[c]];
        const int n = cell.sides();
        for (int i = 0; i < n; ++i) {
            const BoundarySlot nb = slots[s.twin(cell.boundary[i])];
            const BoundarySlot nb_img = slots[s.twin(img.boundary[(i + tau.shift[c]) % n])];
            const int m = dec.cells[nb.cell].sides();
            const int r = ((nb_img.index - nb.index) % m + m) % m;
            if (tau.cell_map[nb.cell] < 0) {
                if (!cells_match(s, dec.cells[nb.cell], dec.cells[nb_img.cell], r)) return std::nullopt;
                tau.cell_map[nb.cell] = nb_img.cell;
                tau.shift[nb.cell] = r;
                queue.push_back(nb.cell);
            } else if (tau.cell_map[nb.cell] != nb_img.cell || tau.shift[nb.cell] != r) {
                return std::nullopt;
            }
        }
    }
    // Bijection and square = identity.
    std::vector<char> hit(nc, 0);
    for (int c = 0; c < nc; ++c) {
        const int d = tau.cell_map[c];
        if (d < 0 || hit[d]) return std::nullopt;
        hit[d] = 1;
    }
    for (int c = 0; c < nc; ++c) {
        const int d = tau.cell_map[c];
        const int n = dec.cells[c].sides();
        if (tau.cell_map[d] != c || (tau.shift[c] + tau.shift[d]) % n != 0) return std::nullopt;
    }
    // Vertex map: corner i of c goes to corner i + shift of the image.
    tau.vertex_map.assign(s.num_vertices(), -1);
    for (int c = 0; c < nc; ++c) {
        const auto& cell = dec.cells[c];
        const auto& img = dec.cells[tau.cell_map[c]];
        const int n = cell.sides();
        for (int i = 0; i < n; ++i) {
            const int v = s.origin(cell.boundary[i]);
            const int w = s.origin(img.boundary[(i + tau.shift[c]) % n]);
            if (tau.vertex_map[v] >= 0 && tau.vertex_map[v] != w) return std::nullopt;
            tau.vertex_map[v] = w;
        }
    }
    for (int v = 0; v < s.num_vertices(); ++v) {
        const int w = tau.vertex_map[v];
        if (tau.vertex_map[w] != v || std::abs(s.cone_angle(v) - s.cone_angle(w)) > 1e-6) return std::nullopt;
        if (w == v) ++tau.fixed_vertices;
    }
    for (int c = 0; c < nc; ++c) {
        const auto& cell = dec.cells[c];
        const int n = cell.sides();
        if (tau.cell_map[c] == c) ++tau.fixed_cells;
        for (int i = 0; i < n; ++i) {
            const int h = cell.boundary[i];
            const int img = dec.cells[tau.cell_map[c]].boundary[(i + tau.shift[c]) % n];
            if (img == s.twin(h) && h < s.twin(h)) ++tau.fixed_edges;
        }
    }
    return tau;
}

int genus_of(const TS& s)
{
    const int chi = s.num_vertices() - s.num_edges() + s.num_triangles();
    return (2 - chi) / 2;
}

bool in_triangle(Vec2 a, Vec2 b, Vec2 c, Vec2 p, double tol)
{
    return cross(b - a, p - a) >= -tol && cross(c - b, p - b) >= -tol && cross(a - c, p - c) >= -tol;
}

} // namespace

std::vector<Involution> all_involutions(const TriangulatedSurface& s)
{
    const auto dec = cell_decomposition(s);
    const auto slots = boundary_slots(s, dec);
    std::vector<Involution> out;
    const int n0 = dec.cells[0].sides();
    for (std::size_t c = 0; c < dec.cells.size(); ++c) {
        if (dec.cells[c].sides() != n0) continue;
        for (int r = 0; r < n0; ++r)
            if (auto tau = propagate(s, dec, slots, static_cast<int>(c), r)) out.push_back(std::move(*tau));
    }
    return out;
}

std::optional<Involution> find_involution(const TriangulatedSurface& s)
{
    const int g = genus_of(s);
    for (auto& tau : all_involutions(s))
        if (tau.fixed_points() == 2 * g + 2) return tau;
    return std::nullopt;
}

SaddleConnection apply_involution(const TriangulatedSurface& s, const Involution& tau, const SaddleConnection& sc)
{
    const auto dec = cell_decomposition(s);
    const SurfacePoint mid = point_along(s, sc, 0.5);
    const int c = dec.cell_of_triangle[mid.tri];
    const auto& cell = dec.cells[c];
    const int d = tau.cell_map[c];
    const auto& img = dec.cells[d];
    const int n = cell.sides();
    const Vec2 q = dec.triangle_offset[mid.tri] + mid.pos;
    const Vec2 image = -(q - cell.vertices[0]) + img.vertices[tau.shift[c] % n];

    const double tol = 1e-9 * std::max(1.0, img.radius);
    for (int t : img.triangles) {
        const Vec2 a = dec.triangle_offset[t];
        const Vec2 b = a + s.vec(3 * t);
        const Vec2 cc = b + s.vec(3 * t + 1);
        if (!in_triangle(a, b, cc, image, tol)) continue;
        const auto out = connection_through(s, {t, image - a}, -sc.holonomy);
        return canonical(s, out);
    }
    throw Error(Errc::NoSuchConnection, "image point not found in its cell");
}

std::vector<int> homology_class(const RelativeHomology& rh, const TriangulatedSurface& s, const std::vector<int>& chain)
{
    (void)s;
    std::vector<int> out(rh.dimension(), 0);
    for (int h : chain) {
        const auto& e = rh.expansion[h];
        for (int k = 0; k < rh.dimension(); ++k) out[k] += e[k];
    }
    return out;
}

std::vector<int> homology_class(const TriangulatedSurface& s, const SaddleConnection& sc)
{
    return homology_class(relative_homology(s), s, right_bank_chain(s, sc));
}

std::string classify_component(const StratumSignature& sig, std::optional<int> spin, bool hyperelliptic)
{
    const int g = sig.genus;
    if (g < 2) throw Error(Errc::Precondition, "component classification needs genus >= 2");
    std::vector<int> orders;
    for (int k : sig.orders)
        if (k > 0) orders.push_back(k);
    std::sort(orders.rbegin(), orders.rend());
    int sum = 0;
    for (int k : orders) sum += k;
    if (sum != 2 * g - 2) throw Error(Errc::InconsistentInvariants, "orders do not sum to 2g - 2");

    if (g == 2) return "connected";

    const bool single = orders.size() == 1;
    const bool pair = orders.size() == 2 && orders[0] == g - 1 && orders[1] == g - 1;
    const bool has_hyp = single || pair;
    const bool odd_order = std::any_of(orders.begin(), orders.end(), [](int k) { return k % 2 != 0; });

    if (hyperelliptic) {
        if (!has_hyp) throw Error(Errc::InconsistentInvariants, "stratum has no hyperelliptic component");
        if (spin && !odd_order) {
            const int expected = ((g + 1) / 2) % 2;
            if (*spin != expected)
                throw Error(Errc::InconsistentInvariants, "spin parity contradicts the hyperelliptic component");
        }
        return "hyperelliptic";
    }
    if (odd_order) return "unique-nonhyperelliptic";
    if (g == 3) {
        // H(4) and H(2,2): the nonhyperelliptic component has odd spin.
        if (spin && *spin == 0) throw Error(Errc::InconsistentInvariants, "even spin outside the hyperelliptic component");
        return "unique-nonhyperelliptic";
    }
    if (!spin) throw Error(Errc::Precondition, "spin parity required for this stratum");
    return *spin == 0 ? "even" : "odd";
}

} // namespace flatsys

#include "flatsys/delaunay.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "flatsys/error.hpp"

namespace flatsys {

namespace {

struct Quad {
    Vec2 b, c, d; // a is the origin
};

Quad develop(const TriangulatedSurface& s, int h)
{
    const Vec2 b = s.vec(h);
    const Vec2 c = b + s.vec(TriangulatedSurface::next(h));
    const Vec2 d = s.vec(TriangulatedSurface::next(s.twin(h)));
    return {b, c, d};
}

} // namespace

Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c)
{
    const Vec2 ab = b - a, ac = c - a;
    const double den = 2.0 * cross(ab, ac);
    const double ux = (ac.y * ab.norm2() - ab.y * ac.norm2()) / den;
    const double uy = (ab.x * ac.norm2() - ac.x * ab.norm2()) / den;
    return a + Vec2{ux, uy};
}

double incircle(const TriangulatedSurface& s, int h)
{
    const auto [b, c, d] = develop(s, h);
    const Vec2 ad = -d, bd = b - d, cd = c - d;
    const double det = ad.norm2() * cross(bd, cd) - bd.norm2() * cross(ad, cd) + cd.norm2() * cross(ad, bd);
    const double l = std::max({b.norm(), c.norm(), d.norm()});
    return det / (l * l * l * l);
}

bool is_delaunay(const TriangulatedSurface& s, double tol)
{
    for (int h = 0; h < s.num_half_edges(); ++h)
        if (h < s.twin(h) && incircle(s, h) > tol) return false;
    return true;
}

DelaunayResult delaunayize(const TriangulatedSurface& s, const DelaunayOptions& opts)
{
    DelaunayResult out{s, 0};
    TriangulatedSurface& m = out.surface;
    const int n = m.num_half_edges();
    // Queue holds half-edges; the edge identity at a slot may change after a
    // flip, so every pop re-evaluates the current edge at that slot.
    std::deque<int> queue;
    std::vector<char> queued(n, 0);
    for (int h = 0; h < n; ++h)
        if (h < m.twin(h)) {
            queue.push_back(h);
            queued[h] = 1;
        }
    while (!queue.empty()) {
        const int h = queue.front();
        queue.pop_front();
        queued[h] = 0;
        if (incircle(m, h) <= opts.incircle_tol) continue;
        const int t = TriangulatedSurface::tri(h), u = TriangulatedSurface::tri(m.twin(h));
        if (!m.flip(h)) continue;
        if (++out.flips > opts.max_flips)
            throw Error(Errc::FlipLimitExceeded,
                        "more than " + std::to_string(opts.max_flips) + " flips");
        for (int k : {3 * t, 3 * t + 2, 3 * u, 3 * u + 1}) {
            const int r = m.edge_rep(k);
            if (!queued[r]) {
                queued[r] = 1;
                queue.push_back(r);
            }
        }
    }
    return out;
}

std::vector<double> DelaunayCell::side_lengths(const TriangulatedSurface& s) const
{
    std::vector<double> out;
    for (int h : boundary) out.push_back(s.vec(h).norm());
    return out;
}

CellDecomposition cell_decomposition(const TriangulatedSurface& s, double merge_tol)
{
    const int n = s.num_half_edges();
    const int nt = s.num_triangles();
    CellDecomposition dec;
    dec.merged.assign(n, 0);
    for (int h = 0; h < n; ++h) {
        if (h > s.twin(h)) continue;
        if (incircle(s, h) > 1e-9)
            throw Error(Errc::NotDelaunay, "edge " + std::to_string(h) + " fails the in-circle test");
        const auto [b, c, d] = develop(s, h);
        const Vec2 o1 = circumcenter({}, b, c);
        const Vec2 o2 = circumcenter({}, d, b);
        if ((o1 - o2).norm() <= merge_tol) dec.merged[h] = dec.merged[s.twin(h)] = 1;
    }

    std::vector<int> parent(nt);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int h = 0; h < n; ++h)
        if (dec.merged[h]) parent[find(TriangulatedSurface::tri(h))] = find(TriangulatedSurface::tri(s.twin(h)));

    dec.cell_of_triangle.assign(nt, -1);
    dec.triangle_offset.assign(nt, Vec2{});
    std::vector<int> cell_of_root(nt, -1);
    for (int t = 0; t < nt; ++t) {
        const int r = find(t);
        if (cell_of_root[r] < 0) {
            cell_of_root[r] = static_cast<int>(dec.cells.size());
            dec.cells.emplace_back();
        }
        dec.cell_of_triangle[t] = cell_of_root[r];
        dec.cells[cell_of_root[r]].triangles.push_back(t);
    }

    for (std::size_t ci = 0; ci < dec.cells.size(); ++ci) {
        DelaunayCell& cell = dec.cells[ci];
        int start = -1;
        for (int t : cell.triangles) {
            for (int k = 0; k < 3 && start < 0; ++k)
                if (!dec.merged[3 * t + k]) start = 3 * t + k;
            if (start >= 0) break;
        }
        if (start < 0) throw Error(Errc::NotDelaunay, "cell without boundary");

        // Develop the triangles of the cell around the first boundary corner.
        std::vector<char> placed(nt, 0);
        const int t0 = TriangulatedSurface::tri(start);
        dec.triangle_offset[t0] = -s.corner_position(start);
        placed[t0] = 1;
        std::deque<int> bfs{t0};
        while (!bfs.empty()) {
            const int t = bfs.front();
            bfs.pop_front();
            for (int h = 3 * t; h < 3 * t + 3; ++h) {
                if (!dec.merged[h]) continue;
                const int g = s.twin(h);
                const int u = TriangulatedSurface::tri(g);
                if (placed[u]) continue;
                const Vec2 tip = dec.triangle_offset[t] + s.corner_position(h) + s.vec(h);
                dec.triangle_offset[u] = tip - s.corner_position(g);
                placed[u] = 1;
                bfs.push_back(u);
            }
        }

        int h = start;
        Vec2 p;
        const std::size_t guard = static_cast<std::size_t>(n) + 1;
        do {
            cell.boundary.push_back(h);
            cell.vertices.push_back(p);
            p += s.vec(h);
            int nx = TriangulatedSurface::next(h);
            while (dec.merged[nx]) nx = TriangulatedSurface::next(s.twin(nx));
            h = nx;
        } while (h != start && cell.boundary.size() < guard);

        const Vec2 off = dec.triangle_offset[t0];
        const Vec2 a = off, b = off + s.vec(3 * t0), c = b + s.vec(3 * t0 + 1);
        cell.center = circumcenter(a, b, c);
        cell.radius = (a - cell.center).norm();
        cell.cyclic = std::all_of(cell.vertices.begin(), cell.vertices.end(), [&](Vec2 v) {
            return std::abs((v - cell.center).norm() - cell.radius) <= merge_tol;
        });
    }
    return dec;
}

std::vector<DelaunayCell> delaunay_cells(const TriangulatedSurface& s)
{
    return cell_decomposition(s).cells;
}

bool equilateral_certificate(const TriangulatedSurface& s, double tol)
{
    for (const auto& cell : delaunay_cells(s)) {
        if (cell.sides() != 3) return false;
        const auto l = cell.side_lengths(s);
        if (std::abs(l[0] - l[1]) > tol || std::abs(l[1] - l[2]) > tol || std::abs(l[0] - l[2]) > tol)
            return false;
    }
    return true;
}

} // namespace flatsys

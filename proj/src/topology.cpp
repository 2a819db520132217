#include "flatsys/topology.hpp"

#include <cmath>
#include <cstdlib>
#include <deque>
#include <numbers>

#include "flatsys/error.hpp"

namespace flatsys {

namespace {

using TS = TriangulatedSurface;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int rounded_index(double turning, const char* what)
{
    const double q = turning / kTwoPi;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-6)
        throw Error(Errc::Precondition, std::string(what) + ": turning is not a multiple of 2pi");
    return static_cast<int>(r);
}

// Point where a loop crosses half-edge h, at fraction f of the undirected edge.
Vec2 crossing_point(const TS& s, int h, double f)
{
    const double t = (h == s.edge_rep(h)) ? f : 1.0 - f;
    return s.corner_position(h) + t * s.vec(h);
}

double perimeter_param(const TS& s, int h, double f)
{
    const double t = (h == s.edge_rep(h)) ? f : 1.0 - f;
    return (h % 3) + t;
}

struct Chord {
    int tri;
    double s0, s1;
    Vec2 dir;
};

std::vector<Chord> chords(const TS& s, const Cycle& c, double f)
{
    std::vector<Chord> out;
    const auto& x = c.crossings;
    const std::size_t m = x.size();
    for (std::size_t j = 0; j < m; ++j) {
        const int in = s.twin(x[(j + m - 1) % m]);
        const int exit = x[j];
        out.push_back({TS::tri(exit), perimeter_param(s, in, f), perimeter_param(s, exit, f),
                       crossing_point(s, exit, f) - crossing_point(s, in, f)});
    }
    return out;
}

void check_loop(const TS& s, const Cycle& c)
{
    const auto& x = c.crossings;
    if (x.empty()) throw Error(Errc::Precondition, "empty cycle");
    for (std::size_t j = 0; j < x.size(); ++j) {
        const int g = s.twin(x[j]);
        if (TS::tri(g) != TS::tri(x[(j + 1) % x.size()]))
            throw Error(Errc::Precondition, "cycle crossings are not consecutive");
    }
}

using IntVec = std::vector<long long>;

long long pairing(const IntVec& u, const IntVec& v, const std::vector<std::vector<int>>& j)
{
    long long r = 0;
    for (std::size_t p = 0; p < u.size(); ++p)
        if (u[p])
            for (std::size_t q = 0; q < v.size(); ++q) r += u[p] * j[p][q] * v[q];
    return r;
}

void axpy(IntVec& y, long long a, const IntVec& x)
{
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}

int quadratic_form(const IntVec& x, const std::vector<int>& phi, const std::vector<std::vector<int>>& j)
{
    long long q = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        q += (x[k] & 1) * phi[k];
        for (std::size_t l = k + 1; l < x.size(); ++l) q += (x[k] & 1) * (x[l] & 1) * (j[k][l] & 1);
    }
    return static_cast<int>(((q % 2) + 2) % 2);
}

} // namespace

std::vector<int> RelativeHomology::coefficients(int h) const
{
    return expansion[h];
}

RelativeHomology relative_homology(const TriangulatedSurface& s)
{
    const int nt = s.num_triangles();
    const int n = s.num_half_edges();
    RelativeHomology rh;
    rh.dual_parent.assign(nt, -1);
    std::vector<char> seen(nt, 0), in_tree(n, 0);
    std::deque<int> bfs{0};
    seen[0] = 1;
    while (!bfs.empty()) {
        const int t = bfs.front();
        bfs.pop_front();
        rh.dual_order.push_back(t);
        for (int h = 3 * t; h < 3 * t + 3; ++h) {
            const int u = TS::tri(s.twin(h));
            if (seen[u]) continue;
            seen[u] = 1;
            rh.dual_parent[u] = s.twin(h);
            in_tree[h] = in_tree[s.twin(h)] = 1;
            bfs.push_back(u);
        }
    }

    std::vector<int> slot(n, -1);
    for (int h = 0; h < n; ++h)
        if (h == s.edge_rep(h) && !in_tree[h]) {
            slot[h] = static_cast<int>(rh.basis.size());
            rh.basis.push_back(h);
        }
    const int dim = rh.dimension();
    rh.expansion.assign(n, {});
    for (int h : rh.basis) {
        rh.expansion[h].assign(dim, 0);
        rh.expansion[h][slot[h]] = 1;
    }
    // Peel leaves first: the parent edge of t equals minus the other two sides.
    for (auto it = rh.dual_order.rbegin(); it != rh.dual_order.rend(); ++it) {
        const int p = rh.dual_parent[*it];
        if (p < 0) continue;
        std::vector<int> acc(dim, 0);
        for (int q : {TS::next(p), TS::prev(p)}) {
            const int r = s.edge_rep(q);
            const int sign = (q == r) ? 1 : -1;
            for (int k = 0; k < dim; ++k) acc[k] -= sign * rh.expansion[r][k];
        }
        const int r = s.edge_rep(p);
        const int sign = (p == r) ? 1 : -1;
        for (int& a : acc) a *= sign;
        rh.expansion[r] = std::move(acc);
    }
    for (int h = 0; h < n; ++h)
        if (h != s.edge_rep(h)) {
            rh.expansion[h] = rh.expansion[s.edge_rep(h)];
            for (int& a : rh.expansion[h]) a = -a;
        }
    return rh;
}

int turning_index(const TriangulatedSurface& s, const Cycle& c)
{
    check_loop(s, c);
    const auto ch = chords(s, c, 0.5);
    double total = 0.0;
    for (std::size_t j = 0; j < ch.size(); ++j) total += signed_angle(ch[j].dir, ch[(j + 1) % ch.size()].dir);
    return rounded_index(total, "dual loop");
}

int polygon_turning_index(const std::vector<Vec2>& pts)
{
    const std::size_t m = pts.size();
    if (m < 3) throw Error(Errc::Precondition, "polygon needs at least 3 points");
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const Vec2 d1 = pts[(j + 1) % m] - pts[j];
        const Vec2 d2 = pts[(j + 2) % m] - pts[(j + 1) % m];
        total += signed_angle(d1, d2);
    }
    return rounded_index(total, "polygon");
}

int turning_index(const TriangulatedSurface& s, const SaddleConnection& sc, std::optional<BypassSide> side)
{
    if (!sc.is_closed()) throw Error(Errc::Precondition, "saddle connection is not closed");
    if (!side) throw Error(Errc::SingularityOnCurve, "closed connection passes through a cone point; no bypass side");
    const int h_out = sc.corner;
    const int h_in = reversed(s, sc).corner;
    const Vec2 d_out = sc.holonomy, d_in = -sc.holonomy;
    const double phi_out = ccw_angle(s.vec(h_out), d_out);
    const double phi_in = ccw_angle(s.vec(h_in), d_in);

    // Counterclockwise sector from the outgoing ray to the reversed incoming ray.
    double beta = 0.0;
    if (h_out == h_in && phi_in > phi_out) {
        beta = phi_in - phi_out;
    } else {
        beta = s.corner_angle(h_out) - phi_out;
        int h = s.ccw_corner(h_out);
        for (int guard = 0; h != h_in && guard < s.num_half_edges(); ++guard) {
            beta += s.corner_angle(h);
            h = s.ccw_corner(h);
        }
        if (h != h_in) throw Error(Errc::Precondition, "corner walk did not close");
        beta += phi_in;
    }
    const double total = s.cone_angle(sc.start);
    const double turning = (*side == BypassSide::Left) ? std::numbers::pi - beta : (total - beta) - std::numbers::pi;
    return rounded_index(turning, "closed saddle connection");
}

int intersection_number(const TriangulatedSurface& s, const Cycle& x, const Cycle& y)
{
    check_loop(s, x);
    check_loop(s, y);
    const auto cx = chords(s, x, 1.0 / 3.0);
    const auto cy = chords(s, y, 2.0 / 3.0);
    int total = 0;
    for (const auto& p : cx)
        for (const auto& q : cy) {
            if (p.tri != q.tri) continue;
            const double lo = std::min(p.s0, p.s1), hi = std::max(p.s0, p.s1);
            const bool in0 = q.s0 > lo && q.s0 < hi;
            const bool in1 = q.s1 > lo && q.s1 < hi;
            if (in0 == in1) continue;
            total += cross(p.dir, q.dir) > 0 ? 1 : -1;
        }
    return total;
}

SymplecticBasis symplectic_basis(const TriangulatedSurface& s)
{
    const auto rh = relative_homology(s);
    const int n = s.num_half_edges();
    std::vector<char> cotree(n, 0);
    for (int t = 0; t < s.num_triangles(); ++t)
        if (rh.dual_parent[t] >= 0) cotree[rh.dual_parent[t]] = cotree[s.twin(rh.dual_parent[t])] = 1;

    // Primal spanning tree among the remaining edges.
    std::vector<std::vector<int>> out(s.num_vertices());
    for (int h = 0; h < n; ++h) out[s.origin(h)].push_back(h);
    std::vector<char> reached(s.num_vertices(), 0), used(n, 0);
    std::deque<int> bfs{0};
    reached[0] = 1;
    while (!bfs.empty()) {
        const int v = bfs.front();
        bfs.pop_front();
        for (int h : out[v]) {
            if (cotree[h] || reached[s.target(h)]) continue;
            reached[s.target(h)] = 1;
            used[h] = used[s.twin(h)] = 1;
            bfs.push_back(s.target(h));
        }
    }

    std::vector<int> depth(s.num_triangles(), 0);
    for (int t : rh.dual_order)
        if (rh.dual_parent[t] >= 0) depth[t] = depth[TS::tri(s.twin(rh.dual_parent[t]))] + 1;
    auto parent = [&](int t) { return TS::tri(s.twin(rh.dual_parent[t])); };

    SymplecticBasis sb;
    for (int h = 0; h < n; ++h) {
        if (h != s.edge_rep(h) || cotree[h] || used[h]) continue;
        const int u = TS::tri(h), w = TS::tri(s.twin(h));
        Cycle c;
        c.crossings.push_back(h);
        std::vector<int> down;
        int p = w, q = u;
        while (p != q) {
            if (depth[p] >= depth[q]) {
                c.crossings.push_back(rh.dual_parent[p]);
                p = parent(p);
            } else {
                down.push_back(s.twin(rh.dual_parent[q]));
                q = parent(q);
            }
        }
        c.crossings.insert(c.crossings.end(), down.rbegin(), down.rend());
        sb.generators.push_back(std::move(c));
    }
    const int m = static_cast<int>(sb.generators.size());
    if (m == 0) throw Error(Errc::NoBasis, "genus 0 surface has no homology basis");

    for (const auto& c : sb.generators) sb.generator_index.push_back(turning_index(s, c));
    sb.generator_intersections.assign(m, std::vector<int>(m, 0));
    for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l) {
            const int v = intersection_number(s, sb.generators[k], sb.generators[l]);
            sb.generator_intersections[k][l] = v;
            sb.generator_intersections[l][k] = -v;
        }
    const auto& jm = sb.generator_intersections;
    std::vector<int> phi(m);
    for (int k = 0; k < m; ++k) phi[k] = ((sb.generator_index[k] + 1) % 2 + 2) % 2;

    std::vector<IntVec> pool;
    for (int k = 0; k < m; ++k) {
        IntVec e(m, 0);
        e[k] = 1;
        pool.push_back(e);
    }
    std::vector<std::pair<IntVec, IntVec>> pairs;
    while (!pool.empty()) {
        const IntVec a = pool.front();
        pool.erase(pool.begin());
        // Euclid on the pairings with a until some vector pairs to +-1.
        int bi = -1;
        for (;;) {
            int best = -1;
            for (std::size_t k = 0; k < pool.size(); ++k) {
                const long long v = std::llabs(pairing(a, pool[k], jm));
                if (v != 0 && (best < 0 || v < std::llabs(pairing(a, pool[best], jm)))) best = static_cast<int>(k);
            }
            if (best < 0) throw Error(Errc::NoBasis, "intersection form is degenerate");
            const long long pb = pairing(a, pool[best], jm);
            if (std::llabs(pb) == 1) {
                bi = best;
                break;
            }
            bool reduced = false;
            for (std::size_t k = 0; k < pool.size(); ++k) {
                if (static_cast<int>(k) == best) continue;
                const long long pk = pairing(a, pool[k], jm);
                if (pk == 0) continue;
                const long long qk = static_cast<long long>(std::floor(static_cast<double>(pk) / static_cast<double>(pb) + 0.5));
                axpy(pool[k], -qk, pool[best]);
                reduced = true;
            }
            if (!reduced) throw Error(Errc::NoBasis, "intersection form is not unimodular");
        }
        IntVec b = pool[bi];
        pool.erase(pool.begin() + bi);
        if (pairing(a, b, jm) < 0)
            for (auto& x : b) x = -x;
        for (auto& v : pool) {
            const long long vb = pairing(v, b, jm), va = pairing(v, a, jm);
            axpy(v, -vb, a);
            axpy(v, va, b);
        }
        pairs.emplace_back(a, b);
    }

    auto make = [&](const IntVec& x) {
        BasisCycle bc;
        int single = -1, nonzero = 0;
        for (int k = 0; k < m; ++k) {
            bc.coefficients.push_back(static_cast<int>(x[k]));
            if (x[k] != 0) {
                ++nonzero;
                single = k;
            }
        }
        bc.index_parity = (quadratic_form(x, phi, jm) + 1) % 2;
        if (nonzero == 1 && std::llabs(x[single]) == 1)
            bc.index = static_cast<int>(x[single]) * sb.generator_index[single];
        return bc;
    };
    std::vector<IntVec> ordered;
    for (const auto& [a, b] : pairs) {
        sb.a.push_back(make(a));
        sb.b.push_back(make(b));
        ordered.push_back(a);
        ordered.push_back(b);
    }
    sb.intersection_matrix.assign(m, std::vector<int>(m, 0));
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) sb.intersection_matrix[k][l] = static_cast<int>(pairing(ordered[k], ordered[l], jm));
    return sb;
}

int spin_parity(const TriangulatedSurface& s, const SymplecticBasis& basis)
{
    for (int v = 0; v < s.num_vertices(); ++v)
        if (s.order(v) % 2 != 0)
            throw Error(Errc::OddOrderPresent, "vertex " + std::to_string(v) + " has odd order " + std::to_string(s.order(v)));
    int total = 0;
    for (int i = 0; i < basis.genus(); ++i)
        total += ((basis.a[i].index_parity + 1) % 2) * ((basis.b[i].index_parity + 1) % 2);
    return total % 2;
}

int spin_parity(const TriangulatedSurface& s)
{
    for (int v = 0; v < s.num_vertices(); ++v)
        if (s.order(v) % 2 != 0)
            throw Error(Errc::OddOrderPresent, "vertex " + std::to_string(v) + " has odd order " + std::to_string(s.order(v)));
    return spin_parity(s, symplectic_basis(s));
}

} // namespace flatsys

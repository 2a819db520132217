#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "flatsys/surface.hpp"

namespace flatsys::testing {

inline SurfaceSpec torus_spec(Vec2 u = {1.0, 0.0}, Vec2 w = {0.0, 1.0})
{
    SurfaceSpec spec;
    spec.polygons.push_back({u, w, -u, -w});
    spec.gluings = {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}};
    return spec;
}

// Centrally symmetric convex 2k-gon, opposite sides glued.
inline SurfaceSpec random_symmetric_polygon(std::mt19937_64& rng, int k)
{
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi), len(0.5, 2.0);
    std::vector<double> th(k);
    for (auto& t : th) t = angle(rng);
    std::sort(th.begin(), th.end());
    std::vector<Vec2> half;
    for (double t : th) half.push_back(len(rng) * Vec2{std::cos(t), std::sin(t)});
    SurfaceSpec spec;
    spec.polygons.emplace_back();
    for (auto v : half) spec.polygons[0].push_back(v);
    for (auto v : half) spec.polygons[0].push_back(-v);
    for (int i = 0; i < k; ++i) spec.gluings.push_back({{0, i}, {0, i + k}});
    return spec;
}

// Parallelogram-tiled surface with random permutations (may be disconnected).
inline SurfaceSpec random_tiled(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> shear(-0.7, 0.7), stretch(0.6, 1.6);
    const Vec2 u = {stretch(rng), 0.0};
    const Vec2 w = {shear(rng), stretch(rng)};
    std::vector<int> h(n), v(n);
    std::iota(h.begin(), h.end(), 0);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(h.begin(), h.end(), rng);
    std::shuffle(v.begin(), v.end(), rng);
    SurfaceSpec spec;
    for (int i = 0; i < n; ++i) {
        spec.polygons.push_back({u, w, -u, -w});
        spec.gluings.push_back({{i, 1}, {h[i], 3}});
        spec.gluings.push_back({{i, 2}, {v[i], 0}});
    }
    return spec;
}

inline bool connected(const SurfaceSpec& spec)
{
    const int n = static_cast<int>(spec.polygons.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& [a, b] : spec.gluings) parent[find(a.polygon)] = find(b.polygon);
    for (int i = 0; i < n; ++i)
        if (find(i) != find(0)) return false;
    return true;
}

/// Connected random spec: symmetric polygons (k = 2..6) or tiled surfaces (n = 1..8).
inline SurfaceSpec random_spec(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coin(0, 1), k(2, 6), n(1, 8);
    if (coin(rng)) return random_symmetric_polygon(rng, k(rng));
    for (;;) {
        auto spec = random_tiled(rng, n(rng));
        if (connected(spec)) return spec;
    }
}

/// Gauss-Bonnet defect: total cone excess minus 2pi(2g - 2), plus the
/// mismatch between the order sum and 2g - 2.
inline double gauss_bonnet_defect(const TriangulatedSurface& s)
{
    const int chi = s.num_vertices() - s.num_edges() + s.num_triangles();
    double excess = 0.0;
    int orders = 0;
    for (int v = 0; v < s.num_vertices(); ++v) {
        excess += s.cone_angle(v) - 2.0 * std::numbers::pi;
        orders += s.order(v);
    }
    return std::abs(excess + 2.0 * std::numbers::pi * chi) + std::abs(orders + chi);
}

/// Primitive lattice vectors (canonical half) of norm <= r for the lattice u, w.
inline std::vector<Vec2> primitive_vectors(Vec2 u, Vec2 w, double r, int range = 20)
{
    std::vector<Vec2> out;
    for (int i = -range; i <= range; ++i)
        for (int j = -range; j <= range; ++j) {
            if (std::gcd(i, j) != 1) continue;
            const Vec2 p = static_cast<double>(i) * u + static_cast<double>(j) * w;
            if (p.norm() <= r + 1e-12 && is_canonical_direction(p)) out.push_back(p);
        }
    return out;
}

} // namespace flatsys::testing

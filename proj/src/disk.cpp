#include <cmath>
#include <numbers>
#include <optional>

#include "flatsys/deform.hpp"
#include "flatsys/error.hpp"

namespace flatsys {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinDecrease = 1e-8;
constexpr double kLongSide = 1.0 + 1e-6;

double wrap(double x)
{
    x = std::remainder(x, 2.0 * kPi);
    return x <= -kPi ? x + 2.0 * kPi : x;
}

void validate(const FlatDisk& d)
{
    const int n = d.size();
    if (n < 4) throw Error(Errc::Precondition, "disk needs at least 4 boundary saddle connections");
    if (static_cast<int>(d.angles.size()) != n) throw Error(Errc::Precondition, "one angle per corner required");
    Vec2 sum;
    for (const auto& e : d.edges) {
        sum += e;
        if (e.norm() < 1.0 - 1e-12) throw Error(Errc::Precondition, "boundary side shorter than 1");
    }
    if (sum.norm() > 1e-9) throw Error(Errc::Precondition, "boundary does not close");
    for (int i = 0; i < n; ++i) {
        if (!(d.angles[i] > 0.0)) throw Error(Errc::Precondition, "corner angles must be positive");
        const double turn = signed_angle(d.edges[(i + n - 1) % n], d.edges[i]);
        if (std::abs(wrap(d.angles[i] - (kPi - turn))) > 1e-9)
            throw Error(Errc::Precondition, "angle " + std::to_string(i) + " disagrees with the edge directions");
    }
}

// Rebuilds edges from moved vertices and carries the angles along continuously.
std::optional<FlatDisk> rebuild(const FlatDisk& d, const std::vector<Vec2>& v)
{
    const int n = d.size();
    FlatDisk out;
    out.edges.resize(n);
    for (int i = 0; i < n; ++i) out.edges[i] = v[(i + 1) % n] - v[i];
    out.angles = d.angles;
    for (int i = 0; i < n; ++i) {
        const double before = signed_angle(d.edges[(i + n - 1) % n], d.edges[i]);
        const double after = signed_angle(out.edges[(i + n - 1) % n], out.edges[i]);
        out.angles[i] -= wrap(after - before);
        if (!(out.angles[i] > 0.0)) return std::nullopt;
    }
    return out;
}

Vec2 rotate_about(Vec2 p, Vec2 center, double t)
{
    return center + rotated(p - center, t);
}

// Case 1: a convex corner with a long adjacent side.
std::optional<FlatDisk> shorten_long_side(const FlatDisk& d)
{
    const int n = d.size();
    const auto v = d.vertices();
    const double area0 = d.area();
    for (int i = 0; i < n; ++i) {
        if (!(d.angles[i] < kPi)) continue;
        const int prev = (i + n - 1) % n, next = (i + 1) % n;
        for (int side : {i, prev}) {
            if (!(d.edges[side].norm() > kLongSide)) continue;
            // Keep the other adjacent side: pivot about its far end.
            const int pivot = side == i ? prev : next;
            for (double h = 1e-2; h > 1e-10; h *= 0.5)
                for (double s : {-1.0, 1.0}) {
                    auto w = v;
                    w[i] = rotate_about(v[i], v[pivot], s * h);
                    const double len = (side == i ? v[next] - w[i] : w[i] - v[prev]).norm();
                    if (len < 1.0) continue;
                    auto out = rebuild(d, w);
                    if (out && out->area() <= area0 - kMinDecrease) return out;
                }
        }
    }
    return std::nullopt;
}

// Case 2: four-bar move on the sides around two consecutive corners.
std::optional<FlatDisk> quadrilateral_move(const FlatDisk& d)
{
    const int n = d.size();
    const auto v = d.vertices();
    const double area0 = d.area();
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        const bool ok = (d.angles[i] < kPi && d.angles[j] < 2 * kPi) || (d.angles[i] < 2 * kPi && d.angles[j] < kPi);
        if (!ok) continue;
        const int p = (i + n - 1) % n, q = (j + 1) % n;
        const double lb = d.edges[i].norm(), lc = d.edges[j].norm();
        for (double h = 1e-2; h > 1e-10; h *= 0.5)
            for (double s : {-1.0, 1.0}) {
                auto w = v;
                w[i] = rotate_about(v[i], v[p], s * h);
                // w[j] on |w[j] - w[i]| = lb and |w[j] - v[q]| = lc, nearest the old position.
                const Vec2 base = v[q] - w[i];
                const double L = base.norm();
                if (L > lb + lc || L < std::abs(lb - lc) || L == 0.0) continue;
                const double x = (lb * lb - lc * lc + L * L) / (2.0 * L);
                const double y = std::sqrt(std::max(0.0, lb * lb - x * x));
                const Vec2 e = base / L, f = rotated(e, kPi / 2);
                const Vec2 c1 = w[i] + x * e + y * f, c2 = w[i] + x * e - y * f;
                w[j] = (c1 - v[j]).norm() <= (c2 - v[j]).norm() ? c1 : c2;
                auto out = rebuild(d, w);
                if (out && out->area() <= area0 - kMinDecrease) return out;
            }
    }
    return std::nullopt;
}

} // namespace

std::vector<Vec2> FlatDisk::vertices() const
{
    std::vector<Vec2> v{Vec2{}};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) v.push_back(v.back() + edges[i]);
    return v;
}

double FlatDisk::area() const
{
    return shoelace(vertices());
}

FlatDisk polygon_disk(const std::vector<Vec2>& vertices)
{
    FlatDisk d;
    const int n = static_cast<int>(vertices.size());
    for (int i = 0; i < n; ++i) d.edges.push_back(vertices[(i + 1) % n] - vertices[i]);
    for (int i = 0; i < n; ++i) d.angles.push_back(kPi - signed_angle(d.edges[(i + n - 1) % n], d.edges[i]));
    return d;
}

FlatDisk disk_decrease_step(const FlatDisk& disk)
{
    validate(disk);
    if (auto out = shorten_long_side(disk)) return *out;
    if (auto out = quadrilateral_move(disk)) return *out;
    throw Error(Errc::NoMoveFound, "no area-decreasing move found");
}

} // namespace flatsys

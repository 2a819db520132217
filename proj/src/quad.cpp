#include <cmath>
#include <numbers>

#include "flatsys/deform.hpp"
#include "flatsys/error.hpp"

namespace flatsys {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStationaryTol = 1e-12;

bool segments_cross(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2)
{
    const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

double area_at(const Quadrilateral& q, double alpha)
{
    return make_quadrilateral(q.a, q.b, q.c, q.d, alpha).K;
}

} // namespace

double solve_gamma(double a, double b, double c, double d, double alpha)
{
    const double cg = (b * b + c * c - a * a - d * d + 2.0 * a * d * std::cos(alpha)) / (2.0 * b * c);
    if (!(std::abs(cg) < 1.0))
        throw Error(Errc::NoGammaSolution, "cos(gamma) = " + std::to_string(cg) + " has no solution in (0, pi)");
    return std::acos(cg);
}

Quadrilateral make_quadrilateral(double a, double b, double c, double d, double alpha)
{
    Quadrilateral q{a, b, c, d, alpha, 0.0, 0.0};
    q.gamma = solve_gamma(a, b, c, d, alpha);
    q.K = 0.5 * (a * d * std::sin(alpha) + b * c * std::sin(q.gamma));
    return q;
}

double quad_area(const Quadrilateral& q)
{
    const double g = solve_gamma(q.a, q.b, q.c, q.d, q.alpha);
    if (std::abs(g - q.gamma) > 1e-9)
        throw Error(Errc::Precondition, "gamma " + std::to_string(q.gamma) + " does not match the side lengths (" +
                                            std::to_string(g) + ")");
    return 0.5 * (q.a * q.d * std::sin(q.alpha) + q.b * q.c * std::sin(g));
}

double quad_area_derivative(const Quadrilateral& q)
{
    const double gp = q.a * q.d * std::sin(q.alpha) / (q.b * q.c * std::sin(q.gamma));
    return 0.5 * (q.a * q.d * std::cos(q.alpha) + q.b * q.c * std::cos(q.gamma) * gp);
}

QuadPoints develop_quadrilateral(const Quadrilateral& q)
{
    QuadPoints p;
    p.M = {0.0, 0.0};
    p.N = {q.a, 0.0};
    p.Q = {q.d * std::cos(q.alpha), q.d * std::sin(q.alpha)};
    // P on the circles |NP| = b, |QP| = c, on the side making the angle at P positive.
    const Vec2 nq = p.Q - p.N;
    const double L = nq.norm();
    const double x = (q.b * q.b - q.c * q.c + L * L) / (2.0 * L);
    const double y = std::sqrt(std::max(0.0, q.b * q.b - x * x));
    const Vec2 e = nq / L;
    const Vec2 f = rotated(e, kPi / 2);
    const Vec2 p1 = p.N + x * e + y * f, p2 = p.N + x * e - y * f;
    p.P = cross(p.Q - p1, p.N - p1) > 0 ? p1 : p2;
    return p;
}

double shoelace_area(const Quadrilateral& q)
{
    const auto p = develop_quadrilateral(q);
    return shoelace(std::vector<Vec2>{p.M, p.N, p.P, p.Q});
}

double bretschneider_K2(const Quadrilateral& q)
{
    const double s = 0.5 * (q.a + q.b + q.c + q.d);
    const double ch = std::cos(0.5 * (q.alpha + q.gamma));
    return (s - q.a) * (s - q.b) * (s - q.c) * (s - q.d) - q.a * q.b * q.c * q.d * ch * ch;
}

DescentReport quad_descent(const Quadrilateral& q)
{
    if (std::abs(q.b - 1.0) > 1e-12 || std::abs(q.c - 1.0) > 1e-12)
        throw Error(Errc::Precondition, "b = c = 1 required");
    if (!(q.d >= 1.0)) throw Error(Errc::Precondition, "d >= 1 required");
    if (!(q.a > 0.0)) throw Error(Errc::Precondition, "a > 0 required");
    if (!(q.alpha > -kPi && q.alpha < kPi)) throw Error(Errc::Precondition, "alpha must lie in (-pi, pi)");
    const Quadrilateral base = make_quadrilateral(q.a, q.b, q.c, q.d, q.alpha);
    if (!(base.gamma > kPi / 3 && base.gamma < kPi)) throw Error(Errc::Precondition, "gamma must lie in (pi/3, pi)");
    const auto pts = develop_quadrilateral(base);
    if (segments_cross(pts.N, pts.P, pts.Q, pts.M)) throw Error(Errc::Precondition, "sides NP and QM intersect");

    DescentReport rep;
    rep.K = base.K;
    rep.derivative = quad_area_derivative(base);

    if (std::abs(base.alpha + base.gamma - kPi) <= 1e-9) {
        constexpr double h = 1e-3;
        double worst = -INFINITY;
        for (double s : {-1.0, 1.0}) {
            double k = -INFINITY;
            try {
                k = area_at(base, base.alpha + s * h);
            } catch (const Error&) {
                continue; // outside the chart: no competitor on that side
            }
            worst = std::max(worst, k);
        }
        if (!(worst < base.K)) throw Error(Errc::CaseContradiction, "alpha + gamma = pi but K is not a strict local maximum");
        rep.kind = DescentReport::Kind::Certificate;
        rep.step = h;
        rep.K_after = worst;
        return rep;
    }

    if (std::abs(rep.derivative) <= kStationaryTol) {
        const double gp = base.a * base.d * std::sin(base.alpha) / (base.b * base.c * std::sin(base.gamma));
        if (std::abs(base.alpha + base.gamma) <= 1e-9)
            throw Error(Errc::CaseContradiction, "stationary with alpha = -gamma (crossed cocyclic case)");
        if (std::abs(gp + 1.0) <= 1e-9) throw Error(Errc::CaseContradiction, "stationary with dgamma/dalpha = -1");
        throw Error(Errc::CaseContradiction, "stationary point outside the cocyclic case");
    }

    rep.kind = DescentReport::Kind::Descent;
    rep.direction = rep.derivative > 0 ? -1.0 : 1.0;
    const double kappa = 0.5 * std::abs(rep.derivative);
    for (double h = 1e-4; h > 1e-12; h *= 0.5) {
        const double alpha = base.alpha + rep.direction * h;
        if (!(alpha > -kPi && alpha < kPi)) continue;
        double k;
        try {
            k = area_at(base, alpha);
        } catch (const Error&) {
            continue;
        }
        if (k < base.K - kappa * h) {
            rep.step = h;
            rep.K_after = k;
            return rep;
        }
    }
    throw Error(Errc::NoMoveFound, "no descent step found");
}

} // namespace flatsys

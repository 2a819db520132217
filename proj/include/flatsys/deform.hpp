#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatsys/surface.hpp"
#include "flatsys/topology.hpp"

namespace flatsys {

/// Period coordinates: holonomies of a relative homology basis.
struct PeriodChart {
    TriangulatedSurface surface;
    RelativeHomology homology;
    std::vector<Vec2> coordinates; ///< one per basis element

    int dimension() const { return homology.dimension(); }
};

PeriodChart period_chart(const TriangulatedSurface& s);

/// Adds delta (one vector per basis element) to the periods, rebuilds the
/// holonomies with the same combinatorics and makes the result Delaunay.
/// Throws Error(DegenerateTriangle) if some triangle loses positive area.
TriangulatedSurface perturb(const PeriodChart& chart, const std::vector<Vec2>& delta);
TriangulatedSurface perturb(const TriangulatedSurface& s, const std::vector<Vec2>& delta);

struct LocalMaxOptions {
    int trials = 1000;
    double epsilon = 1e-3;
    std::uint64_t seed = 1;
    unsigned threads = 0; ///< 0 = hardware concurrency
};

struct LocalMaxReport {
    double base_systole = 0.0;
    int trials = 0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    double max_observed = 0.0;
    int skipped = 0;              ///< trials that left the chart (degenerate triangle)
    std::vector<int> skipped_trials;
    bool certified = false;
    std::optional<int> counterexample_trial;
    std::vector<Vec2> counterexample_delta;
    double counterexample_systole = 0.0;

    std::string verdict() const { return certified ? "certified-not-exceeded" : "counterexample-found"; }
};

/// Samples `trials` directions uniformly on the sphere of radius epsilon in
/// period coordinates; certified iff no trial systole exceeds the base
/// systole by more than 1e-9.  S should be area-normalized.  Trial k draws
/// from its own generator seeded with (seed, k), so the report does not
/// depend on the thread count.
LocalMaxReport verify_local_max(const TriangulatedSurface& s, const LocalMaxOptions& opts = {});

/// Quadrilateral MNPQ: a = |MN|, b = |NP|, c = |PQ|, d = |QM|, alpha the
/// oriented angle at M, gamma the angle at P.
struct Quadrilateral {
    double a = 1, b = 1, c = 1, d = 1;
    double alpha = 0;
    double gamma = 0;
    double K = 0;
};

/// gamma in (0, pi) from the side lengths and alpha.  Throws NoGammaSolution.
double solve_gamma(double a, double b, double c, double d, double alpha);
/// Fills gamma and K.
Quadrilateral make_quadrilateral(double a, double b, double c, double d, double alpha);
/// Algebraic area; checks q.gamma against the value solved from alpha.
double quad_area(const Quadrilateral& q);
/// dK/dalpha.
double quad_area_derivative(const Quadrilateral& q);

struct QuadPoints {
    Vec2 M, N, P, Q;
};
QuadPoints develop_quadrilateral(const Quadrilateral& q);
double shoelace_area(const Quadrilateral& q);
/// K^2 from the side lengths and alpha + gamma.
double bretschneider_K2(const Quadrilateral& q);

struct DescentReport {
    enum class Kind { Descent, Certificate };
    Kind kind = Kind::Descent;
    double direction = 0.0; ///< sign of the alpha move (descent only)
    double step = 0.0;
    double K = 0.0;
    double K_after = 0.0;   ///< K after the step, or max(K(alpha +- 1e-3)) for a certificate
    double derivative = 0.0;
    std::string kind_name() const { return kind == Kind::Descent ? "descent" : "certificate"; }
};

/// Requires b = c = 1, d >= 1, gamma in (pi/3, pi), alpha in (-pi, pi) and
/// disjoint sides NP, QM (Error(Precondition) otherwise).  Throws
/// CaseContradiction if a stationary point with alpha = -gamma or
/// dgamma/dalpha = -1 is met.
DescentReport quad_descent(const Quadrilateral& q);

/// Topological disk with a developed boundary of n edge vectors; angle i is
/// the interior angle between edge i-1 and edge i and may exceed 2pi.
struct FlatDisk {
    std::vector<Vec2> edges;
    std::vector<double> angles;

    int size() const { return static_cast<int>(edges.size()); }
    std::vector<Vec2> vertices() const;
    double area() const;
};

/// Disk bounded by a simple counterclockwise polygon.
FlatDisk polygon_disk(const std::vector<Vec2>& vertices);

/// One area-decreasing move keeping every unit side of length 1.
/// Throws Precondition (n < 4, side < 1, bad angles) or NoMoveFound.
FlatDisk disk_decrease_step(const FlatDisk& disk);

} // namespace flatsys

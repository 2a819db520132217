#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "flatsys/error.hpp"
#include "flatsys/json_io.hpp"
#include "flatsys/surface.hpp"
#include "support.hpp"

using namespace flatsys;
using flatsys::testing::torus_spec;

namespace {

Errc build_error(const SurfaceSpec& spec)
{
    try {
        build_surface(spec);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("build_surface accepted an invalid spec");
    return Errc::ParseError;
}

} // namespace

TEST_CASE("unit square torus")
{
    const auto s = build_surface(torus_spec());
    const auto sig = surface_invariants(s);
    CHECK(sig.genus == 1);
    CHECK(sig.orders == std::vector<int>{0});
    CHECK(sig.area == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.num_vertices() == 1);
    CHECK(s.num_triangles() == 2);
    CHECK(s.cone_angle(0) == doctest::Approx(2 * std::numbers::pi));
    for (int h = 0; h < s.num_half_edges(); ++h) {
        CHECK(s.twin(s.twin(h)) == h);
        CHECK(near(s.vec(s.twin(h)), -s.vec(h), 1e-15));
    }
}

TEST_CASE("regular octagon is H(2)")
{
    SurfaceSpec spec;
    spec.polygons.emplace_back();
    for (int i = 0; i < 8; ++i) spec.polygons[0].push_back(rotated({1.0, 0.0}, i * std::numbers::pi / 4));
    for (int i = 0; i < 4; ++i) spec.gluings.push_back({{0, i}, {0, i + 4}});
    const auto sig = surface_invariants(build_surface(spec));
    CHECK(sig.genus == 2);
    CHECK(sig.orders == std::vector<int>{2});
    CHECK(sig.area == doctest::Approx(2.0 * (1.0 + std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("spec validation errors")
{
    SUBCASE("open polygon")
    {
        auto spec = torus_spec();
        spec.polygons[0][1] = {0.0, 1.1};
        CHECK(build_error(spec) == Errc::NonClosedPolygon);
    }
    SUBCASE("unpaired side")
    {
        auto spec = torus_spec();
        spec.gluings.pop_back();
        CHECK(build_error(spec) == Errc::UnpairedEdge);
    }
    SUBCASE("sides not opposite")
    {
        auto spec = torus_spec();
        spec.gluings = {{{0, 0}, {0, 1}}, {{0, 2}, {0, 3}}};
        CHECK(build_error(spec) == Errc::NonOppositeGluing);
    }
    SUBCASE("clockwise polygon")
    {
        auto spec = torus_spec({0.0, 1.0}, {1.0, 0.0});
        CHECK(build_error(spec) == Errc::SelfCrossingPolygon);
    }
    SUBCASE("bowtie")
    {
        SurfaceSpec spec;
        spec.polygons.push_back({{2.0, 0.0}, {-1.0, 1.0}, {1.0, 0.0}, {-2.0, -1.0}});
        spec.gluings = {{{0, 0}, {0, 3}}, {{0, 1}, {0, 2}}};
        CHECK_THROWS_AS(build_surface(spec), Error);
    }
}

TEST_CASE("Gauss-Bonnet on random specs")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto spec = flatsys::testing::random_spec(rng);
        const auto s = build_surface(spec);
        CHECK(flatsys::testing::gauss_bonnet_defect(s) < 1e-9);
    }
}

TEST_CASE("similarities")
{
    std::mt19937_64 rng(11);
    const auto s = build_surface(flatsys::testing::random_symmetric_polygon(rng, 5));
    const auto sig = surface_invariants(s);
    CHECK(normalize_area(s).area() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(scale(s, 3.0).area() == doctest::Approx(9.0 * sig.area).epsilon(1e-13));
    const auto r = rotate(s, 0.7);
    CHECK(r.area() == doctest::Approx(sig.area).epsilon(1e-13));
    CHECK(surface_invariants(r).orders == sig.orders);
    CHECK(holonomy_distance(rotate(r, -0.7), s) < 1e-12);
}

TEST_CASE("export round trip")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto s = build_surface(flatsys::testing::random_spec(rng));
        const auto back = build_surface(export_spec(s));
        const auto a = surface_invariants(s), b = surface_invariants(back);
        CHECK(a.genus == b.genus);
        CHECK(a.orders == b.orders);
        CHECK(a.area == doctest::Approx(b.area).epsilon(1e-12));
        CHECK(holonomy_distance(s, back) < 1e-12);
    }
}

TEST_CASE("flips preserve the surface")
{
    std::mt19937_64 rng(5);
    auto s = build_surface(flatsys::testing::random_symmetric_polygon(rng, 4));
    const auto sig = surface_invariants(s);
    int flipped = 0;
    for (int h = 0; h < s.num_half_edges(); ++h) {
        if (!s.flip(h)) continue;
        ++flipped;
        const auto now = surface_invariants(s);
        CHECK(now.orders == sig.orders);
        CHECK(now.area == doctest::Approx(sig.area).epsilon(1e-12));
    }
    CHECK(flipped > 0);
}

TEST_CASE("json round trip")
{
    std::mt19937_64 rng(9);
    const auto spec = flatsys::testing::random_symmetric_polygon(rng, 3);
    const auto back = spec_from_json(nlohmann::json::parse(spec_to_json(spec).dump()));
    REQUIRE(back.polygons.size() == 1);
    for (std::size_t i = 0; i < spec.polygons[0].size(); ++i) CHECK(back.polygons[0][i] == spec.polygons[0][i]);
    CHECK(back.gluings == spec.gluings);
}

TEST_CASE("json parse errors")
{
    for (const char* text : {R"({"gluings": []})", R"({"polygons": [[[0, 0]]], "gluings": [[1, 2]]})",
                             R"({"polygons": "x", "gluings": []})"}) {
        try {
            spec_from_json(nlohmann::json::parse(text));
            FAIL("accepted " << text);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::ParseError);
        }
    }
    CHECK_THROWS_AS(read_spec_file("/nonexistent/spec.json"), Error);
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flatsys/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
    json doc() const { return json::parse(out); }
    json error() const { return json::parse(err).at("error"); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Run r;
    r.code = flatsys::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("flatsys_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

const char* kTorus = R"({"polygons": [[[1, 0], [0, 1], [-1, 0], [0, -1]]], "gluings": [[[0, 0], [0, 2]], [[0, 1], [0, 3]]]})";

} // namespace

TEST_CASE("catalog listing and entries")
{
    const auto r = run({"catalog"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["names"].size() == 5);
    const auto e = run({"catalog", "--catalog", "S_2_0"}).doc();
    CHECK(e["orders"] == json::array({2, 0}));
    CHECK(e["global_max"] == false);
    CHECK(e["spec"]["polygons"].size() == 1);
}

TEST_CASE("info and systole")
{
    const auto info = run({"info", "--catalog", "S_1_1"}).doc();
    CHECK(info["genus"] == 2);
    CHECK(info["orders"] == json::array({1, 1}));
    CHECK(info["vertices"] == 2);
    CHECK(info["triangles"] == 8);
    const auto sys = run({"systole", "--catalog", "S_2", "--normalize"}).doc();
    CHECK(sys["value"].get<double>() == doctest::Approx(0.620403239).epsilon(1e-8));
    CHECK(sys["count"] == 9);
    CHECK(sys["multiplicity"] == "per-segment");
    CHECK(sys["minimizers"][0].contains("holonomy"));
}

TEST_CASE("surface files")
{
    const auto path = temp_file("torus.json", kTorus);
    const auto list = run({"sc-list", "--surface", path, "--length", "2.3"}).doc();
    CHECK(list["count"] == 8); // primitive vectors of norm <= 2.3, up to sign
    const auto del = run({"delaunay", "--surface", path}).doc();
    CHECK(del["cells"].size() == 1);
    CHECK(del["cells"][0]["type"] == "quadrilateral");
    CHECK(del["equilateral"] == false);
    CHECK(run({"spin", "--surface", path}).doc()["parity"] == 1);
}

TEST_CASE("invariant verbs")
{
    CHECK(run({"spin", "--catalog", "S_2_0_0"}).doc()["parity"] == 1);
    const auto hyp = run({"hyperelliptic", "--catalog", "S_1_1"}).doc();
    CHECK(hyp["involution_found"] == true);
    CHECK(hyp["fixed_points"] == 6);
    CHECK(run({"hyperelliptic", "--catalog", "S_2_0"}).doc()["involution_found"] == false);
    const auto cls = run({"classify", "--catalog", "S_1_1"}).doc();
    CHECK(cls["component"] == "connected");
    CHECK(cls["parity"].is_null());
}

TEST_CASE("origami and glue")
{
    const auto o = run({"origami", "--h", "(0 1 2 3 4)", "--v", "(0 3)(1 2)"}).doc();
    CHECK(o["genus"] == 3);
    CHECK(o["orders"] == json::array({4}));
    const auto sh = run({"origami", "--h", "(0 1 2)", "--v", "(1 2)", "--shear", "--normalize"}).doc();
    CHECK(sh["equilateral"] == true);
    CHECK(sh["systole"].get<double>() == doctest::Approx(0.620403239).epsilon(1e-8));

    const auto spec = std::filesystem::temp_directory_path() / "flatsys_cli_glued.json";
    const auto g = run({"glue", "--left", "S_2_0", "--left-sc", "0", "--right", "S_2", "--write-spec", spec.string()});
    REQUIRE(g.code == 0);
    CHECK(g.doc()["systole"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    const auto back = run({"info", "--surface", spec.string()}).doc();
    CHECK(back["orders"] == g.doc()["orders"]);
    CHECK(back["area"].get<double>() == doctest::Approx(g.doc()["area"].get<double>()).epsilon(1e-12));

    const auto bad = run({"glue", "--left", "S_2_0", "--left-sc", "40", "--right", "S_2"});
    CHECK(bad.code == flatsys::kExitValidation);
    CHECK(bad.error()["code"] == "NoSuchConnection");
}

TEST_CASE("verify-localmax is deterministic")
{
    const auto a = run({"verify-localmax", "--catalog", "S_2_0", "--trials", "40", "--eps", "1e-2", "--seed", "5", "--threads", "1"});
    const auto b = run({"verify-localmax", "--catalog", "S_2_0", "--trials", "40", "--eps", "1e-2", "--seed", "5", "--threads", "3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.doc()["verdict"] == "certified-not-exceeded");
    CHECK(a.doc()["counterexample"].is_null());
}

TEST_CASE("quad")
{
    const auto q = run({"quad", "--a", "1.2", "--d", "1.1", "--alpha", "0.9"}).doc();
    CHECK(q["K"].get<double>() == doctest::Approx(q["shoelace"].get<double>()).epsilon(1e-12));
    CHECK(q["descent"]["kind"] == "descent");
    const auto bad = run({"quad", "--a", "5", "--d", "1", "--alpha", "0.1"});
    CHECK(bad.code == flatsys::kExitValidation);
    CHECK(bad.error()["code"] == "NoGammaSolution");
}

TEST_CASE("render and --output")
{
    const auto svg = run({"render", "--catalog", "S_2_0_0"});
    REQUIRE(svg.code == 0);
    CHECK(svg.out.rfind("<svg", 0) == 0);
    CHECK(svg.out.find("<polygon") != std::string::npos);

    const auto path = std::filesystem::temp_directory_path() / "flatsys_cli_out.json";
    std::filesystem::remove(path);
    const auto r = run({"--output", path.string(), "info", "--catalog", "S_2"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(json::parse(in)["genus"] == 2);

    const auto svg_path = std::filesystem::temp_directory_path() / "flatsys_cli_out.svg";
    CHECK(run({"render", "--catalog", "S_2", "--output", svg_path.string()}).code == 0);
    CHECK(std::filesystem::file_size(svg_path) > 0);
}

TEST_CASE("exit codes and error objects")
{
    SUBCASE("usage")
    {
        for (const auto& args : std::vector<std::vector<std::string>>{
                 {}, {"frobnicate"}, {"info"}, {"info", "--catalog", "S_2", "--surface", "x.json"}, {"sc-list", "--catalog", "S_2"},
                 {"quad", "--a", "one", "--d", "1", "--alpha", "0"}}) {
            const auto r = run(args);
            CHECK(r.code == flatsys::kExitUsage);
            CHECK(r.error()["code"] == "Usage");
            CHECK(r.out.empty());
        }
    }
    SUBCASE("validation")
    {
        const auto unknown = run({"info", "--catalog", "S_9"});
        CHECK(unknown.code == flatsys::kExitValidation);
        CHECK(unknown.error()["code"] == "UnknownName");
        CHECK(unknown.error()["message"].is_string());

        const auto path = temp_file("skew.json", R"({"polygons": [[[1, 0], [0, 1], [-1, 0], [0, -1]]], "gluings": [[[0, 0], [0, 1]], [[0, 2], [0, 3]]]})");
        const auto skew = run({"info", "--surface", path});
        CHECK(skew.code == flatsys::kExitValidation);
        CHECK(skew.error()["code"] == "NonOppositeGluing");

        const auto junk = run({"info", "--surface", temp_file("junk.json", "{not json")});
        CHECK(junk.code == flatsys::kExitValidation);
        CHECK(junk.error()["code"] == "ParseError");

        const auto odd = run({"spin", "--catalog", "S_1_1"});
        CHECK(odd.code == flatsys::kExitValidation);
        CHECK(odd.error()["code"] == "OddOrderPresent");
    }
    SUBCASE("help")
    {
        const auto r = run({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("verify-localmax") != std::string::npos);
    }
}

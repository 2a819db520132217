#include "flatsys/json_io.hpp"

#include <fstream>

#include "flatsys/error.hpp"

namespace flatsys {

namespace {

[[noreturn]] void bad(const std::string& why)
{
    throw Error(Errc::ParseError, "surface spec: " + why);
}

Vec2 vec_from(const nlohmann::json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) bad("vector must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

EdgeSlot slot_from(const nlohmann::json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        bad("edge slot must be [polygon, edge]");
    return {j[0].get<int>(), j[1].get<int>()};
}

} // namespace

SurfaceSpec spec_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("polygons") || !j.contains("gluings")) bad("expected keys 'polygons' and 'gluings'");
    if (!j["polygons"].is_array() || !j["gluings"].is_array()) bad("'polygons' and 'gluings' must be arrays");
    SurfaceSpec spec;
    for (const auto& poly : j["polygons"]) {
        if (!poly.is_array()) bad("polygon must be an array of edge vectors");
        std::vector<Vec2> edges;
        for (const auto& e : poly) edges.push_back(vec_from(e));
        spec.polygons.push_back(std::move(edges));
    }
    for (const auto& g : j["gluings"]) {
        if (!g.is_array() || g.size() != 2) bad("gluing must be a pair of edge slots");
        spec.gluings.emplace_back(slot_from(g[0]), slot_from(g[1]));
    }
    return spec;
}

nlohmann::ordered_json spec_to_json(const SurfaceSpec& spec)
{
    nlohmann::ordered_json j;
    j["polygons"] = nlohmann::ordered_json::array();
    for (const auto& poly : spec.polygons) {
        auto p = nlohmann::ordered_json::array();
        for (const auto& e : poly) p.push_back({e.x, e.y});
        j["polygons"].push_back(std::move(p));
    }
    j["gluings"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : spec.gluings)
        j["gluings"].push_back({{a.polygon, a.edge}, {b.polygon, b.edge}});
    return j;
}

SurfaceSpec read_spec_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, "'" + path + "': " + e.what());
    }
    return spec_from_json(j);
}

} // namespace flatsys

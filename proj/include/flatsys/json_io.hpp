#pragma once

#include <string>

#include <json.hpp>

#include "flatsys/surface.hpp"

namespace flatsys {

/// {"polygons": [[[x,y], ...], ...], "gluings": [[[p,e],[q,f]], ...]}; the
/// points of a polygon are its edge vectors.  Throws Error(ParseError).
SurfaceSpec spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json spec_to_json(const SurfaceSpec& spec);

SurfaceSpec read_spec_file(const std::string& path);

} // namespace flatsys

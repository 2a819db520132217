#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flatsys/surface.hpp"

namespace flatsys {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;

/// Runs one command (args exclude the program name).  Writes a single JSON
/// document (or SVG for render) to `out`, errors as JSON to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// SVG drawing of the spec polygons with gluing labels on the sides.
std::string render_svg(const SurfaceSpec& spec);

} // namespace flatsys

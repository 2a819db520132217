#pragma once

#include <stdexcept>
#include <string>

namespace flatsys {

enum class Errc {
    NonClosedPolygon,
    UnpairedEdge,
    NonOppositeGluing,
    SelfCrossingPolygon,
    DegenerateSurface,
    FlipLimitExceeded,
    NotDelaunay,
    BudgetExceeded,
    NoBasis,
    SingularityOnCurve,
    OddOrderPresent,
    InconsistentInvariants,
    UnknownName,
    DisconnectedOrigami,
    NoSuchConnection,
    LengthMismatch,
    SlitOnBoundary,
    DegenerateTriangle,
    NoGammaSolution,
    CaseContradiction,
    Precondition,
    NoMoveFound,
    ParseError,
};

/// Stable machine-readable name of an error code (used in CLI error objects).
const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace flatsys

#include "flatsys/error.hpp"

namespace flatsys {

const char* errc_name(Errc code)
{
    switch (code) {
    case Errc::NonClosedPolygon: return "NonClosedPolygon";
    case Errc::UnpairedEdge: return "UnpairedEdge";
    case Errc::NonOppositeGluing: return "NonOppositeGluing";
    case Errc::SelfCrossingPolygon: return "SelfCrossingPolygon";
    case Errc::DegenerateSurface: return "DegenerateSurface";
    case Errc::FlipLimitExceeded: return "FlipLimitExceeded";
    case Errc::NotDelaunay: return "NotDelaunay";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NoBasis: return "NoBasis";
    case Errc::SingularityOnCurve: return "SingularityOnCurve";
    case Errc::OddOrderPresent: return "OddOrderPresent";
    case Errc::InconsistentInvariants: return "InconsistentInvariants";
    case Errc::UnknownName: return "UnknownName";
    case Errc::DisconnectedOrigami: return "DisconnectedOrigami";
    case Errc::NoSuchConnection: return "NoSuchConnection";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::SlitOnBoundary: return "SlitOnBoundary";
    case Errc::DegenerateTriangle: return "DegenerateTriangle";
    case Errc::NoGammaSolution: return "NoGammaSolution";
    case Errc::CaseContradiction: return "CaseContradiction";
    case Errc::Precondition: return "Precondition";
    case Errc::NoMoveFound: return "NoMoveFound";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace flatsys

#include "qcorr/error.hpp"

namespace qcorr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::NotADistribution: return "NotADistribution";
    case ErrorKind::SinglePartyState: return "SinglePartyState";
    case ErrorKind::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotAProjector: return "NotAProjector";
    case ErrorKind::NotAQubit: return "NotAQubit";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace qcorr

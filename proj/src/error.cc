#include "phasekit/error.h"

namespace phasekit {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
            return "InvalidArgument";
        case ErrorKind::NotNormalized:
            return "NotNormalized";
        case ErrorKind::EmptyState:
            return "EmptyState";
        case ErrorKind::CutoffTooSmall:
            return "CutoffTooSmall";
        case ErrorKind::NonFactorizableSigns:
            return "NonFactorizableSigns";
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::GridTooCoarse:
            return "GridTooCoarse";
        case ErrorKind::SolverFailure:
            return "SolverFailure";
        case ErrorKind::NonHermitianInput:
            return "NonHermitianInput";
        case ErrorKind::OutOfEnvelope:
            return "OutOfEnvelope";
        case ErrorKind::TailNotConverged:
            return "TailNotConverged";
        case ErrorKind::NoRootsInRange:
            return "NoRootsInRange";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace phasekit

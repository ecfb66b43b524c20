#ifndef PHASEKIT_ERROR_H
#define PHASEKIT_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace phasekit {

enum class ErrorKind {
    InvalidArgument,
    NotNormalized,
    EmptyState,
    CutoffTooSmall,
    NonFactorizableSigns,
    DimensionMismatch,
    GridTooCoarse,
    SolverFailure,
    NonHermitianInput,
    OutOfEnvelope,
    TailNotConverged,
    NoRootsInRange,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

}  // namespace phasekit

#endif

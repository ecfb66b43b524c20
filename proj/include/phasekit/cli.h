#ifndef PHASEKIT_CLI_H
#define PHASEKIT_CLI_H

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasekit/cost.h"
#include "phasekit/spectrum.h"

namespace phasekit::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kSolver = 3,
    kEmptyResult = 4,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "variance", "likelihood:L", "fidelity:L" or "coeffs:c0,c1,...".
/// Fidelity needs the state it is built from.
CostModel parse_cost_spec(std::string_view text, const ReducedState *state = nullptr);

/// "uniform2", "point:K", "weights:w0,w1,..." (optionally on `spectrum`) or
/// "file:PATH" holding a ReducedState JSON document.
ReducedState parse_state_spec(std::string_view text, const std::optional<Spectrum> &spectrum = std::nullopt);

/// "a", "a,b,c" or "start:stop:step" (stop inclusive).
std::vector<double> parse_grid(std::string_view text);

/// "lo:hi".
std::pair<double, double> parse_interval(std::string_view text);

}  // namespace phasekit::cli

#endif

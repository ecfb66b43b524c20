#ifndef PHASEKIT_SERIALIZE_H
#define PHASEKIT_SERIALIZE_H

#include <json.hpp>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "phasekit/cost.h"
#include "phasekit/optimizer.h"
#include "phasekit/pom.h"
#include "phasekit/simulate.h"
#include "phasekit/spectrum.h"
#include "phasekit/two_mode.h"

namespace phasekit {

using Json = nlohmann::ordered_json;

Json to_json(const Spectrum &spectrum);
Json to_json(const ReducedState &state);
Json to_json(const OccupationMap &map);
Json to_json(const CostModel &model);
/// mu is written as null for the vacuum endpoint.
Json to_json(const TwoModeSolution &solution);
Json to_json(const DiscretePom &pom);
/// Run report with a K-bin histogram; samples themselves are not included.
Json run_report(const SimulationRun &run, const CostEstimate &cost, int bins);

/// Strict parsers: unknown keys and wrong types raise InvalidArgument.
Spectrum spectrum_from_json(const Json &j);
ReducedState reduced_state_from_json(const Json &j);
CostModel cost_model_from_json(const Json &j);

/// %.17g formatting used for every CSV number.
std::string format_double(double v);

/// Row-major real part of a cost matrix with an "n\m" header row.
void write_matrix_csv(std::ostream &out, const HermitianMatrix &matrix, const Spectrum &spectrum);
/// Columns N, cost, lambda, mu.
void write_frontier_csv(std::ostream &out, std::span<const TwoModeSolution> frontier);
/// Columns phi_est, density on a uniform grid over [0, 2pi).
void write_density_csv(std::ostream &out, const ReducedState &state, double phi_true, int points);

/// Samples as little-endian IEEE-754 doubles.
void write_samples_binary(std::ostream &out, std::span<const double> samples);

}  // namespace phasekit

#endif

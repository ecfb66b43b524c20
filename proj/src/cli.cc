#include "phasekit/cli.h"

#include <CLI11.hpp>
#include <charconv>
#include <cstring>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "phasekit/bessel.h"
#include "phasekit/error.h"
#include "phasekit/optimizer.h"
#include "phasekit/pom.h"
#include "phasekit/serialize.h"
#include "phasekit/simulate.h"
#include "phasekit/two_mode.h"

namespace phasekit::cli {

namespace {

/// Validation failure tagged with the flag that caused it.
struct ParamError {
    std::string param;
    std::string message;
};

double parse_double(std::string_view text, std::string_view what) {
    std::string s(text);
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        fail(ErrorKind::InvalidArgument, "cannot parse " + std::string(what) + " from '" + s + "'");
    }
    return v;
}

int parse_int(std::string_view text, std::string_view what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        fail(ErrorKind::InvalidArgument, "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

template <typename F>
auto checked(const std::string &param, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::SolverFailure || e.kind() == ErrorKind::NoRootsInRange ||
            e.kind() == ErrorKind::TailNotConverged || e.kind() == ErrorKind::NonHermitianInput) {
            throw;
        }
        throw ParamError{param, e.what()};
    }
}

int default_threads() {
    if (const char *env = std::getenv("PHASEKIT_THREADS")) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
        if (ec == std::errc() && v > 0) {
            return v;
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Options every command shares.
struct Common {
    std::string format = "json";
    std::string out_path;
    std::string config_path;
    int threads = 0;
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_option("--out", c.out_path, "Write the report to this file instead of stdout");
    cmd->add_option("--config", c.config_path, "JSON file of option values; flags given on the command line win");
    cmd->add_option("--threads", c.threads, "Worker threads (default: $PHASEKIT_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
}

class Output {
   public:
    Output(const Common &c, std::ostream &fallback) : stream_(&fallback) {
        if (!c.out_path.empty()) {
            file_.open(c.out_path, std::ios::binary);
            if (!file_) {
                throw ParamError{"--out", "cannot open '" + c.out_path + "' for writing"};
            }
            stream_ = &file_;
        }
    }
    std::ostream &stream() {
        return *stream_;
    }

   private:
    std::ofstream file_;
    std::ostream *stream_;
};

void emit_json(Output &out, const Json &j) {
    out.stream() << j.dump(2) << '\n';
}

/// Expands a --config JSON object into flag tokens placed before the real
/// arguments, so that repeated options resolve to the command-line value.
std::vector<std::string> expand_config(CLI::App *cmd, const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParamError{"--config", "cannot open '" + path + "'"};
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ParamError{"--config", std::string("malformed JSON: ") + e.what()};
    }
    if (!j.is_object()) {
        throw ParamError{"--config", "top level must be an object"};
    }
    std::vector<std::string> tokens;
    for (const auto &[key, value] : j.items()) {
        if (key == "config" || cmd->get_option_no_throw("--" + key) == nullptr) {
            throw ParamError{"--config", "unknown key '" + key + "'"};
        }
        const std::string flag = "--" + key;
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                tokens.push_back(flag);
            }
        } else if (value.is_string()) {
            tokens.push_back(flag);
            tokens.push_back(value.get<std::string>());
        } else if (value.is_number_integer()) {
            tokens.push_back(flag);
            tokens.push_back(std::to_string(value.get<long long>()));
        } else if (value.is_number()) {
            tokens.push_back(flag);
            tokens.push_back(format_double(value.get<double>()));
        } else {
            throw ParamError{"--config", "value for '" + key + "' must be a string, number or boolean"};
        }
    }
    return tokens;
}

Json chebyshev_comparison(const EigenSolution &sol, std::size_t size) {
    const double theta = std::numbers::pi / static_cast<double>(size + 1);
    auto expected = chebyshev_amplitudes(theta, static_cast<int>(size) - 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        worst = std::max(worst, std::abs(sol.weights[i] - std::abs(expected[i])));
    }
    Json j;
    j["theta"] = theta;
    j["eigenvalue"] = 2.0 - 2.0 * std::cos(theta);
    j["eigenvalue_deviation"] = std::abs(sol.eigenvalue - (2.0 - 2.0 * std::cos(theta)));
    j["max_weight_deviation"] = worst;
    return j;
}

struct OptimalStateArgs {
    Common common;
    std::string spectrum;
    std::string cost;
    double mu_prime = 0.0;
};

int cmd_optimal_state(const OptimalStateArgs &a, std::ostream &out) {
    const auto spectrum = checked("--spectrum", [&] { return parse_spectrum(a.spectrum); });
    if (a.cost.rfind("fidelity", 0) == 0) {
        throw ParamError{"--cost", "fidelity cost depends on the state being optimized; use it with simulate or cost-eval"};
    }
    const auto model = checked("--cost", [&] { return parse_cost_spec(a.cost); });
    const auto xi = checked("--cost", [&] { return optimal_xi(model, spectrum); });
    const auto matrix = cost_operator_matrix(model, xi);

    std::optional<std::vector<double>> energy;
    std::optional<double> mu;
    if (a.mu_prime != 0.0) {
        energy.emplace();
        for (std::size_t i = 0; i < spectrum.size(); ++i) {
            energy->push_back(std::abs(spectrum.eigenvalue(i)));
        }
        mu = a.mu_prime;
    }
    const auto sol = optimal_state_numeric(matrix, energy, mu);
    const auto state = sol.as_state(spectrum);

    Output o(a.common, out);
    if (a.common.format == "csv") {
        o.stream() << "n,weight\n";
        for (std::size_t i = 0; i < spectrum.size(); ++i) {
            o.stream() << spectrum.eigenvalue(i) << ',' << format_double(state.weights()[i]) << '\n';
        }
        return kOk;
    }
    Json j;
    j["command"] = "optimal-state";
    j["spectrum"] = to_json(spectrum);
    j["cost"] = to_json(model);
    if (mu) {
        j["mu_prime"] = *mu;
    }
    j["eigenvalue"] = sol.eigenvalue;
    j["residual"] = sol.residual;
    j["multiplicity"] = sol.multiplicity;
    j["constant_sign"] = sol.constant_sign;
    j["state"] = to_json(state);
    j["min_cost"] = min_cost(model, state);
    const bool variance = model.coeffs == variance_cost().coeffs;
    if (variance && !mu && spectrum.kind() != SpectrumKind::AllIntegers) {
        j["chebyshev"] = chebyshev_comparison(sol, spectrum.size());
    }
    emit_json(o, j);
    return kOk;
}

struct TwoModeArgs {
    Common common;
    std::string lambda;
    std::string x = "0.5:12";
    int n_max_cap = 400;
};

int cmd_two_mode(const TwoModeArgs &a, std::ostream &out, int threads) {
    const auto grid = checked("--lambda", [&] { return parse_grid(a.lambda); });
    for (double l : grid) {
        if (l < 0.0) {
            throw ParamError{"--lambda", "lambda < 0 is unsupported (Bessel order must be >= 0)"};
        }
    }
    const auto [x_lo, x_hi] = checked("--x", [&] { return parse_interval(a.x); });
    if (!(x_lo > 0.0) || x_hi > kBesselMaxArgument) {
        throw ParamError{"--x", "x range must lie in (0, 500]"};
    }
    if (a.n_max_cap < 1) {
        throw ParamError{"--nmax", "n_max cap must be >= 1"};
    }
    const auto scan = checked("--x", [&] { return optimize_two_mode(grid, x_lo, x_hi, a.n_max_cap, threads); });

    Output o(a.common, out);
    if (a.common.format == "csv") {
        write_frontier_csv(o.stream(), scan.frontier);
        return kOk;
    }
    Json j;
    j["command"] = "two-mode";
    j["x_range"] = {x_lo, x_hi};
    Json sols = Json::array();
    for (const auto &s : scan.solutions) {
        sols.push_back(to_json(s));
    }
    Json front = Json::array();
    for (const auto &s : scan.frontier) {
        front.push_back(to_json(s));
    }
    j["solutions"] = std::move(sols);
    j["frontier"] = std::move(front);
    emit_json(o, j);
    return kOk;
}

struct SimulateArgs {
    Common common;
    std::string state;
    std::string spectrum;
    std::string cost = "variance";
    double phi = 0.0;
    std::size_t n = 100000;
    std::optional<std::uint64_t> seed;
    int bins = 32;
    std::string samples_out;
};

int cmd_simulate(const SimulateArgs &a, std::ostream &out, std::ostream &err, int threads) {
    std::optional<Spectrum> spectrum;
    if (!a.spectrum.empty()) {
        spectrum = checked("--spectrum", [&] { return parse_spectrum(a.spectrum); });
    }
    const auto state = checked("--state", [&] { return parse_state_spec(a.state, spectrum); });
    const auto model = checked("--cost", [&] { return parse_cost_spec(a.cost, &state); });
    if (a.n < 1) {
        throw ParamError{"--n", "sample count must be >= 1"};
    }
    if (a.bins < 1) {
        throw ParamError{"--bins", "histogram needs at least one bin"};
    }
    std::uint64_t seed = 0;
    if (a.seed) {
        seed = *a.seed;
    } else {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        err << "seed: " << seed << '\n';
    }
    const auto run = sample_estimates(state, a.phi, a.n, seed, threads);
    const auto cost = empirical_cost(run, model);

    if (!a.samples_out.empty()) {
        std::ofstream f(a.samples_out, std::ios::binary);
        if (!f) {
            throw ParamError{"--samples-out", "cannot open '" + a.samples_out + "' for writing"};
        }
        write_samples_binary(f, run.samples);
    }

    Output o(a.common, out);
    if (a.common.format == "csv") {
        const auto counts = histogram(run, a.bins);
        o.stream() << "bin_start,count\n";
        for (int b = 0; b < a.bins; ++b) {
            o.stream() << format_double(2.0 * std::numbers::pi * b / a.bins) << ',' << counts[static_cast<std::size_t>(b)]
                       << '\n';
        }
        return kOk;
    }
    Json j = run_report(run, cost, a.bins);
    if (auto eps = factorize_signs(model, state.spectrum())) {
        j["analytic_min_cost"] = min_cost(model, state);
        j["deviation_in_std_errors"] =
            cost.std_error > 0.0 ? std::abs(cost.mean - min_cost(model, state)) / cost.std_error : 0.0;
    }
    emit_json(o, j);
    return kOk;
}

struct PartitionArgs {
    Common common;
    int modes = 0;
    int n_max = 0;
};

int cmd_partition(const PartitionArgs &a, std::ostream &out) {
    if (a.modes < 1) {
        throw ParamError{"--M", "mode count M must be >= 1"};
    }
    if (a.n_max < 0) {
        throw ParamError{"--nmax", "n_max must be >= 0"};
    }
    std::vector<std::uint64_t> table;
    for (int n = 0; n <= a.n_max; ++n) {
        table.push_back(partition_count(a.modes, n));
    }
    Output o(a.common, out);
    if (a.common.format == "csv") {
        o.stream() << "n,count\n";
        for (int n = 0; n <= a.n_max; ++n) {
            o.stream() << n << ',' << table[static_cast<std::size_t>(n)] << '\n';
        }
        return kOk;
    }
    emit_json(o, Json{{"command", "partition"}, {"M", a.modes}, {"nmax", a.n_max}, {"counts", table}});
    return kOk;
}

struct PomCheckArgs {
    Common common;
    std::string spectrum;
    int grid = 0;
    bool emit_pom = false;
    std::string state;
    double phi = 0.0;
    int points = 256;
};

int cmd_pom_check(const PomCheckArgs &a, std::ostream &out) {
    const auto spectrum = checked("--spectrum", [&] { return parse_spectrum(a.spectrum); });
    const int grid = a.grid > 0 ? a.grid : 4 * static_cast<int>(spectrum.size());
    const double continuous = checked("--grid", [&] { return pom_completeness_residual(spectrum, grid); });

    Output o(a.common, out);
    if (a.common.format == "csv") {
        if (a.state.empty()) {
            throw ParamError{"--state", "CSV output of pom-check is a density curve and needs --state"};
        }
        const auto state = checked("--state", [&] { return parse_state_spec(a.state, spectrum); });
        checked("--points", [&] {
            write_density_csv(o.stream(), state, a.phi, a.points);
            return 0;
        });
        return kOk;
    }
    Json j;
    j["command"] = "pom-check";
    j["spectrum"] = to_json(spectrum);
    j["grid"] = grid;
    j["continuous_residual"] = continuous;
    if (spectrum.kind() == SpectrumKind::ModQ) {
        const auto pom = discrete_pom_zq(spectrum.q());
        j["discrete_residual"] = pom.completeness_residual();
        if (a.emit_pom) {
            j["discrete_pom"] = to_json(pom);
        }
    }
    emit_json(o, j);
    return kOk;
}

struct CostEvalArgs {
    Common common;
    std::string cost;
    std::string phi;
    int points = 0;
    std::string spectrum;
    std::string state;
};

int cmd_cost_eval(const CostEvalArgs &a, std::ostream &out) {
    std::optional<Spectrum> spectrum;
    if (!a.spectrum.empty()) {
        spectrum = checked("--spectrum", [&] { return parse_spectrum(a.spectrum); });
    }
    std::optional<ReducedState> state;
    if (!a.state.empty()) {
        state = checked("--state", [&] { return parse_state_spec(a.state, spectrum); });
        spectrum = state->spectrum();
    }
    const auto model = checked("--cost", [&] { return parse_cost_spec(a.cost, state ? &*state : nullptr); });

    std::vector<double> phis;
    if (!a.phi.empty()) {
        phis = checked("--phi", [&] { return parse_grid(a.phi); });
    }
    if (a.points < 0) {
        throw ParamError{"--points", "points must be >= 0"};
    }
    for (int j = 0; j < a.points; ++j) {
        phis.push_back(2.0 * std::numbers::pi * j / a.points);
    }

    Output o(a.common, out);
    if (a.common.format == "csv") {
        if (spectrum) {
            const auto xi = checked("--cost", [&] { return optimal_xi(model, *spectrum); });
            write_matrix_csv(o.stream(), cost_operator_matrix(model, xi), *spectrum);
        } else {
            o.stream() << "phi,cost\n";
            for (double p : phis) {
                o.stream() << format_double(p) << ',' << format_double(evaluate_cost(model, p)) << '\n';
            }
        }
        return kOk;
    }
    Json j;
    j["command"] = "cost-eval";
    j["cost"] = to_json(model);
    Json values = Json::array();
    for (double p : phis) {
        values.push_back({{"phi", p}, {"cost", evaluate_cost(model, p)}});
    }
    j["values"] = std::move(values);
    if (spectrum) {
        j["spectrum"] = to_json(*spectrum);
        if (auto eps = factorize_signs(model, *spectrum)) {
            const auto xi = optimal_xi(model, *spectrum);
            const auto matrix = cost_operator_matrix(model, xi);
            Json rows = Json::array();
            for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
                std::vector<double> row;
                for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
                    row.push_back(matrix(r, c).real());
                }
                rows.push_back(row);
            }
            j["rephasing"] = *eps;
            j["matrix"] = std::move(rows);
        } else {
            j["factorizable"] = false;
        }
    }
    if (state) {
        j["state"] = to_json(*state);
        if (factorize_signs(model, state->spectrum())) {
            j["min_cost"] = min_cost(model, *state);
        }
    }
    emit_json(o, j);
    return kOk;
}

}  // namespace

CostModel parse_cost_spec(std::string_view text, const ReducedState *state) {
    auto parts = split(text, ':');
    const auto name = parts[0];
    if (name == "variance" && parts.size() == 1) {
        return variance_cost();
    }
    if (name == "likelihood" && parts.size() <= 2) {
        return likelihood_cost(parts.size() == 2 ? parse_int(parts[1], "likelihood order") : 64);
    }
    if (name == "fidelity" && parts.size() <= 2) {
        if (state == nullptr) {
            fail(ErrorKind::InvalidArgument, "fidelity cost needs a state");
        }
        const int order = parts.size() == 2 ? parse_int(parts[1], "fidelity order") : static_cast<int>(state->size());
        return fidelity_cost(*state, order);
    }
    if (name == "coeffs" && parts.size() == 2) {
        std::vector<double> c;
        for (auto v : split(parts[1], ',')) {
            c.push_back(parse_double(v, "cost coefficient"));
        }
        return CostModel::from_coeffs(std::move(c));
    }
    fail(ErrorKind::InvalidArgument, "cost must be variance, likelihood:L, fidelity[:L] or coeffs:c0,c1,..., got '" +
                                         std::string(text) + "'");
}

ReducedState parse_state_spec(std::string_view text, const std::optional<Spectrum> &spectrum) {
    if (text == "uniform2") {
        const double w = std::sqrt(0.5);
        return ReducedState(spectrum.value_or(Spectrum::naturals(0, 1)), {w, w});
    }
    if (text.starts_with("point:")) {
        const int k = parse_int(text.substr(6), "point index");
        const auto s = spectrum.value_or(Spectrum::naturals(0, std::max(k, 1)));
        std::vector<double> w(s.size(), 0.0);
        w[s.index_of(k)] = 1.0;
        return ReducedState(s, std::move(w));
    }
    if (text.starts_with("weights:")) {
        std::vector<double> w;
        for (auto v : split(text.substr(8), ',')) {
            w.push_back(parse_double(v, "weight"));
        }
        if (w.size() < 2) {
            fail(ErrorKind::InvalidArgument, "a state needs window size >= 2");
        }
        const auto s = spectrum.value_or(Spectrum::naturals(0, static_cast<int>(w.size()) - 1));
        return ReducedState(s, std::move(w));
    }
    if (text.starts_with("file:")) {
        const std::string path(text.substr(5));
        std::ifstream in(path);
        if (!in) {
            fail(ErrorKind::InvalidArgument, "cannot open state file '" + path + "'");
        }
        try {
            return reduced_state_from_json(Json::parse(in));
        } catch (const nlohmann::json::exception &e) {
            fail(ErrorKind::InvalidArgument, "malformed state file '" + path + "': " + e.what());
        }
    }
    fail(ErrorKind::InvalidArgument, "state must be uniform2, point:K, weights:w0,w1,... or file:PATH, got '" +
                                         std::string(text) + "'");
}

std::vector<double> parse_grid(std::string_view text) {
    if (text.find(':') != std::string_view::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3) {
            fail(ErrorKind::InvalidArgument, "range grid must be start:stop:step");
        }
        const double start = parse_double(parts[0], "grid start");
        const double stop = parse_double(parts[1], "grid stop");
        const double step = parse_double(parts[2], "grid step");
        if (!(step > 0.0) || stop < start) {
            fail(ErrorKind::InvalidArgument, "range grid needs step > 0 and stop >= start");
        }
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 100000) {
            fail(ErrorKind::InvalidArgument, "range grid has too many points");
        }
        std::vector<double> out;
        for (long i = 0; i < count; ++i) {
            out.push_back(start + static_cast<double>(i) * step);
        }
        return out;
    }
    std::vector<double> out;
    for (auto v : split(text, ',')) {
        out.push_back(parse_double(v, "grid value"));
    }
    return out;
}

std::pair<double, double> parse_interval(std::string_view text) {
    auto parts = split(text, ':');
    if (parts.size() != 2) {
        fail(ErrorKind::InvalidArgument, "interval must be lo:hi");
    }
    const double lo = parse_double(parts[0], "interval lo");
    const double hi = parse_double(parts[1], "interval hi");
    if (!(hi > lo)) {
        fail(ErrorKind::InvalidArgument, "interval needs hi > lo");
    }
    return {lo, hi};
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Optimal covariant phase measurements and input states for integer-spectrum shift generators"};
    app.name("phasekit");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    OptimalStateArgs os;
    auto *c_os = app.add_subcommand("optimal-state", "Minimal-cost input state for a spectrum window and cost");
    add_common(c_os, os.common);
    c_os->add_option("--spectrum", os.spectrum, "zq:Q | naturals:LO:HI | integers:LO:HI")->required();
    c_os->add_option("--cost", os.cost, "variance | likelihood:L | coeffs:c0,c1,...")->required();
    c_os->add_option("--mu-prime", os.mu_prime, "Energy Lagrange multiplier mu' (dimensionless, energy |n|); 0 disables")
        ->capture_default_str();

    TwoModeArgs tm;
    auto *c_tm = app.add_subcommand("two-mode", "Bessel-state frontier of (mean photon number, cost) for a - b");
    add_common(c_tm, tm.common);
    c_tm->add_option("--lambda", tm.lambda, "Bessel order grid: a | a,b,c | start:stop:step (>= 0)")->required();
    c_tm->add_option("--x", tm.x, "Argument range lo:hi for x = 2/mu")->capture_default_str();
    c_tm->add_option("--nmax", tm.n_max_cap, "Cap on the adaptive truncation |n| <= nmax")->capture_default_str();

    SimulateArgs sim;
    std::uint64_t seed_value = 0;
    auto *c_sim = app.add_subcommand("simulate", "Monte-Carlo draws of the optimal phase measurement");
    add_common(c_sim, sim.common);
    c_sim->add_option("--state", sim.state, "uniform2 | point:K | weights:w0,w1,... | file:PATH")->required();
    c_sim->add_option("--spectrum", sim.spectrum, "Window for point:/weights: states (default naturals from 0)");
    c_sim->add_option("--cost", sim.cost, "variance | likelihood:L | fidelity[:L] | coeffs:...")->capture_default_str();
    c_sim->add_option("--phi", sim.phi, "True phase shift (radians)")->capture_default_str();
    c_sim->add_option("--n", sim.n, "Number of estimates to draw")->capture_default_str();
    auto *seed_opt = c_sim->add_option("--seed", seed_value, "64-bit seed (random and echoed to stderr if omitted)");
    c_sim->add_option("--bins", sim.bins, "Histogram bins over [0, 2pi)")->capture_default_str();
    c_sim->add_option("--samples-out", sim.samples_out, "Write raw estimates as little-endian float64");

    PartitionArgs part;
    auto *c_part = app.add_subcommand("partition", "Degeneracy N_n of the multipath generator for n = 0..nmax");
    add_common(c_part, part.common);
    c_part->add_option("--M", part.modes, "Mode count (>= 1)")->required();
    c_part->add_option("--nmax", part.n_max, "Largest eigenvalue to tabulate")->required();

    PomCheckArgs pc;
    auto *c_pc = app.add_subcommand("pom-check", "Completeness residuals of the continuous and discrete POMs");
    add_common(c_pc, pc.common);
    c_pc->add_option("--spectrum", pc.spectrum, "zq:Q | naturals:LO:HI | integers:LO:HI")->required();
    c_pc->add_option("--grid", pc.grid, "Quadrature points (default 4 x window size)");
    c_pc->add_flag("--emit-pom", pc.emit_pom, "Include the zq projector vectors in the JSON report");
    c_pc->add_option("--state", pc.state, "State for the density curve written by --format csv");
    c_pc->add_option("--phi", pc.phi, "True phase for the density curve (radians)")->capture_default_str();
    c_pc->add_option("--points", pc.points, "Points on the density curve")->capture_default_str();

    CostEvalArgs ce;
    auto *c_ce = app.add_subcommand("cost-eval", "Evaluate a cost function, its cost matrix and minimum cost");
    add_common(c_ce, ce.common);
    c_ce->add_option("--cost", ce.cost, "variance | likelihood:L | fidelity[:L] | coeffs:c0,c1,...")->required();
    c_ce->add_option("--phi", ce.phi, "Phases (radians): a | a,b,c | start:stop:step");
    c_ce->add_option("--points", ce.points, "Additional uniform phase grid over [0, 2pi)");
    c_ce->add_option("--spectrum", ce.spectrum, "Window for the cost matrix");
    c_ce->add_option("--state", ce.state, "State for min_cost (and fidelity coefficients)");

    std::vector<std::string> argv = args;
    try {
        // Splice --config values in front of the explicit flags.
        if (!argv.empty()) {
            CLI::App *cmd = nullptr;
            for (auto *sub : app.get_subcommands({})) {
                if (sub->get_name() == argv[0]) {
                    cmd = sub;
                }
            }
            for (std::size_t i = 1; cmd != nullptr && i < argv.size(); ++i) {
                std::string path;
                if (argv[i] == "--config" && i + 1 < argv.size()) {
                    path = argv[i + 1];
                } else if (argv[i].rfind("--config=", 0) == 0) {
                    path = argv[i].substr(9);
                }
                if (!path.empty()) {
                    auto extra = expand_config(cmd, path);
                    argv.insert(argv.begin() + 1, extra.begin(), extra.end());
                    break;
                }
            }
        }
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        std::ostringstream help_out;
        std::ostringstream err_out;
        app.exit(e, help_out, err_out);
        if (e.get_exit_code() == 0) {
            out << help_out.str();
            return kOk;
        }
        err << err_out.str();
        return kValidation;
    } catch (const ParamError &e) {
        err << "error: " << e.param << ": " << e.message << '\n';
        return kValidation;
    }

    try {
        if (*c_sim && seed_opt->count() > 0) {
            sim.seed = seed_value;
        }
        auto thread_count = [&](const Common &c) { return c.threads > 0 ? c.threads : default_threads(); };
        if (*c_os) {
            return cmd_optimal_state(os, out);
        }
        if (*c_tm) {
            return cmd_two_mode(tm, out, thread_count(tm.common));
        }
        if (*c_sim) {
            return cmd_simulate(sim, out, err, thread_count(sim.common));
        }
        if (*c_part) {
            return cmd_partition(part, out);
        }
        if (*c_pc) {
            return cmd_pom_check(pc, out);
        }
        if (*c_ce) {
            return cmd_cost_eval(ce, out);
        }
    } catch (const ParamError &e) {
        err << "error: " << e.param << ": " << e.message << '\n';
        return kValidation;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::NoRootsInRange:
                return kEmptyResult;
            case ErrorKind::SolverFailure:
            case ErrorKind::NonHermitianInput:
            case ErrorKind::TailNotConverged:
                return kSolver;
            default:
                return kValidation;
        }
    }
    return kValidation;
}

}  // namespace phasekit::cli

#include "phasekit/serialize.h"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <set>

#include "phasekit/error.h"

namespace phasekit {

namespace {

void require_keys(const Json &j, std::initializer_list<const char *> allowed, const char *what) {
    if (!j.is_object()) {
        fail(ErrorKind::InvalidArgument, std::string(what) + " must be a JSON object");
    }
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &[key, value] : j.items()) {
        if (!ok.contains(key)) {
            fail(ErrorKind::InvalidArgument, std::string(what) + ": unknown key '" + key + "'");
        }
    }
}

template <typename T>
T get_as(const Json &j, const char *key, const char *what) {
    if (!j.contains(key)) {
        fail(ErrorKind::InvalidArgument, std::string(what) + ": missing key '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::InvalidArgument, std::string(what) + ": bad value for '" + key + "': " + e.what());
    }
}

Json number_or_null(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

}  // namespace

Json to_json(const Spectrum &spectrum) {
    Json j;
    j["kind"] = kind_name(spectrum.kind());
    if (spectrum.kind() == SpectrumKind::ModQ) {
        j["q"] = spectrum.q();
    }
    j["window"] = {spectrum.lo(), spectrum.hi()};
    return j;
}

Json to_json(const ReducedState &state) {
    Json j;
    j["spectrum"] = to_json(state.spectrum());
    j["weights"] = std::vector<double>(state.weights().begin(), state.weights().end());
    j["null_indices"] = state.null_indices();
    return j;
}

Json to_json(const OccupationMap &map) {
    Json arr = Json::array();
    for (const auto &[occ, amp] : map) {
        arr.push_back({{"occ", occ}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    return arr;
}

Json to_json(const CostModel &model) {
    return {{"coeffs", model.coeffs}, {"holevo", model.holevo}};
}

Json to_json(const TwoModeSolution &s) {
    Json j;
    j["lambda"] = s.lambda;
    j["mu"] = number_or_null(s.mu);
    j["x"] = s.x;
    j["k"] = s.k;
    j["N"] = number_or_null(s.mean_photons);
    j["cost"] = number_or_null(s.cost);
    j["h"] = s.h;
    j["n_max"] = s.n_max;
    return j;
}

Json to_json(const DiscretePom &pom) {
    Json arr = Json::array();
    for (std::size_t s = 0; s < pom.vectors.size(); ++s) {
        Json vec = Json::array();
        for (Eigen::Index i = 0; i < pom.vectors[s].size(); ++i) {
            vec.push_back({{"re", pom.vectors[s](i).real()}, {"im", pom.vectors[s](i).imag()}});
        }
        arr.push_back({{"phi", pom.phases[s]}, {"vector", vec}});
    }
    return arr;
}

Json run_report(const SimulationRun &run, const CostEstimate &cost, int bins) {
    Json j;
    j["phi_true"] = run.phi_true;
    j["n"] = run.n_samples;
    j["seed"] = run.seed;
    j["mean_cost"] = cost.mean;
    j["std_error"] = cost.std_error;
    j["histogram"] = {{"bins", bins}, {"counts", histogram(run, bins)}};
    return j;
}

Spectrum spectrum_from_json(const Json &j) {
    require_keys(j, {"kind", "q", "window"}, "spectrum");
    const auto kind = get_as<std::string>(j, "kind", "spectrum");
    if (kind == "zq") {
        const int q = get_as<int>(j, "q", "spectrum");
        auto s = Spectrum::mod_q(q);
        if (j.contains("window")) {
            const auto w = get_as<std::vector<int>>(j, "window", "spectrum");
            if (w.size() != 2 || w[0] != 0 || w[1] != q - 1) {
                fail(ErrorKind::InvalidArgument, "zq window must be [0, q-1]");
            }
        }
        return s;
    }
    const auto w = get_as<std::vector<int>>(j, "window", "spectrum");
    if (w.size() != 2) {
        fail(ErrorKind::InvalidArgument, "spectrum window must be [lo, hi]");
    }
    if (j.contains("q")) {
        fail(ErrorKind::InvalidArgument, "spectrum: 'q' only applies to zq");
    }
    if (kind == "naturals") {
        return Spectrum::naturals(w[0], w[1]);
    }
    if (kind == "integers") {
        return Spectrum::integers(w[0], w[1]);
    }
    fail(ErrorKind::InvalidArgument, "spectrum kind must be zq, naturals or integers");
}

ReducedState reduced_state_from_json(const Json &j) {
    require_keys(j, {"spectrum", "weights", "null_indices"}, "state");
    if (!j.contains("spectrum")) {
        fail(ErrorKind::InvalidArgument, "state: missing key 'spectrum'");
    }
    auto spectrum = spectrum_from_json(j.at("spectrum"));
    auto weights = get_as<std::vector<double>>(j, "weights", "state");
    ReducedState state(spectrum, std::move(weights));
    if (j.contains("null_indices") && get_as<std::vector<int>>(j, "null_indices", "state") != state.null_indices()) {
        fail(ErrorKind::InvalidArgument, "state: null_indices disagree with the weights");
    }
    return state;
}

CostModel cost_model_from_json(const Json &j) {
    require_keys(j, {"coeffs", "holevo"}, "cost model");
    auto model = CostModel::from_coeffs(get_as<std::vector<double>>(j, "coeffs", "cost model"));
    if (j.contains("holevo") && get_as<bool>(j, "holevo", "cost model") != model.holevo) {
        fail(ErrorKind::InvalidArgument, "cost model: holevo flag disagrees with the coefficients");
    }
    return model;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_matrix_csv(std::ostream &out, const HermitianMatrix &matrix, const Spectrum &spectrum) {
    out << "n\\m";
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        out << ',' << spectrum.eigenvalue(i);
    }
    out << '\n';
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        out << spectrum.eigenvalue(static_cast<std::size_t>(r));
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            out << ',' << format_double(matrix(r, c).real());
        }
        out << '\n';
    }
}

void write_frontier_csv(std::ostream &out, std::span<const TwoModeSolution> frontier) {
    out << "N,cost,lambda,mu\n";
    for (const auto &s : frontier) {
        out << format_double(s.mean_photons) << ',' << format_double(s.cost) << ',' << format_double(s.lambda) << ','
            << (std::isfinite(s.mu) ? format_double(s.mu) : std::string("inf")) << '\n';
    }
}

void write_density_csv(std::ostream &out, const ReducedState &state, double phi_true, int points) {
    if (points < 2) {
        fail(ErrorKind::InvalidArgument, "density curve needs at least 2 points");
    }
    out << "phi_est,density\n";
    for (int j = 0; j < points; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / points;
        out << format_double(phi) << ',' << format_double(conditional_density(state, phi, phi_true)) << '\n';
    }
}

void write_samples_binary(std::ostream &out, std::span<const double> samples) {
    for (double v : samples) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        char bytes[8];
        for (int b = 0; b < 8; ++b) {
            bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
        }
        out.write(bytes, 8);
    }
}

}  // namespace phasekit

#include "phasekit/spectrum.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "phasekit/error.h"

namespace phasekit {

namespace {

int parse_int(std::string_view text, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        fail(ErrorKind::InvalidArgument, "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    }
    return value;
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

void enumerate_nu(int modes, int mode, int remaining, std::vector<int> &nu, int n, std::vector<MultipathIndex> &out) {
    if (mode > modes) {
        out.push_back({n, nu});
        return;
    }
    for (int k = 0; k <= remaining / mode; ++k) {
        nu.push_back(k);
        enumerate_nu(modes, mode + 1, remaining - mode * k, nu, n, out);
        nu.pop_back();
    }
}

}  // namespace

Spectrum::Spectrum(SpectrumKind kind, int q, int lo, int hi) : kind_(kind), q_(q), lo_(lo), hi_(hi) {
    if (lo > hi) {
        fail(ErrorKind::InvalidArgument, "spectrum window requires lo <= hi");
    }
    if (hi - lo + 1 < 2) {
        fail(ErrorKind::InvalidArgument, "spectrum window size >= 2 required");
    }
}

Spectrum Spectrum::integers(int lo, int hi) {
    return Spectrum(SpectrumKind::AllIntegers, 0, lo, hi);
}

Spectrum Spectrum::naturals(int lo, int hi) {
    if (lo < 0) {
        fail(ErrorKind::InvalidArgument, "naturals window requires lo >= 0");
    }
    return Spectrum(SpectrumKind::Naturals, 0, lo, hi);
}

Spectrum Spectrum::mod_q(int q) {
    if (q < 2) {
        fail(ErrorKind::InvalidArgument, "zq spectrum needs window size >= 2 (q >= 2)");
    }
    return Spectrum(SpectrumKind::ModQ, q, 0, q - 1);
}

std::size_t Spectrum::index_of(int n) const {
    if (!contains(n)) {
        fail(ErrorKind::InvalidArgument, "eigenvalue " + std::to_string(n) + " outside window " + to_string(*this));
    }
    return static_cast<std::size_t>(n - lo_);
}

std::string_view kind_name(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::AllIntegers:
            return "integers";
        case SpectrumKind::Naturals:
            return "naturals";
        case SpectrumKind::ModQ:
            return "zq";
    }
    return "unknown";
}

Spectrum parse_spectrum(std::string_view text) {
    auto parts = split(text, ':');
    auto kind = parts[0];
    if (kind == "zq" && parts.size() == 2) {
        return Spectrum::mod_q(parse_int(parts[1], "zq dimension"));
    }
    if ((kind == "naturals" || kind == "integers") && parts.size() == 3) {
        int lo = parse_int(parts[1], "window lo");
        int hi = parse_int(parts[2], "window hi");
        return kind == "naturals" ? Spectrum::naturals(lo, hi) : Spectrum::integers(lo, hi);
    }
    fail(ErrorKind::InvalidArgument, "spectrum must be zq:Q, naturals:LO:HI or integers:LO:HI, got '" + std::string(text) + "'");
}

std::string to_string(const Spectrum &spectrum) {
    if (spectrum.kind() == SpectrumKind::ModQ) {
        return "zq:" + std::to_string(spectrum.q());
    }
    return std::string(kind_name(spectrum.kind())) + ":" + std::to_string(spectrum.lo()) + ":" +
           std::to_string(spectrum.hi());
}

int MultipathIndex::nu1() const {
    int used = 0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        used += static_cast<int>(i + 2) * nu[i];
    }
    return n - used;
}

Occupation MultipathIndex::occupations() const {
    Occupation occ;
    occ.reserve(nu.size() + 1);
    occ.push_back(nu1());
    occ.insert(occ.end(), nu.begin(), nu.end());
    return occ;
}

std::vector<MultipathIndex> multipath_degeneracy_set(int modes, int n) {
    if (modes < 1 || n < 0) {
        fail(ErrorKind::InvalidArgument, "multipath degeneracy set needs M >= 1 and n >= 0");
    }
    std::vector<MultipathIndex> out;
    std::vector<int> nu;
    nu.reserve(static_cast<std::size_t>(modes));
    enumerate_nu(modes, 2, n, nu, n, out);
    return out;
}

std::uint64_t partition_count(int modes, int n) {
    if (modes < 1 || n < 0) {
        fail(ErrorKind::InvalidArgument, "partition count needs M >= 1 and n >= 0");
    }
    // ways[k] = partitions of k into parts drawn from {1, ..., part}.
    std::vector<std::uint64_t> ways(static_cast<std::size_t>(n) + 1, 0);
    ways[0] = 1;
    for (int part = 1; part <= std::min(modes, std::max(n, 1)); ++part) {
        for (int k = part; k <= n; ++k) {
            ways[static_cast<std::size_t>(k)] += ways[static_cast<std::size_t>(k - part)];
        }
    }
    return ways[static_cast<std::size_t>(n)];
}

OccupationMap symmetrized_vector(int modes, int n, int fock_cutoff) {
    auto set = multipath_degeneracy_set(modes, n);
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(set.size()));
    OccupationMap out;
    for (const auto &index : set) {
        auto occ = index.occupations();
        if (*std::max_element(occ.begin(), occ.end()) > fock_cutoff) {
            fail(ErrorKind::CutoffTooSmall, "eigenvalue " + std::to_string(n) + " needs a Fock cutoff above " +
                                                std::to_string(fock_cutoff));
        }
        out.emplace(std::move(occ), Complex(amplitude, 0.0));
    }
    return out;
}

std::pair<int, int> two_mode_lambda_basis(int n) {
    return n >= 0 ? std::pair{n, 0} : std::pair{0, -n};
}

ReducedState::ReducedState(Spectrum spectrum, std::vector<double> weights, std::vector<Complex> phases)
    : spectrum_(spectrum), weights_(std::move(weights)), phases_(std::move(phases)) {
    if (weights_.size() != spectrum_.size()) {
        fail(ErrorKind::DimensionMismatch, "weights length " + std::to_string(weights_.size()) +
                                               " does not match window size " + std::to_string(spectrum_.size()));
    }
    if (phases_.empty()) {
        phases_.assign(weights_.size(), Complex(1.0, 0.0));
    } else if (phases_.size() != weights_.size()) {
        fail(ErrorKind::DimensionMismatch, "phases length does not match window size");
    }
    double norm2 = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            fail(ErrorKind::InvalidArgument, "weights must be finite and nonnegative");
        }
        norm2 += w * w;
    }
    if (norm2 == 0.0) {
        fail(ErrorKind::EmptyState, "all weights vanish");
    }
    if (std::abs(norm2 - 1.0) > kNormalizationTolerance) {
        fail(ErrorKind::NotNormalized, "sum of squared weights is " + std::to_string(norm2));
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (double &w : weights_) {
        w *= scale;
    }
    for (auto &p : phases_) {
        if (std::abs(std::abs(p) - 1.0) > 1e-12) {
            fail(ErrorKind::InvalidArgument, "phases must have unit modulus");
        }
    }
}

ReducedState ReducedState::normalized(Spectrum spectrum, std::vector<double> weights) {
    double norm2 = 0.0;
    for (double w : weights) {
        norm2 += w * w;
    }
    if (norm2 == 0.0) {
        fail(ErrorKind::EmptyState, "all weights vanish");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (double &w : weights) {
        w *= scale;
    }
    return ReducedState(spectrum, std::move(weights));
}

ReducedState ReducedState::from_amplitudes(Spectrum spectrum, std::span<const Complex> amplitudes) {
    std::vector<double> weights;
    std::vector<Complex> phases;
    weights.reserve(amplitudes.size());
    phases.reserve(amplitudes.size());
    double norm2 = 0.0;
    for (const auto &a : amplitudes) {
        double w = std::abs(a);
        weights.push_back(w);
        phases.push_back(w > 0.0 ? a / w : Complex(1.0, 0.0));
        norm2 += w * w;
    }
    if (norm2 == 0.0) {
        fail(ErrorKind::EmptyState, "all amplitudes vanish");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (double &w : weights) {
        w *= scale;
    }
    return ReducedState(spectrum, std::move(weights), std::move(phases));
}

double ReducedState::weight_at(int n) const {
    return spectrum_.contains(n) ? weights_[spectrum_.index_of(n)] : 0.0;
}

std::vector<int> ReducedState::null_indices() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] == 0.0) {
            out.push_back(spectrum_.eigenvalue(i));
        }
    }
    return out;
}

std::vector<Complex> ReducedState::amplitudes() const {
    std::vector<Complex> out(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        out[i] = weights_[i] * phases_[i];
    }
    return out;
}

Generator Generator::multipath(int modes) {
    if (modes < 1) {
        fail(ErrorKind::InvalidArgument, "multipath generator needs M >= 1");
    }
    return {Kind::Multipath, modes};
}

Generator Generator::two_mode_difference() {
    return {Kind::TwoModeDifference, 2};
}

int Generator::eigenvalue(const Occupation &occupation) const {
    if (static_cast<int>(occupation.size()) != modes) {
        fail(ErrorKind::DimensionMismatch, "occupation tuple has " + std::to_string(occupation.size()) +
                                               " modes, generator expects " + std::to_string(modes));
    }
    for (int o : occupation) {
        if (o < 0) {
            fail(ErrorKind::InvalidArgument, "occupation numbers must be nonnegative");
        }
    }
    if (kind == Kind::TwoModeDifference) {
        return occupation[0] - occupation[1];
    }
    int n = 0;
    for (std::size_t l = 0; l < occupation.size(); ++l) {
        n += static_cast<int>(l + 1) * occupation[l];
    }
    return n;
}

Projection project_to_reduced(
    const OccupationMap &full_state, const Generator &generator, std::optional<Spectrum> window, int fock_cutoff) {
    double norm2 = 0.0;
    std::map<int, OccupationMap> blocks;
    for (const auto &[occ, amp] : full_state) {
        int n = generator.eigenvalue(occ);
        if (fock_cutoff >= 0 && *std::max_element(occ.begin(), occ.end()) > fock_cutoff) {
            fail(ErrorKind::CutoffTooSmall, "occupation exceeds the declared Fock cutoff");
        }
        norm2 += std::norm(amp);
        if (amp != Complex(0.0, 0.0)) {
            blocks[n].emplace(occ, amp);
        }
    }
    if (norm2 == 0.0 || blocks.empty()) {
        fail(ErrorKind::EmptyState, "state has no nonzero amplitude");
    }
    if (std::abs(norm2 - 1.0) > kNormalizationTolerance) {
        fail(ErrorKind::NotNormalized, "squared norm of the input state is " + std::to_string(norm2));
    }

    if (!window) {
        int lo = blocks.begin()->first;
        int hi = blocks.rbegin()->first;
        if (generator.kind == Generator::Kind::Multipath) {
            window = Spectrum::naturals(0, std::max(hi, 1));
        } else {
            lo = std::min(lo, 0);
            hi = std::max(hi, 0);
            window = Spectrum::integers(lo, hi == lo ? lo + 1 : hi);
        }
    }

    std::vector<double> weights(window->size(), 0.0);
    std::vector<Complex> phases(window->size(), Complex(1.0, 0.0));
    std::map<int, OccupationMap> basis;
    for (auto &[n, block] : blocks) {
        const std::size_t i = window->index_of(n);
        double block_norm2 = 0.0;
        for (const auto &[occ, amp] : block) {
            block_norm2 += std::norm(amp);
        }
        const double w = std::sqrt(block_norm2);
        weights[i] = w;
        const Complex first = block.begin()->second;
        phases[i] = first / std::abs(first);
        OccupationMap vec;
        for (const auto &[occ, amp] : block) {
            vec.emplace(occ, amp / w);
        }
        basis.emplace(n, std::move(vec));
    }

    for (std::size_t i = 0; i < window->size(); ++i) {
        const int n = window->eigenvalue(i);
        if (basis.contains(n)) {
            continue;
        }
        if (generator.kind == Generator::Kind::Multipath) {
            basis.emplace(n, symmetrized_vector(generator.modes, n, std::max(n, 0)));
        } else {
            auto [a, b] = two_mode_lambda_basis(n);
            basis.emplace(n, OccupationMap{{Occupation{a, b}, Complex(1.0, 0.0)}});
        }
    }

    const double scale = 1.0 / std::sqrt(norm2);
    for (double &w : weights) {
        w *= scale;
    }
    return {ReducedState(*window, std::move(weights), std::move(phases)), std::move(basis)};
}

}  // namespace phasekit

#ifndef PHASEKIT_SPECTRUM_H
#define PHASEKIT_SPECTRUM_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phasekit {

using Complex = std::complex<double>;

/// Input states must have unit norm to within this tolerance; they are then
/// renormalized exactly.
inline constexpr double kNormalizationTolerance = 1e-10;

enum class SpectrumKind { AllIntegers, Naturals, ModQ };

/// Integer eigenvalue set of the shift generator together with the finite
/// window [lo, hi] every downstream computation is truncated to.
class Spectrum {
   public:
    static Spectrum integers(int lo, int hi);
    static Spectrum naturals(int lo, int hi);
    static Spectrum mod_q(int q);

    SpectrumKind kind() const noexcept {
        return kind_;
    }
    /// Dimension q for ModQ, 0 otherwise.
    int q() const noexcept {
        return q_;
    }
    int lo() const noexcept {
        return lo_;
    }
    int hi() const noexcept {
        return hi_;
    }
    std::size_t size() const noexcept {
        return static_cast<std::size_t>(hi_ - lo_ + 1);
    }
    int eigenvalue(std::size_t index) const noexcept {
        return lo_ + static_cast<int>(index);
    }
    bool contains(int n) const noexcept {
        return n >= lo_ && n <= hi_;
    }
    std::size_t index_of(int n) const;

    bool operator==(const Spectrum &) const = default;

   private:
    Spectrum(SpectrumKind kind, int q, int lo, int hi);

    SpectrumKind kind_;
    int q_;
    int lo_;
    int hi_;
};

/// Parses "zq:Q", "naturals:LO:HI" or "integers:LO:HI".
Spectrum parse_spectrum(std::string_view text);
std::string to_string(const Spectrum &spectrum);
std::string_view kind_name(SpectrumKind kind);

/// Occupation numbers of a multimode Fock state, mode 1 first.
using Occupation = std::vector<int>;
/// Sparse multimode state: occupation tuple -> amplitude, in canonical order.
using OccupationMap = std::map<Occupation, Complex>;

/// Eigenvector label for the multipath generator sum_l l a_l^dag a_l.
struct MultipathIndex {
    int n = 0;
    /// (nu_2, ..., nu_M); empty when M == 1.
    std::vector<int> nu;

    int nu1() const;
    /// Full occupation tuple (nu_1, nu_2, ..., nu_M).
    Occupation occupations() const;

    bool operator==(const MultipathIndex &) const = default;
};

/// Eigenvector label for the photon-number difference a^dag a - b^dag b.
struct TwoModeIndex {
    int d = 0;
    int nu = 0;

    std::pair<int, int> occupations() const {
        return {d + nu, nu};
    }
};

/// Every nu in E_n for M modes, in lexicographic (nu_2, nu_3, ...) order.
std::vector<MultipathIndex> multipath_degeneracy_set(int modes, int n);

/// Number of partitions of n into parts of size at most `modes`.
std::uint64_t partition_count(int modes, int n);

/// The equal-weight superposition of all eigenvectors of the multipath
/// generator with eigenvalue n.
OccupationMap symmetrized_vector(int modes, int n, int fock_cutoff);

/// |lambda_n>: (n, 0) for n >= 0 and (0, |n|) for n <= 0.
std::pair<int, int> two_mode_lambda_basis(int n);

/// Real nonnegative weights over a spectrum window together with the unit
/// phases that were stripped to make them so.
class ReducedState {
   public:
    /// Weights must be nonnegative and normalized within
    /// kNormalizationTolerance. Empty `phases` means all ones.
    ReducedState(Spectrum spectrum, std::vector<double> weights, std::vector<Complex> phases = {});

    /// Normalizes arbitrary nonnegative weights.
    static ReducedState normalized(Spectrum spectrum, std::vector<double> weights);
    /// Splits complex amplitudes into modulus and phase, then normalizes.
    static ReducedState from_amplitudes(Spectrum spectrum, std::span<const Complex> amplitudes);

    const Spectrum &spectrum() const noexcept {
        return spectrum_;
    }
    std::span<const double> weights() const noexcept {
        return weights_;
    }
    std::span<const Complex> phases() const noexcept {
        return phases_;
    }
    std::size_t size() const noexcept {
        return weights_.size();
    }
    /// w_n for eigenvalue n, zero outside the window.
    double weight_at(int n) const;
    /// Eigenvalues inside the window whose weight is exactly zero.
    std::vector<int> null_indices() const;
    /// weight * phase per window entry.
    std::vector<Complex> amplitudes() const;

   private:
    Spectrum spectrum_;
    std::vector<double> weights_;
    std::vector<Complex> phases_;
};

struct Generator {
    enum class Kind { Multipath, TwoModeDifference };

    Kind kind = Kind::Multipath;
    int modes = 1;

    static Generator multipath(int modes);
    static Generator two_mode_difference();

    int eigenvalue(const Occupation &occupation) const;
};

struct Projection {
    ReducedState state;
    /// Normalized representative basis vector per window eigenvalue. Null
    /// eigenvalues get the symmetrized vector (multipath) or |lambda_n>.
    std::map<int, OccupationMap> basis;
};

/// Projects a full multimode state onto the eigenspaces of the generator.
/// Without an explicit window, naturals use [0, max n] and integers use
/// [min(n, 0), max(n, 0)], widened to two points if needed.
Projection project_to_reduced(
    const OccupationMap &full_state,
    const Generator &generator,
    std::optional<Spectrum> window = std::nullopt,
    int fock_cutoff = -1);

}  // namespace phasekit

#endif

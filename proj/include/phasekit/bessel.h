#ifndef PHASEKIT_BESSEL_H
#define PHASEKIT_BESSEL_H

#include <vector>

namespace phasekit {

/// Largest order and argument the Bessel routines accept.
inline constexpr double kBesselMaxOrder = 500.0;
inline constexpr double kBesselMaxArgument = 500.0;

/// J_order(x) for real order >= 0 and x >= 0. Small arguments use the
/// ascending series; otherwise a Miller backward recurrence normalized by
/// the Neumann sum (x/2)^a / Gamma(a+1) = sum_k (a+2k) Gamma(a+k)/(Gamma(a+1) k!) J_{a+2k}(x).
double bessel_j(double order, double x);

/// Ascending power series on its own, no regime switch.
double bessel_j_series(double order, double x);

/// J_{order + k}(x) for k = 0 .. count-1 from a single backward sweep.
std::vector<double> bessel_j_sequence(double order, int count, double x);

/// True where bessel_j evaluates the ascending series directly.
bool bessel_series_regime(double order, double x);

}  // namespace phasekit

#endif

#pragma once

// Closed-form scattering by a square well without dissipation.
//
// Regions: incident x < 0 (e^{ikx} + A e^{-ikx}), well 0 < x < L
// (C e^{iqx} + D e^{-iqx}), transmitted x > L (B e^{ikx}). The incident wave
// has unit amplitude and zero phase at x = 0. "sen" in older texts is sine.

#include <complex>
#include <utility>
#include <vector>

#include "ramsauer/core.hpp"

namespace ramsauer {

using Complex = std::complex<double>;

struct AnalyticCoefficients {
  Complex refl_amp;   // A
  Complex trans_amp;  // B
  double refl_prob = 0.0;
  double trans_prob = 0.0;
  std::pair<Complex, Complex> interior_amps;  // C, D
};

/// Field and its derivative at a point.
struct FieldSample {
  Complex value;
  Complex derivative;
};

/// |T|^2 = 1 / (1 + ((k^2 - q^2) / 2kq)^2 sin^2(qL)). Accepts q == k (zero depth).
double transmission_probability(const WaveNumbers& wn, double width);

/// |R|^2 from its own closed form, not as 1 - |T|^2.
double reflection_probability(const WaveNumbers& wn, double width);

/// Amplitudes from continuity of psi and psi' at x = 0 and x = L.
AnalyticCoefficients scattering_amplitudes(const WaveNumbers& wn, double width);

/// psi(x), psi'(x) of the stationary solution at any x (all three regions).
FieldSample field_at(const AnalyticCoefficients& amps, const WaveNumbers& wn, double width,
                     double x);

struct Resonance {
  int order = 0;  // j in qL = j*pi
  double energy = 0.0;
};

/// Every E_j = (j pi hbar / L)^2 / 2m - V with E_j > 0, j = 1..max_order, ascending.
/// |T|^2 = 1 at each of them.
std::vector<Resonance> resonance_energies(const SquareWell& well,
                                          const PhysicalConstants& constants, int max_order);

/// Smallest order whose resonance lies at or above `energy_max` (so orders
/// 1..result cover every resonance up to energy_max).
int orders_covering(const SquareWell& well, const PhysicalConstants& constants,
                    double energy_max);

}  // namespace ramsauer

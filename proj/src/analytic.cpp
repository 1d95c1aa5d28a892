#include "ramsauer/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ramsauer {

namespace {

using namespace std::complex_literals;

void check(const WaveNumbers& wn, double width) {
  if (!(wn.k > 0.0) || !std::isfinite(wn.k)) throw DomainError("k", "must be > 0");
  if (!(wn.q >= wn.k) || !std::isfinite(wn.q)) throw DomainError("q", "must be >= k");
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("width", "must be > 0");
}

// ((k^2 - q^2) / 2kq)^2, factored to keep precision when q ~ k.
double mismatch_squared(const WaveNumbers& wn) {
  const double m = (wn.k - wn.q) * (wn.k + wn.q) / (2.0 * wn.k * wn.q);
  return m * m;
}

}  // namespace

double transmission_probability(const WaveNumbers& wn, double width) {
  check(wn, width);
  const double s = std::sin(wn.q * width);
  return 1.0 / (1.0 + mismatch_squared(wn) * s * s);
}

double reflection_probability(const WaveNumbers& wn, double width) {
  check(wn, width);
  const double s = std::sin(wn.q * width);
  const double num = mismatch_squared(wn) * s * s;
  return num / (1.0 + num);
}

AnalyticCoefficients scattering_amplitudes(const WaveNumbers& wn, double width) {
  check(wn, width);
  const double k = wn.k;
  const double q = wn.q;
  const double c = std::cos(q * width);
  const double s = std::sin(q * width);
  const double sum_ratio = (q * q + k * k) / (2.0 * k * q);
  const double diff_ratio = (q - k) * (q + k) / (2.0 * k * q);

  // exit = B e^{ikL}: the transmitted field at the right edge.
  const Complex exit = 1.0 / Complex(c, -sum_ratio * s);
  const Complex b = exit * std::exp(Complex(0.0, -k * width));
  const Complex a = 1i * diff_ratio * s * exit;
  const Complex cc = exit * std::exp(Complex(0.0, -q * width)) * (q + k) / (2.0 * q);
  const Complex dd = exit * std::exp(Complex(0.0, q * width)) * (q - k) / (2.0 * q);

  AnalyticCoefficients out;
  out.refl_amp = a;
  out.trans_amp = b;
  out.refl_prob = std::norm(a);
  out.trans_prob = std::norm(b);
  out.interior_amps = {cc, dd};
  return out;
}

FieldSample field_at(const AnalyticCoefficients& amps, const WaveNumbers& wn, double width,
                     double x) {
  const double k = wn.k;
  const double q = wn.q;
  if (x <= 0.0) {
    const Complex in = std::exp(Complex(0.0, k * x));
    const Complex out = amps.refl_amp * std::exp(Complex(0.0, -k * x));
    return {in + out, 1i * k * (in - out)};
  }
  if (x >= width) {
    const Complex t = amps.trans_amp * std::exp(Complex(0.0, k * x));
    return {t, 1i * k * t};
  }
  const Complex fwd = amps.interior_amps.first * std::exp(Complex(0.0, q * x));
  const Complex bwd = amps.interior_amps.second * std::exp(Complex(0.0, -q * x));
  return {fwd + bwd, 1i * q * (fwd - bwd)};
}

std::vector<Resonance> resonance_energies(const SquareWell& well,
                                          const PhysicalConstants& constants, int max_order) {
  validate(well);
  validate(constants);
  if (max_order < 1) throw DomainError("max_order", "must be >= 1");

  std::vector<Resonance> out;
  for (int j = 1; j <= max_order; ++j) {
    const double p = j * std::numbers::pi * constants.hbar / well.width;
    const double e = p * p / (2.0 * constants.mass) - well.depth;
    if (e > 0.0) out.push_back({j, e});
  }
  return out;
}

int orders_covering(const SquareWell& well, const PhysicalConstants& constants,
                    double energy_max) {
  validate(well);
  validate(constants);
  const double qmax =
      std::sqrt(2.0 * constants.mass * (std::max(energy_max, 0.0) + well.depth)) / constants.hbar;
  return std::max(1, static_cast<int>(std::ceil(qmax * well.width / std::numbers::pi)) + 1);
}

}  // namespace ramsauer

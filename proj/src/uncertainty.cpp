#include "tqkd/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "tqkd/errors.hpp"

namespace tqkd::uncertainty {

void NoiseModel::validate() const {
  for (double eff : {eff_A, eff_B, eff_E}) {
    if (!(eff > 0.0 && eff <= 1.0)) throw DomainError("detector efficiency must lie in (0, 1]");
  }
  for (double n2 : {noise2_A, noise2_B, noise2_E}) {
    if (!(n2 >= 0.0) || !std::isfinite(n2)) {
      throw DomainError("detector noise second moment must be finite and nonnegative");
    }
  }
  if (!(transmittance > 0.0 && transmittance <= 1.0)) {
    throw DomainError("channel transmittance must lie in (0, 1]");
  }
}

double delta_ab(const NoiseModel& nm, double tau) {
  nm.validate();
  if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("tau must lie in [0, 1]");
  const double gain = tau * nm.eff_B / nm.eff_A;
  return gain * gain * (1.0 - nm.eff_A / 2.0 + nm.noise2_A) + 1.0 + nm.noise2_B;
}

double delta_be(const NoiseModel& nm, double tau, double mu) {
  nm.validate();
  if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("tau must lie in (0, 1]");
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("mu must lie in [0, 1]");
  const double bob = tau * nm.eff_B;
  const double gain = mu * nm.eff_E / bob;
  return gain * gain * (1.0 - bob * bob / 2.0 + nm.noise2_B) + 1.0 + nm.noise2_E;
}

double gaussian_mi(double variance, double chi) {
  if (!(variance >= 1.0)) throw DomainError("source variance must be at least 1");
  if (!(chi >= 0.0)) throw DomainError("added noise must be nonnegative");
  if (std::isinf(chi)) return 0.0;
  return 0.5 * std::log2((variance + chi) / (1.0 + chi));
}

NoiseDecomposition total_noise(const NoiseModel& nm, double delta) {
  nm.validate();
  const double t = nm.transmittance;
  NoiseDecomposition d;
  d.line = 1.0 / t - 2.0 + delta;
  d.hom = (1.0 + nm.noise2_B) / nm.eff_B - 1.0;
  // Summed as delta + (1/T - 2 + hom/T): algebraically line + hom/T, and it
  // returns delta exactly whenever the bracket cancels (T = 1, <N^2> = 1, n_B = 1).
  d.total = delta + ((1.0 / t - 2.0) + d.hom / t);
  return d;
}

UncertaintyResult evaluate(const NoiseModel& nm, double tau, double variance) {
  const double mu = std::sqrt(std::max(0.0, 1.0 - tau * tau));
  UncertaintyResult r;
  r.delta_ab = delta_ab(nm, tau);
  r.delta_be = delta_be(nm, tau, mu);
  r.chi_ab = total_noise(nm, r.delta_ab);
  r.chi_be = total_noise(nm, r.delta_be);
  r.I_AB = gaussian_mi(variance, r.chi_ab.total);
  r.I_BE = gaussian_mi(variance, r.chi_be.total);
  return r;
}

std::vector<CurvePoint> figure4_curves(const NoiseModel& nm, double tau,
                                       std::span<const double> variances) {
  std::vector<CurvePoint> out;
  out.reserve(variances.size());
  for (double v : variances) {
    const UncertaintyResult r = evaluate(nm, tau, v);
    out.push_back({v, r.I_AB, r.I_BE});
  }
  return out;
}

double detector_quadrature_variance(double gain, double input_variance, double noise2) {
  if (!(std::abs(gain) <= 1.0)) throw DomainError("beam-splitter gain must satisfy |c| <= 1");
  if (!(input_variance >= 0.0) || !(noise2 >= 0.0)) throw DomainError("variances must be nonnegative");
  return gain * gain * input_variance + (1.0 - gain * gain) + noise2;
}

}  // namespace tqkd::uncertainty

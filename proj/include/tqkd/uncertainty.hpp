#pragma once

// Von Neumann mutual information from measurement uncertainty.
//
// Alice (or Eve) estimates Bob's quadrature from her own record; the mean
// squared error of that estimate is the added noise chi, and a Gaussian
// channel with source variance V then carries 1/2 log2((V + chi)/(1 + chi))
// bits.

#include <span>
#include <vector>

namespace tqkd::uncertainty {

/// Detector efficiencies, detector-noise second moments <N^2> (in units of
/// vacuum quadrature variance) and channel transmittance.
struct NoiseModel {
  double eff_A = 1.0;
  double eff_B = 1.0;
  double eff_E = 1.0;
  double noise2_A = 1.0;
  double noise2_B = 1.0;
  double noise2_E = 1.0;
  double transmittance = 1.0;

  /// Unit efficiencies, <N^2> = 1 everywhere, T = 1.
  static NoiseModel simplified() { return {}; }

  /// Throws DomainError unless efficiencies are in (0,1], second moments are
  /// nonnegative and T is in (0,1].
  void validate() const;
};

/// Alice's uncertainty on Bob's quadrature:
///   (tau n_B / n_A)^2 (1 - n_A/2 + <N_A^2>) + 1 + <N_B^2>.
/// The "1 - n_A/2" term is not squared, unlike the matching term of
/// delta_be; both are kept as derived.
double delta_ab(const NoiseModel& nm, double tau);

/// Eve's uncertainty on Bob's quadrature:
///   (mu n_E / (tau n_B))^2 (1 - (tau n_B)^2/2 + <N_B^2>) + 1 + <N_E^2>.
/// Throws DomainError for tau == 0.
double delta_be(const NoiseModel& nm, double tau, double mu);

/// 1/2 log2((V + chi) / (1 + chi)). Throws DomainError for V < 1 or chi < 0.
double gaussian_mi(double variance, double chi);

struct NoiseDecomposition {
  double line = 0.0;   // 1/T - 2 + Delta
  double hom = 0.0;    // (1 + <N^2>)/n_B - 1
  double total = 0.0;  // line + hom/T
};

/// Splits the added noise into channel and detection parts, using Bob's
/// efficiency and detector noise. Throws DomainError for T outside (0, 1].
NoiseDecomposition total_noise(const NoiseModel& nm, double delta);

struct UncertaintyResult {
  double delta_ab = 0.0;
  double delta_be = 0.0;
  NoiseDecomposition chi_ab;
  NoiseDecomposition chi_be;
  double I_AB = 0.0;
  double I_BE = 0.0;
};

UncertaintyResult evaluate(const NoiseModel& nm, double tau, double variance);

struct CurvePoint {
  double variance = 1.0;
  double I_AB = 0.0;
  double I_BE = 0.0;
};

/// I_AB and I_BE across source variances for Eve amplitude transmittance tau
/// (mu = sqrt(1 - tau^2)).
std::vector<CurvePoint> figure4_curves(const NoiseModel& nm, double tau,
                                       std::span<const double> variances);

/// Variance of c x_in + sqrt(1 - c^2) v + N with Var(v) = 1 and independent
/// detector noise of second moment noise2:
///   c^2 Var(x_in) + (1 - c^2) + noise2.
/// c is n/2, tau n/2 or mu n/2 for Alice, Bob and Eve respectively.
double detector_quadrature_variance(double gain, double input_variance, double noise2);

}  // namespace tqkd::uncertainty

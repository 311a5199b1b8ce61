#pragma once

// Central-broadcast protocol as a Gaussian circuit.
//
// A thermal beam meets vacuum on a 50:50 splitter; one output goes to Alice,
// the other towards Bob. Eve taps Bob's channel with a splitter of amplitude
// transmittance eve_tau and keeps the reflected beam. Every party then splits
// what they receive 50:50 against vacuum for X/P heterodyne detection, giving
// six output modes ordered (A1, A2, B1, B2, E1, E2).

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "tqkd/gaussian.hpp"
#include "tqkd/infotheory.hpp"

namespace tqkd::protocol {

enum class Mode : std::size_t { A1 = 0, A2 = 1, B1 = 2, B2 = 3, E1 = 4, E2 = 5 };
inline constexpr std::size_t kModes = 6;

struct ProtocolConfig {
  double mean_photon = 200.0;
  /// Amplitude transmittance of Eve's splitter.
  double eve_tau = 1.0;

  /// From power transmittance eve_t2 = eve_tau^2. All conversions between the
  /// sampler's power transmittance and the circuit's amplitude go through here.
  static ProtocolConfig from_power(double mean_photon, double eve_t2);

  double eve_t2() const { return eve_tau * eve_tau; }
  double eve_mu() const;
  /// Quadrature variance of the source, 2 n + 1.
  double source_variance() const { return 2.0 * mean_photon + 1.0; }
  gaussian::BeamSplitter eve_splitter() const;

  /// Throws DomainError unless mean_photon >= 0 and eve_tau in [0, 1].
  void validate() const;
};

gaussian::ModePartition alice_modes();
gaussian::ModePartition bob_modes();
gaussian::ModePartition eve_modes();

struct ProtocolGaussianState {
  ProtocolConfig config;
  gaussian::CovarianceMatrix gamma;
};

/// The four-mode (4x4) party blocks and cross-covariances of the final state,
/// in (X1, P1, X2, P2) ordering.
struct PartyBlocks {
  Eigen::Matrix4d alice;
  Eigen::Matrix4d bob;
  Eigen::Matrix4d eve;
  Eigen::Matrix4d c_ab;
  Eigen::Matrix4d c_ae;
  Eigen::Matrix4d c_be;
};

/// Runs thermal (x) vacuum^5 through the five splitters. The signal mode is
/// always the first splitter argument.
ProtocolGaussianState build_final_state(const ProtocolConfig& cfg);

/// Reads the six blocks out of a 12x12 final state.
PartyBlocks blocks_of(const gaussian::CovarianceMatrix& gamma);

/// The six blocks evaluated from their closed forms, without running the
/// circuit. Each block is a 2x2 mode-level matrix tensored with the 2x2
/// identity over quadratures.
PartyBlocks closed_form_submatrices(const ProtocolConfig& cfg);

/// Von Neumann mutual informations between the parties' two-mode subsystems
/// and the key-rate bounds built from them.
info::InfoSummary protocol_mutual_informations(const ProtocolConfig& cfg);
info::InfoSummary protocol_mutual_informations(const ProtocolGaussianState& state);

}  // namespace tqkd::protocol

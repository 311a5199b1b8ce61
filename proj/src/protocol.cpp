#include "tqkd/protocol.hpp"

#include <cmath>

#include "tqkd/errors.hpp"

namespace tqkd::protocol {

using gaussian::BeamSplitter;
using gaussian::CovarianceMatrix;
using gaussian::ModePartition;

namespace {

constexpr std::size_t idx(Mode m) { return static_cast<std::size_t>(m); }

// [[d, o], [o, d]] (x) I2.
Eigen::Matrix4d mode_block(double d, double o) {
  Eigen::Matrix2d m;
  m << d, o, o, d;
  Eigen::Matrix4d out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = m(i, j) * Eigen::Matrix2d::Identity();
    }
  }
  return out;
}

}  // namespace

ProtocolConfig ProtocolConfig::from_power(double mean_photon, double eve_t2) {
  if (!(eve_t2 >= 0.0 && eve_t2 <= 1.0)) throw DomainError("eve_t2 must lie in [0, 1]");
  ProtocolConfig cfg{mean_photon, std::sqrt(eve_t2)};
  cfg.validate();
  return cfg;
}

double ProtocolConfig::eve_mu() const { return std::sqrt(std::max(0.0, 1.0 - eve_tau * eve_tau)); }

gaussian::BeamSplitter ProtocolConfig::eve_splitter() const { return {eve_tau, eve_mu()}; }

void ProtocolConfig::validate() const {
  if (!(mean_photon >= 0.0) || !std::isfinite(mean_photon)) {
    throw DomainError("mean photon number must be finite and nonnegative");
  }
  if (!(eve_tau >= 0.0 && eve_tau <= 1.0)) {
    throw DomainError("Eve's amplitude transmittance must lie in [0, 1]");
  }
}

ModePartition alice_modes() { return {idx(Mode::A1), idx(Mode::A2)}; }
ModePartition bob_modes() { return {idx(Mode::B1), idx(Mode::B2)}; }
ModePartition eve_modes() { return {idx(Mode::E1), idx(Mode::E2)}; }

ProtocolGaussianState build_final_state(const ProtocolConfig& cfg) {
  cfg.validate();
  const BeamSplitter balanced = BeamSplitter::balanced();

  // Thermal light enters on A1's slot; every other slot starts as vacuum.
  CovarianceMatrix g =
      gaussian::append_vacuum(gaussian::thermal_covariance(cfg.mean_photon), kModes - 1);
  // Source splitter: A1 slot carries Alice's branch, B1 slot Bob's channel.
  g = gaussian::apply_beam_splitter(g, idx(Mode::A1), idx(Mode::B1), balanced);
  // Eve's tap: transmitted light stays on B1, reflected light goes to E1.
  g = gaussian::apply_beam_splitter(g, idx(Mode::B1), idx(Mode::E1), cfg.eve_splitter());
  // Heterodyne splitters at each receiver.
  g = gaussian::apply_beam_splitter(g, idx(Mode::A1), idx(Mode::A2), balanced);
  g = gaussian::apply_beam_splitter(g, idx(Mode::B1), idx(Mode::B2), balanced);
  g = gaussian::apply_beam_splitter(g, idx(Mode::E1), idx(Mode::E2), balanced);
  return {cfg, std::move(g)};
}

PartyBlocks blocks_of(const CovarianceMatrix& gamma) {
  if (gamma.n_modes() != kModes) throw DomainError("protocol state must have six modes");
  const Eigen::MatrixXd& m = gamma.entries();
  return {m.block<4, 4>(0, 0), m.block<4, 4>(4, 4), m.block<4, 4>(8, 8),
          m.block<4, 4>(0, 4), m.block<4, 4>(0, 8), m.block<4, 4>(4, 8)};
}

PartyBlocks closed_form_submatrices(const ProtocolConfig& cfg) {
  cfg.validate();
  const double v = cfg.source_variance();
  const double t = cfg.eve_tau;
  const double m = cfg.eve_mu();
  const double t2 = t * t;
  const double m2 = m * m;

  PartyBlocks b;
  b.alice = mode_block((v + 3.0) / 4.0, -(v - 1.0) / 4.0);
  b.bob = mode_block(t2 / 4.0 * (v + 1.0) + (1.0 + m2) / 2.0,
                     -t2 / 4.0 * (v + 1.0) + (1.0 - m2) / 2.0);
  b.eve = mode_block(m2 / 4.0 * (v + 1.0) + (1.0 + t2) / 2.0,
                     -m2 / 4.0 * (v + 1.0) + (1.0 - t2) / 2.0);
  // Cross blocks have the pattern [[c, -c], [-c, c]] (x) I2.
  b.c_ab = mode_block(t / 4.0 * (1.0 - v), -t / 4.0 * (1.0 - v));
  b.c_ae = mode_block(-m / 4.0 * (1.0 - v), m / 4.0 * (1.0 - v));
  b.c_be = mode_block(-t * m / 4.0 * (v - 1.0), t * m / 4.0 * (v - 1.0));
  return b;
}

info::InfoSummary protocol_mutual_informations(const ProtocolConfig& cfg) {
  return protocol_mutual_informations(build_final_state(cfg));
}

info::InfoSummary protocol_mutual_informations(const ProtocolGaussianState& state) {
  const auto& g = state.gamma;
  const ModePartition a = alice_modes();
  const ModePartition b = bob_modes();
  const ModePartition e = eve_modes();

  info::KeyRateInputs in;
  in.flavor = info::Flavor::von_neumann;
  in.H_A = gaussian::von_neumann_entropy(gaussian::reduce(g, a));
  in.H_B = gaussian::von_neumann_entropy(gaussian::reduce(g, b));
  in.H_E = gaussian::von_neumann_entropy(gaussian::reduce(g, e));
  in.I_AB = gaussian::mutual_information(g, a, b);
  in.I_AE = gaussian::mutual_information(g, a, e);
  in.I_BE = gaussian::mutual_information(g, b, e);
  in.I_AB_given_E = gaussian::conditional_mutual_information(g, a, b, e);
  return info::key_rate_bounds(in);
}

}  // namespace tqkd::protocol

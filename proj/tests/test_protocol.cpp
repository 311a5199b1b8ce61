#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tqkd/errors.hpp"
#include "tqkd/gaussian.hpp"
#include "tqkd/protocol.hpp"

using namespace tqkd;
using protocol::ProtocolConfig;

namespace {

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// The circuit multiplied out with dense 12x12 splitter matrices.
Eigen::MatrixXd dense_circuit(double nbar, double tau, double mu) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(12, 12);
  g(0, 0) = g(1, 1) = 2.0 * nbar + 1.0;
  const double h = std::sqrt(0.5);
  g = testing::dense_splitter_product(g, 0, 2, h, h);
  g = testing::dense_splitter_product(g, 2, 4, tau, mu);
  g = testing::dense_splitter_product(g, 0, 1, h, h);
  g = testing::dense_splitter_product(g, 2, 3, h, h);
  g = testing::dense_splitter_product(g, 4, 5, h, h);
  return g;
}

}  // namespace

TEST_CASE("Alice block at V = 3") {
  for (double t2 : {0.0, 0.3, 1.0}) {
    const auto blocks = protocol::blocks_of(build_final_state(ProtocolConfig::from_power(1.0, t2)).gamma);
    CHECK(blocks.alice(0, 0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(blocks.alice(1, 1) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(blocks.alice(0, 2) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(blocks.alice(1, 3) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(blocks.alice(0, 1) == 0.0);
    CHECK(blocks.alice(0, 3) == 0.0);
  }
}

TEST_CASE("closed forms at V = 3, 50:50 Eve") {
  const auto cf = protocol::closed_form_submatrices(ProtocolConfig::from_power(1.0, 0.5));
  CHECK(cf.bob(0, 0) == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(std::abs(cf.c_be(0, 0)) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(cf.c_be(0, 2)) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("trivial configurations") {
  const auto lossless = protocol::blocks_of(build_final_state(ProtocolConfig::from_power(5.0, 1.0)).gamma);
  CHECK(max_abs_diff(lossless.eve, Eigen::Matrix4d::Identity()) < 1e-15);
  CHECK(lossless.c_be.cwiseAbs().maxCoeff() < 1e-15);
  CHECK(lossless.c_ae.cwiseAbs().maxCoeff() < 1e-15);

  const auto dark = build_final_state(ProtocolConfig::from_power(0.0, 0.4));
  CHECK(max_abs_diff(dark.gamma.entries(), Eigen::MatrixXd::Identity(12, 12)) < 1e-15);

  const auto cf = protocol::closed_form_submatrices(ProtocolConfig::from_power(0.0, 0.7));
  CHECK(cf.c_ab.cwiseAbs().maxCoeff() == 0.0);
  CHECK(cf.c_ae.cwiseAbs().maxCoeff() == 0.0);
  CHECK(cf.c_be.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(ProtocolConfig::from_power(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS(ProtocolConfig::from_power(1.0, 1.1), DomainError);
  CHECK_THROWS_AS(build_final_state(ProtocolConfig{1.0, -0.2}), DomainError);
  CHECK(ProtocolConfig::from_power(1.0, 0.25).eve_tau == doctest::Approx(0.5));
  CHECK(ProtocolConfig::from_power(1.0, 0.36).eve_mu() == doctest::Approx(0.8));
}

TEST_CASE("circuit, closed forms and the dense product agree") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> nbar(0.0, 300.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto cfg = ProtocolConfig::from_power(nbar(rng), unit(rng));
    const auto state = build_final_state(cfg);
    const Eigen::MatrixXd dense = dense_circuit(cfg.mean_photon, cfg.eve_tau, cfg.eve_mu());
    CHECK(max_abs_diff(state.gamma.entries(), dense) < 1e-9);

    const auto built = protocol::blocks_of(state.gamma);
    const auto cf = protocol::closed_form_submatrices(cfg);
    CHECK(max_abs_diff(built.alice, cf.alice) < 1e-9);
    CHECK(max_abs_diff(built.bob, cf.bob) < 1e-9);
    CHECK(max_abs_diff(built.eve, cf.eve) < 1e-9);
    CHECK(max_abs_diff(built.c_ab, cf.c_ab) < 1e-9);
    CHECK(max_abs_diff(built.c_ae, cf.c_ae) < 1e-9);
    CHECK(max_abs_diff(built.c_be, cf.c_be) < 1e-9);
  }
}

TEST_CASE("global entropy equals the source entropy") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> nbar(0.0, 300.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cfg = ProtocolConfig::from_power(nbar(rng), unit(rng));
    const auto state = build_final_state(cfg);
    const auto spec = gaussian::symplectic_spectrum(state.gamma).values;
    CHECK(std::abs(spec[0] - cfg.source_variance()) < 1e-9 * cfg.source_variance());
    for (std::size_t i = 1; i < spec.size(); ++i) CHECK(std::abs(spec[i] - 1.0) < 1e-9);
    CHECK(std::abs(gaussian::von_neumann_entropy(state.gamma) -
                   gaussian::bosonic_entropy(cfg.mean_photon)) < 1e-9);
  }
}

TEST_CASE("swapping tau and mu exchanges Bob and Eve") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> nbar(0.0, 300.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double n = nbar(rng);
    const double t2 = unit(rng);
    const auto a = protocol::blocks_of(build_final_state(ProtocolConfig::from_power(n, t2)).gamma);
    const auto b = protocol::blocks_of(build_final_state(ProtocolConfig::from_power(n, 1.0 - t2)).gamma);
    CHECK(max_abs_diff(a.bob, b.eve) < 1e-9);
    CHECK(max_abs_diff(a.eve, b.bob) < 1e-9);
    CHECK(max_abs_diff(a.c_ab.cwiseAbs(), b.c_ae.cwiseAbs()) < 1e-9);
  }
}

TEST_CASE("von Neumann mutual informations") {
  const auto half = protocol::protocol_mutual_informations(ProtocolConfig::from_power(200.0, 0.5));
  CHECK(half.flavor == info::Flavor::von_neumann);
  CHECK(half.I_AB == doctest::Approx(half.I_AE).epsilon(1e-9));
  CHECK(std::abs(half.K_DR) < 1e-9);

  const auto clear = protocol::protocol_mutual_informations(ProtocolConfig::from_power(200.0, 1.0));
  CHECK(std::abs(clear.I_AE) < 1e-9);
  CHECK(std::abs(clear.I_BE) < 1e-9);

  for (int k = 1; k <= 20; ++k) {
    const auto s = protocol::protocol_mutual_informations(ProtocolConfig::from_power(200.0, 0.05 * k));
    CHECK(s.K_RR > 0.0);
    CHECK(s.I_AB >= 0.0);
  }
}

TEST_CASE("I(B;E) varies continuously in eve_tau") {
  const auto i_be = [](double tau) {
    return protocol::protocol_mutual_informations(ProtocolConfig{200.0, tau}).I_BE;
  };
  for (int k = 1; k < 200; ++k) {
    const double tau = k / 200.0;
    CHECK(std::abs(i_be(tau + 1e-7) - i_be(tau)) < 1e-3);
  }
  CHECK(std::abs(i_be(1.0)) < 1e-9);
  CHECK(std::abs(i_be(1.0 - 1e-9)) < 1e-4);
}

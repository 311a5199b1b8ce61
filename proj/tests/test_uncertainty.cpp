#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tqkd/errors.hpp"
#include "tqkd/protocol.hpp"
#include "tqkd/uncertainty.hpp"

using namespace tqkd;
using namespace tqkd::uncertainty;

namespace {

const double kHalf = std::sqrt(0.5);

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i <= n; ++i) v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
  return v;
}

}  // namespace

TEST_CASE("delta_ab") {
  const auto nm = NoiseModel::simplified();
  CHECK(delta_ab(nm, 1.0) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(delta_ab(nm, 0.0) == 2.0);

  NoiseModel a = nm;
  a.eff_A = 0.4;
  NoiseModel b = nm;
  b.eff_A = 0.8;
  // First term: (tau n_B / n_A)^2 (1 - n_A/2 + N_A^2).
  const double first_a = delta_ab(a, 0.7) - 2.0;
  const double first_b = delta_ab(b, 0.7) - 2.0;
  CHECK(first_a == doctest::Approx(0.49 / 0.16 * (1.0 - 0.2 + 1.0)));
  CHECK(first_b == doctest::Approx(0.49 / 0.64 * (1.0 - 0.4 + 1.0)));

  NoiseModel bad = nm;
  bad.eff_A = 0.0;
  CHECK_THROWS_AS(delta_ab(bad, 0.5), DomainError);
}

TEST_CASE("delta_be") {
  const auto nm = NoiseModel::simplified();
  CHECK(delta_be(nm, kHalf, kHalf) == doctest::Approx(3.75).epsilon(1e-14));
  CHECK(delta_be(nm, 1.0, 0.0) == 2.0);
  CHECK_THROWS_AS(delta_be(nm, 0.0, 1.0), DomainError);

  // Quadratic in mu at fixed tau.
  const double base = delta_be(nm, 0.6, 0.2) - 2.0;
  CHECK(delta_be(nm, 0.6, 0.4) - 2.0 == doctest::Approx(4.0 * base));
}

TEST_CASE("gaussian_mi") {
  CHECK(gaussian_mi(1.0, 0.0) == 0.0);
  CHECK(gaussian_mi(1.0, 7.0) == 0.0);
  CHECK(gaussian_mi(9.0, 1.0) == doctest::Approx(1.160964047443681).epsilon(1e-14));
  CHECK(gaussian_mi(9.0, INFINITY) == 0.0);
  CHECK_THROWS_AS(gaussian_mi(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(gaussian_mi(2.0, -0.1), DomainError);

  const auto vs = log_grid(1.0, 1e4, 60);
  const auto chis = log_grid(1e-3, 1e3, 60);
  for (std::size_t i = 1; i < vs.size(); ++i) {
    CHECK(gaussian_mi(vs[i], 2.0) > gaussian_mi(vs[i - 1], 2.0));
  }
  for (std::size_t i = 1; i < chis.size(); ++i) {
    CHECK(gaussian_mi(50.0, chis[i]) < gaussian_mi(50.0, chis[i - 1]));
  }
}

TEST_CASE("total_noise") {
  const auto nm = NoiseModel::simplified();
  const auto d = total_noise(nm, 3.5);
  CHECK(d.line == doctest::Approx(2.5));
  CHECK(d.hom == 1.0);
  CHECK(d.total == 3.5);

  NoiseModel quiet = nm;
  quiet.noise2_B = 0.0;
  CHECK(total_noise(quiet, 1.0).hom == 0.0);

  NoiseModel lossy = nm;
  lossy.transmittance = 0.5;
  CHECK(total_noise(lossy, 0.0).total == doctest::Approx(2.0).epsilon(1e-15));

  NoiseModel dead = nm;
  dead.transmittance = 0.0;
  CHECK_THROWS_AS(total_noise(dead, 1.0), DomainError);
}

TEST_CASE("simplification identity holds exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> delta(0.0, 1e3);
  const auto nm = NoiseModel::simplified();
  for (int i = 0; i < 1000; ++i) {
    const double d = delta(rng);
    CHECK(total_noise(nm, d).total == d);
  }
}

TEST_CASE("Figure 4 curve properties at 50:50") {
  const auto nm = NoiseModel::simplified();
  const auto vs = log_grid(1.0, 1e4, 80);
  const auto curve = figure4_curves(nm, kHalf, vs);
  REQUIRE(curve.size() == vs.size());
  CHECK(curve.front().I_AB == 0.0);
  CHECK(curve.front().I_BE == 0.0);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].I_AB > curve[i - 1].I_AB);
    CHECK(curve[i].I_BE > curve[i - 1].I_BE);
    CHECK(curve[i].I_AB > curve[i].I_BE);
  }
  // Concave in V: on an even linear grid the increments shrink. (In log V the
  // slope grows towards 1/(2 ln 2), so the curve is convex there.)
  std::vector<double> linear;
  for (int i = 0; i <= 100; ++i) linear.push_back(1.0 + 10.0 * i);
  const auto lin = figure4_curves(nm, kHalf, linear);
  for (std::size_t i = 2; i < lin.size(); ++i) {
    CHECK(lin[i].I_AB - lin[i - 1].I_AB < lin[i - 1].I_AB - lin[i - 2].I_AB);
    CHECK(lin[i].I_BE - lin[i - 1].I_BE < lin[i - 1].I_BE - lin[i - 2].I_BE);
  }
}

TEST_CASE("ordering region for the default noise model") {
  const auto nm = NoiseModel::simplified();
  for (int k = 1; k <= 100; ++k) {
    const double t2 = k / 100.0;
    const auto r = evaluate(nm, std::sqrt(t2), 100.0);
    if (t2 <= 0.6375) {
      CHECK(r.I_AB >= r.I_BE);
    } else if (t2 >= 0.64) {
      CHECK(r.I_AB < r.I_BE);
    }
  }
}

TEST_CASE("uncertainty and covariance routes share the qualitative shape at 50:50") {
  const auto nm = NoiseModel::simplified();
  double prev_unc = -1.0, prev_cov = -1.0;
  for (double v : log_grid(3.0, 1e3, 20)) {
    const auto unc = evaluate(nm, kHalf, v);
    const auto cov = protocol::protocol_mutual_informations(
        protocol::ProtocolConfig::from_power((v - 1.0) / 2.0, 0.5));
    CHECK(unc.I_AB > prev_unc);
    CHECK(cov.I_AB > prev_cov);
    CHECK(unc.I_AB > unc.I_BE);
    CHECK(cov.I_AB > cov.I_BE);
    prev_unc = unc.I_AB;
    prev_cov = cov.I_AB;
  }
}

TEST_CASE("detector variance bookkeeping") {
  // Sample c x + sqrt(1 - c^2) v + N with Gaussian pieces and compare with the
  // coefficient identity.
  std::mt19937_64 rng(8);
  std::normal_distribution<double> gauss;
  const std::size_t n = 400'000;
  for (const auto [c, var_in, n2] : {std::tuple{0.5, 3.0, 1.0}, std::tuple{kHalf * 0.5, 40.0, 0.2},
                                     std::tuple{1.0, 2.0, 0.0}}) {
    double sum = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::sqrt(var_in) * gauss(rng);
      const double v = gauss(rng);
      const double noise = std::sqrt(n2) * gauss(rng);
      const double out = c * x + std::sqrt(1.0 - c * c) * v + noise;
      sum += out;
      ss += out * out;
    }
    const double mean = sum / n;
    const double var = ss / n - mean * mean;
    const double expected = detector_quadrature_variance(c, var_in, n2);
    CHECK(expected == doctest::Approx(c * c * var_in + (1.0 - c * c) + n2));
    CHECK(std::abs(var - expected) < 3.0 * expected * std::sqrt(2.0 / n));
  }
  CHECK_THROWS_AS(detector_quadrature_variance(1.5, 1.0, 1.0), DomainError);
}

TEST_CASE("NoiseModel validation") {
  NoiseModel nm;
  nm.eff_B = 1.2;
  CHECK_THROWS_AS(nm.validate(), DomainError);
  nm = NoiseModel{};
  nm.noise2_E = -0.1;
  CHECK_THROWS_AS(nm.validate(), DomainError);
  CHECK_NOTHROW(NoiseModel::simplified().validate());
}

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "tqkd/tqkd.h"

TEST_CASE("version and status strings") {
  CHECK(std::string(tqkd_version()).size() > 0);
  CHECK(std::string(tqkd_status_string(TQKD_OK)) != std::string(tqkd_status_string(TQKD_ERR_DOMAIN)));
}

TEST_CASE("gaussian state lifecycle") {
  tqkd_gaussian_state* g = nullptr;
  REQUIRE(tqkd_gaussian_thermal(1.0, &g) == TQKD_OK);
  REQUIRE(tqkd_gaussian_append_vacuum(g, 1) == TQKD_OK);
  const double h = std::sqrt(0.5);
  REQUIRE(tqkd_gaussian_beam_splitter(g, 0, 1, h, h) == TQKD_OK);

  std::size_t modes = 0;
  CHECK(tqkd_gaussian_modes(g, &modes) == TQKD_OK);
  CHECK(modes == 2);

  double entries[16];
  CHECK(tqkd_gaussian_entries(g, entries, 15) == TQKD_ERR_BUFFER);
  REQUIRE(tqkd_gaussian_entries(g, entries, 16) == TQKD_OK);
  CHECK(entries[0] == doctest::Approx(2.0));
  CHECK(entries[2] == doctest::Approx(-1.0));

  double spec[2];
  REQUIRE(tqkd_gaussian_spectrum(g, spec, 2) == TQKD_OK);
  CHECK(spec[0] == doctest::Approx(3.0));
  CHECK(spec[1] == doctest::Approx(1.0));

  double s = 0.0;
  REQUIRE(tqkd_gaussian_entropy(g, &s) == TQKD_OK);
  CHECK(s == doctest::Approx(2.0));

  const std::size_t a = 0, b = 1;
  double mi = 0.0;
  REQUIRE(tqkd_gaussian_mutual_information(g, &a, 1, &b, 1, &mi) == TQKD_OK);
  CHECK(mi > 0.0);

  tqkd_gaussian_state* sub = nullptr;
  REQUIRE(tqkd_gaussian_reduce(g, &b, 1, &sub) == TQKD_OK);
  double sub_entries[4];
  REQUIRE(tqkd_gaussian_entries(sub, sub_entries, 4) == TQKD_OK);
  CHECK(sub_entries[0] == doctest::Approx(2.0));

  CHECK(tqkd_gaussian_beam_splitter(g, 0, 7, h, h) == TQKD_ERR_INDEX);
  CHECK(std::string(tqkd_last_error()).size() > 0);
  CHECK(tqkd_gaussian_beam_splitter(g, 0, 1, 0.5, 0.5) == TQKD_ERR_DOMAIN);

  tqkd_gaussian_free(sub);
  tqkd_gaussian_free(g);
  tqkd_gaussian_free(nullptr);
}

TEST_CASE("error codes") {
  tqkd_gaussian_state* g = nullptr;
  CHECK(tqkd_gaussian_thermal(-1.0, &g) == TQKD_ERR_DOMAIN);
  CHECK(g == nullptr);
  CHECK(tqkd_gaussian_thermal(1.0, nullptr) == TQKD_ERR_NULL);

  const double bad[4] = {0.5, 0.0, 0.0, 0.5};
  REQUIRE(tqkd_gaussian_from_entries(bad, 2, &g) == TQKD_OK);
  double s = 0.0;
  CHECK(tqkd_gaussian_entropy(g, &s) == TQKD_ERR_UNPHYSICAL);
  tqkd_gaussian_free(g);

  const double asym[4] = {1.0, 0.3, 0.0, 1.0};
  CHECK(tqkd_gaussian_from_entries(asym, 2, &g) == TQKD_ERR_DOMAIN);
}

TEST_CASE("protocol through the C API") {
  tqkd_gaussian_state* g = nullptr;
  REQUIRE(tqkd_protocol_state(5.0, 0.3, &g) == TQKD_OK);
  double built[144];
  double closed[144];
  REQUIRE(tqkd_gaussian_entries(g, built, 144) == TQKD_OK);
  REQUIRE(tqkd_protocol_closed_form(5.0, 0.3, closed) == TQKD_OK);
  for (int i = 0; i < 144; ++i) CHECK(std::abs(built[i] - closed[i]) < 1e-12);
  tqkd_gaussian_free(g);

  tqkd_info_summary s{};
  REQUIRE(tqkd_protocol_summary(200.0, 0.5, &s) == TQKD_OK);
  CHECK(s.flavor == TQKD_VON_NEUMANN);
  CHECK(std::abs(s.K_DR) < 1e-9);
  CHECK(tqkd_protocol_summary(200.0, 1.5, &s) == TQKD_ERR_DOMAIN);
}

TEST_CASE("ensemble through the C API") {
  tqkd_run_params p{};
  p.mean_photon = 20.0;
  p.eve_t2 = 0.5;
  p.trials = 2000;
  p.seed = 3;
  p.model = TQKD_PHOTON_COUNT;
  p.threads = 2;
  tqkd_ensemble* ens = nullptr;
  REQUIRE(tqkd_ensemble_run(&p, &ens) == TQKD_OK);

  std::uint64_t n = 0;
  REQUIRE(tqkd_ensemble_trials(ens, &n) == TQKD_OK);
  CHECK(n == 2000);

  const double* z = nullptr;
  const std::uint64_t* d1 = nullptr;
  const std::uint64_t* d2 = nullptr;
  REQUIRE(tqkd_ensemble_values(ens, TQKD_BOB, &z) == TQKD_OK);
  REQUIRE(tqkd_ensemble_counts(ens, TQKD_BOB, 1, &d1) == TQKD_OK);
  REQUIRE(tqkd_ensemble_counts(ens, TQKD_BOB, 2, &d2) == TQKD_OK);
  for (std::size_t i = 0; i < n; ++i) CHECK(z[i] == static_cast<double>(d1[i] + d2[i]));
  CHECK(tqkd_ensemble_counts(ens, TQKD_BOB, 3, &d1) == TQKD_ERR_INDEX);

  std::vector<std::uint8_t> bits(n);
  double threshold = 0.0;
  REQUIRE(tqkd_ensemble_bits(ens, TQKD_BOB, bits.data(), &threshold) == TQKD_OK);
  std::vector<std::uint8_t> again(n);
  double t2 = 0.0;
  REQUIRE(tqkd_derive_bits(z, n, again.data(), &t2) == TQKD_OK);
  CHECK(bits == again);
  CHECK(threshold == t2);

  tqkd_info_summary s{};
  REQUIRE(tqkd_ensemble_summary(ens, &s) == TQKD_OK);
  CHECK(s.flavor == TQKD_SHANNON);
  CHECK(s.I_AB > 0.0);

  tqkd_info_errors e{};
  REQUIRE(tqkd_ensemble_bootstrap(ens, 10, 1, 1, &e) == TQKD_OK);
  CHECK(e.I_AB > 0.0);
  CHECK(tqkd_ensemble_bootstrap(ens, 1, 1, 1, &e) == TQKD_ERR_DOMAIN);

  tqkd_ensemble_free(ens);

  p.trials = 0;
  ens = nullptr;
  CHECK(tqkd_ensemble_run(&p, &ens) == TQKD_ERR_DOMAIN);
  CHECK(ens == nullptr);
  CHECK(tqkd_ensemble_run(nullptr, &ens) == TQKD_ERR_NULL);
}

TEST_CASE("information measures through the C API") {
  double h = 0.0;
  REQUIRE(tqkd_binary_entropy(0.5, &h) == TQKD_OK);
  CHECK(h == 1.0);
  CHECK(tqkd_binary_entropy(2.0, &h) == TQKD_ERR_DOMAIN);

  const std::uint8_t a[4] = {0, 1, 0, 1};
  const std::uint8_t b[4] = {0, 0, 1, 1};
  double mi = 1.0;
  REQUIRE(tqkd_mutual_information_bits(a, a, 4, &mi) == TQKD_OK);
  CHECK(mi == doctest::Approx(1.0));
  double cmi = 1.0;
  REQUIRE(tqkd_conditional_mutual_information(a, a, b, 4, &cmi) == TQKD_OK);
  CHECK(cmi == doctest::Approx(1.0));

  const double x[5] = {1, 2, 3, 4, 5};
  tqkd_offset_row rows[3];
  CHECK(tqkd_offset_correlation(x, x, 5, 1, rows, 2) == TQKD_ERR_BUFFER);
  REQUIRE(tqkd_offset_correlation(x, x, 5, 1, rows, 3) == TQKD_OK);
  CHECK(rows[0].offset == -1);
  CHECK(rows[1].r == doctest::Approx(1.0));

  tqkd_info_summary s{};
  REQUIRE(tqkd_oracle_summary(2.0, 0.5, 80, &s) == TQKD_OK);
  CHECK(s.I_AB == doctest::Approx(s.I_AE));
  CHECK(tqkd_oracle_summary(2.0, 0.5, 5, &s) == TQKD_ERR_DOMAIN);
}

TEST_CASE("uncertainty through the C API") {
  const tqkd_noise_model nm = tqkd_noise_model_default();
  CHECK(nm.eff_A == 1.0);
  CHECK(nm.transmittance == 1.0);
  tqkd_uncertainty_result r{};
  REQUIRE(tqkd_uncertainty_evaluate(&nm, 1.0, 9.0, &r) == TQKD_OK);
  CHECK(r.delta_ab == doctest::Approx(3.5));
  CHECK(r.chi_ab == r.delta_ab);
  CHECK(tqkd_uncertainty_evaluate(&nm, 0.0, 9.0, &r) == TQKD_ERR_DOMAIN);
}

#include "tqkd/tqkd.h"

#include <algorithm>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "tqkd/bootstrap.hpp"
#include "tqkd/errors.hpp"
#include "tqkd/gaussian.hpp"
#include "tqkd/infotheory.hpp"
#include "tqkd/montecarlo.hpp"
#include "tqkd/protocol.hpp"
#include "tqkd/uncertainty.hpp"
#include "version.hpp"

struct tqkd_gaussian_state {
  tqkd::gaussian::CovarianceMatrix gamma;
};

struct tqkd_ensemble {
  tqkd::mc::TrialEnsemble ensemble;
};

namespace {

using namespace tqkd;

thread_local std::string g_last_error;

template <class F>
tqkd_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return TQKD_OK;
  } catch (const IndexError& e) {
    g_last_error = e.what();
    return TQKD_ERR_INDEX;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return TQKD_ERR_DOMAIN;
  } catch (const UnphysicalStateError& e) {
    g_last_error = e.what();
    return TQKD_ERR_UNPHYSICAL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TQKD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TQKD_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TQKD_ERR_INTERNAL;
  }
}

tqkd_status null_arg(const char* name) {
  g_last_error = std::string("null argument: ") + name;
  return TQKD_ERR_NULL;
}

tqkd_status small_buffer(std::size_t need, std::size_t have) {
  g_last_error = "buffer holds " + std::to_string(have) + " values, need " + std::to_string(need);
  return TQKD_ERR_BUFFER;
}

tqkd_info_summary to_c(const info::InfoSummary& s) {
  tqkd_info_summary c{};
  c.H_A = s.H_A;
  c.H_B = s.H_B;
  c.H_E = s.H_E;
  c.I_AB = s.I_AB;
  c.I_AE = s.I_AE;
  c.I_BE = s.I_BE;
  c.I_AB_given_E = s.I_AB_given_E;
  c.K_DR = s.K_DR;
  c.K_RR = s.K_RR;
  c.lower_bound = s.lower_bound;
  c.upper_bound = s.upper_bound;
  c.flavor = s.flavor == info::Flavor::shannon ? TQKD_SHANNON : TQKD_VON_NEUMANN;
  return c;
}

gaussian::ModePartition partition(const std::size_t* modes, std::size_t count) {
  if (count > 0 && modes == nullptr) throw DomainError("mode list is null");
  return gaussian::ModePartition(std::vector<std::size_t>(modes, modes + count));
}

std::optional<mc::Party> party_of(tqkd_party p) {
  switch (p) {
    case TQKD_ALICE: return mc::Party::alice;
    case TQKD_BOB: return mc::Party::bob;
    case TQKD_EVE: return mc::Party::eve;
  }
  return std::nullopt;
}

mc::Party require_party(tqkd_party p) {
  const auto party = party_of(p);
  if (!party) throw IndexError("unknown party");
  return *party;
}

uncertainty::NoiseModel from_c(const tqkd_noise_model& m) {
  return {m.eff_A, m.eff_B, m.eff_E, m.noise2_A, m.noise2_B, m.noise2_E, m.transmittance};
}

}  // namespace

extern "C" {

const char* tqkd_version(void) { return TQKD_VERSION_STRING; }

const char* tqkd_last_error(void) { return g_last_error.c_str(); }

const char* tqkd_status_string(tqkd_status status) {
  switch (status) {
    case TQKD_OK: return "ok";
    case TQKD_ERR_DOMAIN: return "domain error";
    case TQKD_ERR_INDEX: return "index error";
    case TQKD_ERR_UNPHYSICAL: return "unphysical state";
    case TQKD_ERR_NULL: return "null argument";
    case TQKD_ERR_BUFFER: return "buffer too small";
    case TQKD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tqkd_status tqkd_gaussian_thermal(double mean_photon, tqkd_gaussian_state** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new tqkd_gaussian_state{gaussian::thermal_covariance(mean_photon)}; });
}

tqkd_status tqkd_gaussian_from_entries(const double* entries, size_t dim,
                                       tqkd_gaussian_state** out) {
  if (!entries) return null_arg("entries");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = entries[i * n + j];
    }
    *out = new tqkd_gaussian_state{gaussian::CovarianceMatrix(std::move(m))};
  });
}

void tqkd_gaussian_free(tqkd_gaussian_state* state) { delete state; }

tqkd_status tqkd_gaussian_modes(const tqkd_gaussian_state* state, size_t* out) {
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  *out = state->gamma.n_modes();
  return TQKD_OK;
}

tqkd_status tqkd_gaussian_entries(const tqkd_gaussian_state* state, double* out,
                                  size_t capacity) {
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  const auto& m = state->gamma.entries();
  const auto need = static_cast<std::size_t>(m.size());
  if (capacity < need) return small_buffer(need, capacity);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
  }
  return TQKD_OK;
}

tqkd_status tqkd_gaussian_append_vacuum(tqkd_gaussian_state* state, size_t k) {
  if (!state) return null_arg("state");
  return guarded([&] { state->gamma = gaussian::append_vacuum(state->gamma, k); });
}

tqkd_status tqkd_gaussian_beam_splitter(tqkd_gaussian_state* state, size_t mode_a, size_t mode_b,
                                        double tau, double mu) {
  if (!state) return null_arg("state");
  return guarded([&] {
    const auto bs = gaussian::BeamSplitter::from_amplitudes(tau, mu);
    state->gamma = gaussian::apply_beam_splitter(state->gamma, mode_a, mode_b, bs);
  });
}

tqkd_status tqkd_gaussian_reduce(const tqkd_gaussian_state* state, const size_t* modes,
                                 size_t count, tqkd_gaussian_state** out) {
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new tqkd_gaussian_state{gaussian::reduce(state->gamma, partition(modes, count))};
  });
}

tqkd_status tqkd_gaussian_spectrum(const tqkd_gaussian_state* state, double* out,
                                   size_t capacity) {
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  if (capacity < state->gamma.n_modes()) return small_buffer(state->gamma.n_modes(), capacity);
  return guarded([&] {
    const auto spec = gaussian::symplectic_spectrum(state->gamma);
    std::copy(spec.values.begin(), spec.values.end(), out);
  });
}

tqkd_status tqkd_gaussian_entropy(const tqkd_gaussian_state* state, double* out) {
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  return guarded([&] { *out = gaussian::von_neumann_entropy(state->gamma); });
}

tqkd_status tqkd_gaussian_mutual_information(const tqkd_gaussian_state* state,
                                             const size_t* modes_a, size_t count_a,
                                             const size_t* modes_b, size_t count_b,
                                             double* out) {
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = gaussian::mutual_information(state->gamma, partition(modes_a, count_a),
                                        partition(modes_b, count_b));
  });
}

tqkd_status tqkd_protocol_state(double mean_photon, double eve_t2, tqkd_gaussian_state** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto cfg = protocol::ProtocolConfig::from_power(mean_photon, eve_t2);
    *out = new tqkd_gaussian_state{protocol::build_final_state(cfg).gamma};
  });
}

tqkd_status tqkd_protocol_closed_form(double mean_photon, double eve_t2, double out[144]) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto cfg = protocol::ProtocolConfig::from_power(mean_photon, eve_t2);
    const auto b = protocol::closed_form_submatrices(cfg);
    Eigen::Matrix<double, 12, 12, Eigen::RowMajor> m;
    m.block<4, 4>(0, 0) = b.alice;
    m.block<4, 4>(4, 4) = b.bob;
    m.block<4, 4>(8, 8) = b.eve;
    m.block<4, 4>(0, 4) = b.c_ab;
    m.block<4, 4>(0, 8) = b.c_ae;
    m.block<4, 4>(4, 8) = b.c_be;
    m.block<4, 4>(4, 0) = b.c_ab.transpose();
    m.block<4, 4>(8, 0) = b.c_ae.transpose();
    m.block<4, 4>(8, 4) = b.c_be.transpose();
    std::copy(m.data(), m.data() + 144, out);
  });
}

tqkd_status tqkd_protocol_summary(double mean_photon, double eve_t2, tqkd_info_summary* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto cfg = protocol::ProtocolConfig::from_power(mean_photon, eve_t2);
    *out = to_c(protocol::protocol_mutual_informations(cfg));
  });
}

tqkd_status tqkd_ensemble_run(const tqkd_run_params* params, tqkd_ensemble** out) {
  if (!params) return null_arg("params");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto cfg = protocol::ProtocolConfig::from_power(params->mean_photon, params->eve_t2);
    mc::MeasurementModel model;
    switch (params->model) {
      case TQKD_PHOTON_COUNT: model = mc::MeasurementModel::photon_count; break;
      case TQKD_HETERODYNE: model = mc::MeasurementModel::heterodyne; break;
      default: throw DomainError("unknown measurement model");
    }
    *out = new tqkd_ensemble{mc::run_protocol(cfg, static_cast<std::size_t>(params->trials),
                                              params->seed, model, params->threads)};
  });
}

void tqkd_ensemble_free(tqkd_ensemble* ensemble) { delete ensemble; }

tqkd_status tqkd_ensemble_trials(const tqkd_ensemble* ensemble, uint64_t* out) {
  if (!ensemble) return null_arg("ensemble");
  if (!out) return null_arg("out");
  *out = ensemble->ensemble.trials();
  return TQKD_OK;
}

tqkd_status tqkd_ensemble_values(const tqkd_ensemble* ensemble, tqkd_party party,
                                 const double** out) {
  if (!ensemble) return null_arg("ensemble");
  if (!out) return null_arg("out");
  return guarded([&] { *out = ensemble->ensemble.party(require_party(party)).z.data(); });
}

tqkd_status tqkd_ensemble_counts(const tqkd_ensemble* ensemble, tqkd_party party, int detector,
                                 const uint64_t** out) {
  if (!ensemble) return null_arg("ensemble");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& rec = ensemble->ensemble.party(require_party(party));
    if (detector == 1) {
      *out = rec.detector1.data();
    } else if (detector == 2) {
      *out = rec.detector2.data();
    } else {
      throw IndexError("detector must be 1 or 2");
    }
  });
}

tqkd_status tqkd_ensemble_bits(const tqkd_ensemble* ensemble, tqkd_party party, uint8_t* bits,
                               double* threshold) {
  if (!ensemble) return null_arg("ensemble");
  if (!bits) return null_arg("bits");
  return guarded([&] {
    const auto b = mc::derive_bits(ensemble->ensemble.party(require_party(party)).z);
    std::copy(b.bits.begin(), b.bits.end(), bits);
    if (threshold) *threshold = b.threshold;
  });
}

tqkd_status tqkd_ensemble_summary(const tqkd_ensemble* ensemble, tqkd_info_summary* out) {
  if (!ensemble) return null_arg("ensemble");
  if (!out) return null_arg("out");
  return guarded([&] { *out = to_c(info::ensemble_summary(ensemble->ensemble)); });
}

tqkd_status tqkd_ensemble_bootstrap(const tqkd_ensemble* ensemble, size_t resamples,
                                    uint64_t seed, unsigned threads, tqkd_info_errors* out) {
  if (!ensemble) return null_arg("ensemble");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto e = info::bootstrap_errors(ensemble->ensemble, resamples, seed, threads);
    *out = {e.H_A, e.H_B, e.H_E, e.I_AB, e.I_AE, e.I_BE, e.I_AB_given_E, e.K_DR, e.K_RR};
  });
}

tqkd_status tqkd_binary_entropy(double p0, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = info::binary_entropy(p0); });
}

tqkd_status tqkd_derive_bits(const double* values, size_t n, uint8_t* bits, double* threshold) {
  if (n > 0 && !values) return null_arg("values");
  if (n > 0 && !bits) return null_arg("bits");
  return guarded([&] {
    const auto b = mc::derive_bits(std::span<const double>(values, n));
    std::copy(b.bits.begin(), b.bits.end(), bits);
    if (threshold) *threshold = b.threshold;
  });
}

tqkd_status tqkd_mutual_information_bits(const uint8_t* a, const uint8_t* b, size_t n,
                                         double* out) {
  if (!a || !b) return null_arg("bit string");
  if (!out) return null_arg("out");
  return guarded([&] { *out = info::mutual_information_bits({a, n}, {b, n}); });
}

tqkd_status tqkd_conditional_mutual_information(const uint8_t* a, const uint8_t* b,
                                                const uint8_t* e, size_t n, double* out) {
  if (!a || !b || !e) return null_arg("bit string");
  if (!out) return null_arg("out");
  return guarded([&] { *out = info::conditional_mutual_information({a, n}, {b, n}, {e, n}); });
}

tqkd_status tqkd_offset_correlation(const double* a, const double* b, size_t n,
                                    size_t max_offset, tqkd_offset_row* rows, size_t capacity) {
  if (!a || !b) return null_arg("stream");
  if (!rows) return null_arg("rows");
  const std::size_t need = 2 * max_offset + 1;
  if (capacity < need) return small_buffer(need, capacity);
  return guarded([&] {
    const auto table = info::offset_correlation({a, n}, {b, n}, max_offset);
    for (std::size_t i = 0; i < table.size(); ++i) {
      rows[i] = {static_cast<int64_t>(table[i].offset), table[i].r, table[i].degenerate ? 1 : 0};
    }
  });
}

tqkd_status tqkd_oracle_summary(double mean_photon, double eve_t2, size_t truncation,
                                tqkd_info_summary* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = to_c(info::exact_enumeration_oracle(mean_photon, eve_t2, truncation)); });
}

tqkd_noise_model tqkd_noise_model_default(void) {
  const auto m = uncertainty::NoiseModel::simplified();
  return {m.eff_A, m.eff_B, m.eff_E, m.noise2_A, m.noise2_B, m.noise2_E, m.transmittance};
}

tqkd_status tqkd_uncertainty_evaluate(const tqkd_noise_model* model, double tau, double variance,
                                      tqkd_uncertainty_result* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto r = uncertainty::evaluate(from_c(*model), tau, variance);
    *out = {r.delta_ab,     r.delta_be,    r.chi_ab.line, r.chi_ab.hom, r.chi_ab.total,
            r.chi_be.line,  r.chi_be.hom,  r.chi_be.total, r.I_AB,     r.I_BE};
  });
}

}  // extern "C"

/* C interface to the thermal-state QKD simulator.
 *
 * Every function returns a tqkd_status; on failure a human-readable message
 * is available from tqkd_last_error() on the calling thread until the next
 * call on that thread. Output arguments are left untouched on failure.
 * Handles are opaque, owned by the caller, and released with the matching
 * *_free function (which accepts NULL). A handle may be read from several
 * threads at once but must not be mutated concurrently.
 */
#ifndef TQKD_TQKD_H
#define TQKD_TQKD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TQKD_BUILDING_LIBRARY)
#    define TQKD_API __declspec(dllexport)
#  else
#    define TQKD_API __declspec(dllimport)
#  endif
#else
#  define TQKD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tqkd_status {
  TQKD_OK = 0,
  TQKD_ERR_DOMAIN = 1,       /* argument outside the operation's domain */
  TQKD_ERR_INDEX = 2,        /* mode index out of range */
  TQKD_ERR_UNPHYSICAL = 3,   /* symplectic eigenvalue below 1 */
  TQKD_ERR_NULL = 4,         /* required pointer argument was NULL */
  TQKD_ERR_BUFFER = 5,       /* caller buffer too small */
  TQKD_ERR_INTERNAL = 6
} tqkd_status;

typedef enum tqkd_flavor { TQKD_SHANNON = 0, TQKD_VON_NEUMANN = 1 } tqkd_flavor;
typedef enum tqkd_measurement { TQKD_PHOTON_COUNT = 0, TQKD_HETERODYNE = 1 } tqkd_measurement;
typedef enum tqkd_party { TQKD_ALICE = 0, TQKD_BOB = 1, TQKD_EVE = 2 } tqkd_party;

/* Entropies and mutual informations in bits. */
typedef struct tqkd_info_summary {
  double H_A, H_B, H_E;
  double I_AB, I_AE, I_BE;
  double I_AB_given_E;
  double K_DR, K_RR;
  double lower_bound, upper_bound;
  tqkd_flavor flavor;
} tqkd_info_summary;

/* One bootstrap standard deviation per quantity. */
typedef struct tqkd_info_errors {
  double H_A, H_B, H_E;
  double I_AB, I_AE, I_BE;
  double I_AB_given_E;
  double K_DR, K_RR;
} tqkd_info_errors;

typedef struct tqkd_run_params {
  double mean_photon;
  double eve_t2;            /* power transmittance of Eve's splitter */
  uint64_t trials;
  uint64_t seed;
  tqkd_measurement model;
  unsigned threads;         /* 0 = hardware concurrency */
} tqkd_run_params;

typedef struct tqkd_noise_model {
  double eff_A, eff_B, eff_E;
  double noise2_A, noise2_B, noise2_E;
  double transmittance;
} tqkd_noise_model;

typedef struct tqkd_uncertainty_result {
  double delta_ab, delta_be;
  double chi_ab_line, chi_ab_hom, chi_ab;
  double chi_be_line, chi_be_hom, chi_be;
  double I_AB, I_BE;
} tqkd_uncertainty_result;

typedef struct tqkd_offset_row {
  int64_t offset;
  double r;
  int degenerate;   /* nonzero when a window had zero variance (r = 0) */
} tqkd_offset_row;

typedef struct tqkd_gaussian_state tqkd_gaussian_state;
typedef struct tqkd_ensemble tqkd_ensemble;

TQKD_API const char* tqkd_version(void);
TQKD_API const char* tqkd_last_error(void);
TQKD_API const char* tqkd_status_string(tqkd_status status);

/* ---- Gaussian states ---------------------------------------------------- */

TQKD_API tqkd_status tqkd_gaussian_thermal(double mean_photon, tqkd_gaussian_state** out);
/* entries: row-major dim x dim, dim even, ordering (X1, P1, ..., XN, PN). */
TQKD_API tqkd_status tqkd_gaussian_from_entries(const double* entries, size_t dim,
                                                tqkd_gaussian_state** out);
TQKD_API void tqkd_gaussian_free(tqkd_gaussian_state* state);

TQKD_API tqkd_status tqkd_gaussian_modes(const tqkd_gaussian_state* state, size_t* out);
/* Copies the (2N)^2 entries row-major into out[0..capacity). */
TQKD_API tqkd_status tqkd_gaussian_entries(const tqkd_gaussian_state* state, double* out,
                                           size_t capacity);
TQKD_API tqkd_status tqkd_gaussian_append_vacuum(tqkd_gaussian_state* state, size_t k);
TQKD_API tqkd_status tqkd_gaussian_beam_splitter(tqkd_gaussian_state* state, size_t mode_a,
                                                 size_t mode_b, double tau, double mu);
TQKD_API tqkd_status tqkd_gaussian_reduce(const tqkd_gaussian_state* state, const size_t* modes,
                                          size_t count, tqkd_gaussian_state** out);
/* Writes N symplectic eigenvalues, descending. */
TQKD_API tqkd_status tqkd_gaussian_spectrum(const tqkd_gaussian_state* state, double* out,
                                            size_t capacity);
TQKD_API tqkd_status tqkd_gaussian_entropy(const tqkd_gaussian_state* state, double* out);
TQKD_API tqkd_status tqkd_gaussian_mutual_information(const tqkd_gaussian_state* state,
                                                      const size_t* modes_a, size_t count_a,
                                                      const size_t* modes_b, size_t count_b,
                                                      double* out);

/* ---- Protocol circuit ----------------------------------------------------- */

/* Six-mode final state, modes ordered (A1, A2, B1, B2, E1, E2). */
TQKD_API tqkd_status tqkd_protocol_state(double mean_photon, double eve_t2,
                                         tqkd_gaussian_state** out);
/* The same 12x12 matrix assembled from the closed-form blocks, row-major. */
TQKD_API tqkd_status tqkd_protocol_closed_form(double mean_photon, double eve_t2,
                                               double out[144]);
TQKD_API tqkd_status tqkd_protocol_summary(double mean_photon, double eve_t2,
                                           tqkd_info_summary* out);

/* ---- Monte Carlo ---------------------------------------------------------- */

TQKD_API tqkd_status tqkd_ensemble_run(const tqkd_run_params* params, tqkd_ensemble** out);
TQKD_API void tqkd_ensemble_free(tqkd_ensemble* ensemble);
TQKD_API tqkd_status tqkd_ensemble_trials(const tqkd_ensemble* ensemble, uint64_t* out);
/* Borrowed pointer to the party's z stream; valid while the handle lives. */
TQKD_API tqkd_status tqkd_ensemble_values(const tqkd_ensemble* ensemble, tqkd_party party,
                                          const double** out);
/* detector is 1 or 2. Borrowed pointer, as above. */
TQKD_API tqkd_status tqkd_ensemble_counts(const tqkd_ensemble* ensemble, tqkd_party party,
                                          int detector, const uint64_t** out);
/* Median-thresholded bits of the party's z stream into bits[0..trials). */
TQKD_API tqkd_status tqkd_ensemble_bits(const tqkd_ensemble* ensemble, tqkd_party party,
                                        uint8_t* bits, double* threshold);
TQKD_API tqkd_status tqkd_ensemble_summary(const tqkd_ensemble* ensemble,
                                           tqkd_info_summary* out);
TQKD_API tqkd_status tqkd_ensemble_bootstrap(const tqkd_ensemble* ensemble, size_t resamples,
                                             uint64_t seed, unsigned threads,
                                             tqkd_info_errors* out);

/* ---- Information measures ------------------------------------------------- */

TQKD_API tqkd_status tqkd_binary_entropy(double p0, double* out);
TQKD_API tqkd_status tqkd_derive_bits(const double* values, size_t n, uint8_t* bits,
                                      double* threshold);
TQKD_API tqkd_status tqkd_mutual_information_bits(const uint8_t* a, const uint8_t* b, size_t n,
                                                  double* out);
TQKD_API tqkd_status tqkd_conditional_mutual_information(const uint8_t* a, const uint8_t* b,
                                                         const uint8_t* e, size_t n,
                                                         double* out);
/* rows must hold 2 * max_offset + 1 entries, ordered by offset. */
TQKD_API tqkd_status tqkd_offset_correlation(const double* a, const double* b, size_t n,
                                             size_t max_offset, tqkd_offset_row* rows,
                                             size_t capacity);
TQKD_API tqkd_status tqkd_oracle_summary(double mean_photon, double eve_t2, size_t truncation,
                                         tqkd_info_summary* out);

/* ---- Measurement-uncertainty analysis ------------------------------------ */

TQKD_API tqkd_noise_model tqkd_noise_model_default(void);
TQKD_API tqkd_status tqkd_uncertainty_evaluate(const tqkd_noise_model* model, double tau,
                                               double variance, tqkd_uncertainty_result* out);

#ifdef __cplusplus
}
#endif

#endif /* TQKD_TQKD_H */

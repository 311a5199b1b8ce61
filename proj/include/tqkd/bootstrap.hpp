#pragma once

// Shannon summaries of simulated ensembles and their bootstrap error bars.

#include <cstddef>
#include <cstdint>

#include "tqkd/infotheory.hpp"
#include "tqkd/montecarlo.hpp"

namespace tqkd::info {

/// One standard deviation per InfoSummary quantity.
struct InfoErrors {
  double H_A = 0.0;
  double H_B = 0.0;
  double H_E = 0.0;
  double I_AB = 0.0;
  double I_AE = 0.0;
  double I_BE = 0.0;
  double I_AB_given_E = 0.0;
  double K_DR = 0.0;
  double K_RR = 0.0;
};

inline constexpr std::size_t kDefaultResamples = 100;

/// Median-thresholds each party's z stream and summarises the three strings.
InfoSummary ensemble_summary(const mc::TrialEnsemble& ens);

/// Nonparametric bootstrap over trials: each resample draws trials with
/// replacement, re-derives all three medians and bit strings, and recomputes
/// the summary. Returns the sample standard deviation over resamples.
/// Resample r draws only from CounterRng::substream(seed, r), so the result
/// does not depend on `threads` (0 = hardware concurrency).
InfoErrors bootstrap_errors(const mc::TrialEnsemble& ens, std::size_t resamples,
                            std::uint64_t seed, unsigned threads = 1);

}  // namespace tqkd::info

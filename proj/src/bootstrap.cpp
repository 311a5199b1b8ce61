#include "tqkd/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "tqkd/errors.hpp"

namespace tqkd::info {

namespace {

InfoSummary summary_of_streams(std::span<const double> a, std::span<const double> b,
                               std::span<const double> e) {
  const auto ba = mc::derive_bits(a);
  const auto bb = mc::derive_bits(b);
  const auto be = mc::derive_bits(e);
  return shannon_summary(ba.bits, bb.bits, be.bits);
}

InfoSummary resample_summary(const mc::TrialEnsemble& ens, std::uint64_t seed, std::size_t r) {
  const std::size_t n = ens.trials();
  mc::CounterRng rng = mc::CounterRng::substream(seed, r);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> a(n), b(n), e(n);
  const auto& za = ens.party(mc::Party::alice).z;
  const auto& zb = ens.party(mc::Party::bob).z;
  const auto& ze = ens.party(mc::Party::eve).z;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = pick(rng);
    a[i] = za[j];
    b[i] = zb[j];
    e[i] = ze[j];
  }
  return summary_of_streams(a, b, e);
}

double sample_sd(const std::vector<InfoSummary>& xs, double InfoSummary::*field) {
  double mean = 0.0;
  for (const auto& x : xs) mean += x.*field;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (const auto& x : xs) ss += (x.*field - mean) * (x.*field - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

InfoSummary ensemble_summary(const mc::TrialEnsemble& ens) {
  if (ens.trials() == 0) throw DomainError("empty ensemble");
  return summary_of_streams(ens.party(mc::Party::alice).z, ens.party(mc::Party::bob).z,
                            ens.party(mc::Party::eve).z);
}

InfoErrors bootstrap_errors(const mc::TrialEnsemble& ens, std::size_t resamples,
                            std::uint64_t seed, unsigned threads) {
  if (resamples < 2) throw DomainError("bootstrap needs at least two resamples");
  if (ens.trials() == 0) throw DomainError("empty ensemble");

  std::vector<InfoSummary> results(resamples);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, resamples);
  if (workers <= 1) {
    for (std::size_t r = 0; r < resamples; ++r) results[r] = resample_summary(ens, seed, r);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < resamples; r += workers) {
          results[r] = resample_summary(ens, seed, r);
        }
      });
    }
  }

  InfoErrors err;
  err.H_A = sample_sd(results, &InfoSummary::H_A);
  err.H_B = sample_sd(results, &InfoSummary::H_B);
  err.H_E = sample_sd(results, &InfoSummary::H_E);
  err.I_AB = sample_sd(results, &InfoSummary::I_AB);
  err.I_AE = sample_sd(results, &InfoSummary::I_AE);
  err.I_BE = sample_sd(results, &InfoSummary::I_BE);
  err.I_AB_given_E = sample_sd(results, &InfoSummary::I_AB_given_E);
  err.K_DR = sample_sd(results, &InfoSummary::K_DR);
  err.K_RR = sample_sd(results, &InfoSummary::K_RR);
  return err;
}

}  // namespace tqkd::info

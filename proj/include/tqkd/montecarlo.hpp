#pragma once

// Monte Carlo simulation of the protocol on Fock states.
//
// Thermal light is a classical mixture of Fock states, so each trial draws a
// photon number from the thermal law and routes photons through the splitters
// one binomial split at a time.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "tqkd/protocol.hpp"

namespace tqkd::mc {

/// SplitMix64 as a UniformRandomBitGenerator. The state is a plain counter
/// advanced by a fixed odd increment, so a stream is fully determined by its
/// starting value and any trial can be replayed in isolation.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t state) : state_(state) {}

  /// Independent stream for (seed, index): trial t of a run, or resample r of
  /// a bootstrap.
  static CounterRng substream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Thermal source parametrised by its mean photon number. The photon-number
/// law is geometric, p_n = nbar^n / (nbar + 1)^(n + 1), with variance
/// nbar (nbar + 1).
struct ThermalSourceSpec {
  double mean_photon = 0.0;
  /// Smallest Fock index whose tail mass beyond it is below 1e-12.
  std::uint64_t truncation = 0;

  /// Throws DomainError on negative or non-finite mean.
  static ThermalSourceSpec make(double mean_photon);
};

template <class Rng>
std::uint64_t sample_thermal(const ThermalSourceSpec& src, Rng& rng) {
  if (src.mean_photon <= 0.0) return 0;
  // Failures before the first success with p = 1 / (nbar + 1).
  std::geometric_distribution<std::uint64_t> law(1.0 / (src.mean_photon + 1.0));
  return law(rng);
}

/// Binomial partition of n photons: (transmitted, reflected).
template <class Rng>
std::pair<std::uint64_t, std::uint64_t> split_fock(std::uint64_t n, double transmittance_power,
                                                   Rng& rng) {
  if (n == 0) return {0, 0};
  std::binomial_distribution<std::uint64_t> law(n, transmittance_power);
  const std::uint64_t t = law(rng);
  return {t, n - t};
}

enum class MeasurementModel { photon_count, heterodyne };
enum class Party : std::size_t { alice = 0, bob = 1, eve = 2 };
inline constexpr std::array<Party, 3> kParties{Party::alice, Party::bob, Party::eve};

/// One party's record: photon counts at the two detectors behind their 50:50
/// splitter and the scalar z derived from them for each trial.
struct PartyRecord {
  std::vector<std::uint64_t> detector1;
  std::vector<std::uint64_t> detector2;
  std::vector<double> z;
};

struct TrialEnsemble {
  protocol::ProtocolConfig config;
  MeasurementModel model = MeasurementModel::photon_count;
  std::uint64_t rng_seed = 0;
  std::array<PartyRecord, 3> parties;

  std::size_t trials() const { return parties[0].z.size(); }
  const PartyRecord& party(Party p) const { return parties[static_cast<std::size_t>(p)]; }
  PartyRecord& party(Party p) { return parties[static_cast<std::size_t>(p)]; }
};

/// Simulates `trials` independent rounds. Trial t draws only from
/// CounterRng::substream(seed, t), so the ensemble is bit-identical for any
/// `threads` value. threads == 0 means hardware concurrency.
///
/// photon_count: z = n1 + n2.
/// heterodyne: each detector holding Fock state k yields |alpha|^2 drawn from
/// Gamma(k + 1, 1) (the Husimi law of |k>) with a uniform phase; x is the real
/// part at detector 1, p the imaginary part at detector 2, z = sqrt(x^2 + p^2).
///
/// Throws DomainError when trials == 0 or the config is invalid.
TrialEnsemble run_protocol(const protocol::ProtocolConfig& cfg, std::size_t trials,
                           std::uint64_t seed,
                           MeasurementModel model = MeasurementModel::photon_count,
                           unsigned threads = 1);

struct BitString {
  std::vector<std::uint8_t> bits;
  double threshold = 0.0;
};

/// Sample median of `values`; for even length, the mean of the two central
/// order statistics. Throws DomainError on empty input.
double median(std::span<const double> values);

/// Bit i is 1 iff values[i] > median(values); ties map to 0.
BitString derive_bits(std::span<const double> values);

}  // namespace tqkd::mc

#include "tqkd/montecarlo.hpp"

#include <algorithm>
#include <numbers>
#include <thread>

#include "tqkd/errors.hpp"

namespace tqkd::mc {

namespace {

constexpr double kSourceTail = 1e-12;

// Husimi-law amplitude for a detector holding Fock state k.
template <class Rng>
std::pair<double, double> husimi_amplitude(std::uint64_t k, Rng& rng) {
  std::gamma_distribution<double> intensity(static_cast<double>(k) + 1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double r = std::sqrt(intensity(rng));
  const double phi = phase(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

void simulate_range(const protocol::ProtocolConfig& cfg, const ThermalSourceSpec& src,
                    MeasurementModel model, std::uint64_t seed, std::size_t begin,
                    std::size_t end, TrialEnsemble& out) {
  const double eve_t2 = cfg.eve_t2();
  for (std::size_t t = begin; t < end; ++t) {
    CounterRng rng = CounterRng::substream(seed, t);
    const std::uint64_t n = sample_thermal(src, rng);
    const auto [alice_in, channel] = split_fock(n, 0.5, rng);
    const auto [bob_in, eve_in] = split_fock(channel, eve_t2, rng);
    const std::array<std::uint64_t, 3> received{alice_in, bob_in, eve_in};

    for (Party party : kParties) {
      const auto [d1, d2] = split_fock(received[static_cast<std::size_t>(party)], 0.5, rng);
      PartyRecord& rec = out.party(party);
      rec.detector1[t] = d1;
      rec.detector2[t] = d2;
      if (model == MeasurementModel::photon_count) {
        rec.z[t] = static_cast<double>(d1 + d2);
      } else {
        const double x = husimi_amplitude(d1, rng).first;
        const double p = husimi_amplitude(d2, rng).second;
        rec.z[t] = std::sqrt(x * x + p * p);
      }
    }
  }
}

}  // namespace

CounterRng CounterRng::substream(std::uint64_t seed, std::uint64_t index) {
  return CounterRng(mix(seed ^ mix(index + 0x632BE59BD9B4E019ULL)));
}

ThermalSourceSpec ThermalSourceSpec::make(double mean_photon) {
  if (!(mean_photon >= 0.0) || !std::isfinite(mean_photon)) {
    throw DomainError("mean photon number must be finite and nonnegative");
  }
  ThermalSourceSpec src{mean_photon, 0};
  if (mean_photon > 0.0) {
    // P(n > N) = r^(N+1) with r = nbar / (nbar + 1).
    const double log_ratio = std::log(mean_photon) - std::log1p(mean_photon);
    const double needed = std::log(kSourceTail) / log_ratio - 1.0;
    src.truncation = static_cast<std::uint64_t>(std::max(0.0, std::ceil(needed)));
  }
  return src;
}

TrialEnsemble run_protocol(const protocol::ProtocolConfig& cfg, std::size_t trials,
                           std::uint64_t seed, MeasurementModel model, unsigned threads) {
  cfg.validate();
  if (trials == 0) throw DomainError("trials must be at least 1");
  const ThermalSourceSpec src = ThermalSourceSpec::make(cfg.mean_photon);

  TrialEnsemble ens;
  ens.config = cfg;
  ens.model = model;
  ens.rng_seed = seed;
  for (PartyRecord& rec : ens.parties) {
    rec.detector1.assign(trials, 0);
    rec.detector2.assign(trials, 0);
    rec.z.assign(trials, 0.0);
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, trials);
  if (workers <= 1) {
    simulate_range(cfg, src, model, seed, 0, trials, ens);
    return ens;
  }
  // Disjoint index ranges; each trial writes only its own slots.
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (trials + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(trials, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] { simulate_range(cfg, src, model, seed, begin, end, ens); });
  }
  pool.clear();
  return ens;
}

double median(std::span<const double> values) {
  if (values.empty()) throw DomainError("median of an empty sequence");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + (upper - lower) / 2.0;
}

BitString derive_bits(std::span<const double> values) {
  BitString out;
  out.threshold = median(values);
  out.bits.reserve(values.size());
  for (double v : values) out.bits.push_back(v > out.threshold ? 1 : 0);
  return out;
}

}  // namespace tqkd::mc

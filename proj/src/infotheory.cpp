#include "tqkd/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tqkd/errors.hpp"

namespace tqkd::info {

namespace {

constexpr double kTailLimit = 1e-9;
constexpr double kMedianPlateauTol = 1e-12;

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DomainError("bit strings differ in length (" + std::to_string(a) + " vs " +
                      std::to_string(b) + ")");
  }
}

double plogp_sum(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

// Joint entropy of the variables selected by `mask` from an 8-cell table
// indexed bit0 | bit1 << 1 | bit2 << 2.
double masked_entropy(const std::array<double, 8>& cells, unsigned mask) {
  std::array<double, 8> marginal{};
  for (unsigned cell = 0; cell < 8; ++cell) marginal[cell & mask] += cells[cell];
  return plogp_sum(marginal);
}

InfoSummary summary_from_cells(const std::array<double, 8>& cells) {
  constexpr unsigned A = 1, B = 2, E = 4;
  KeyRateInputs in;
  in.flavor = Flavor::shannon;
  in.H_A = masked_entropy(cells, A);
  in.H_B = masked_entropy(cells, B);
  in.H_E = masked_entropy(cells, E);
  const double h_ab = masked_entropy(cells, A | B);
  const double h_ae = masked_entropy(cells, A | E);
  const double h_be = masked_entropy(cells, B | E);
  const double h_abe = masked_entropy(cells, A | B | E);
  in.I_AB = std::max(in.H_A + in.H_B - h_ab, 0.0);
  in.I_AE = std::max(in.H_A + in.H_E - h_ae, 0.0);
  in.I_BE = std::max(in.H_B + in.H_E - h_be, 0.0);
  in.I_AB_given_E = std::max(h_ae + h_be - in.H_E - h_abe, 0.0);
  return key_rate_bounds(in);
}

std::array<double, 8> frequencies(const JointHistogram& h) {
  std::array<double, 8> cells{};
  const auto n = static_cast<double>(h.total());
  for (std::size_t i = 0; i < 8; ++i) cells[i] = static_cast<double>(h.counts()[i]) / n;
  return cells;
}

// Binomial pmf over k = 0..n. Symmetric in (k, p) <-> (n-k, 1-p) bit for bit,
// which keeps the oracle exactly exchange-symmetric at p = 1/2.
std::vector<double> binomial_pmf(std::size_t n, double p) {
  std::vector<double> pmf(n + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lfn = std::lgamma(static_cast<double>(n) + 1.0);
  for (std::size_t k = 0; k <= n; ++k) {
    const double lk = std::lgamma(static_cast<double>(k) + 1.0);
    const double lnk = std::lgamma(static_cast<double>(n - k) + 1.0);
    pmf[k] = std::exp(lfn - (lk + lnk) + (static_cast<double>(k) * lp +
                                          static_cast<double>(n - k) * lq));
  }
  return pmf;
}

}  // namespace

InfoSummary key_rate_bounds(const KeyRateInputs& in) {
  for (double v : {in.H_A, in.H_B, in.H_E, in.I_AB, in.I_AE, in.I_BE, in.I_AB_given_E}) {
    if (!std::isfinite(v)) throw DomainError("key-rate inputs must be finite");
  }
  InfoSummary s;
  s.flavor = in.flavor;
  s.H_A = in.H_A;
  s.H_B = in.H_B;
  s.H_E = in.H_E;
  s.I_AB = in.I_AB;
  s.I_AE = in.I_AE;
  s.I_BE = in.I_BE;
  s.I_AB_given_E = in.I_AB_given_E;
  s.K_DR = in.I_AB - in.I_AE;
  s.K_RR = in.I_AB - in.I_BE;
  s.lower_bound = std::max(s.K_DR, s.K_RR);
  s.upper_bound = std::min(in.I_AB, in.I_AB_given_E);
  return s;
}

double binary_entropy(double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("probability must lie in [0, 1]");
  const std::array<double, 2> p{p0, 1.0 - p0};
  return plogp_sum(p);
}

double entropy_of(std::span<const double> probabilities) { return plogp_sum(probabilities); }

JointHistogram JointHistogram::of(std::span<const std::span<const std::uint8_t>> strings) {
  if (strings.empty() || strings.size() > 3) {
    throw DomainError("joint histogram needs one to three bit strings");
  }
  const std::size_t n = strings.front().size();
  for (const auto& s : strings) require_same_length(n, s.size());
  if (n == 0) throw DomainError("bit strings must be nonempty");

  JointHistogram h;
  h.n_strings_ = strings.size();
  for (std::size_t i = 0; i < n; ++i) {
    unsigned cell = 0;
    for (std::size_t j = 0; j < strings.size(); ++j) {
      cell |= static_cast<unsigned>(strings[j][i] != 0) << j;
    }
    ++h.counts_[cell];
  }
  return h;
}

JointHistogram JointHistogram::of(std::span<const std::uint8_t> a) {
  const std::array<std::span<const std::uint8_t>, 1> s{a};
  return of(std::span<const std::span<const std::uint8_t>>(s));
}

JointHistogram JointHistogram::of(std::span<const std::uint8_t> a,
                                  std::span<const std::uint8_t> b) {
  const std::array<std::span<const std::uint8_t>, 2> s{a, b};
  return of(std::span<const std::span<const std::uint8_t>>(s));
}

JointHistogram JointHistogram::of(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                                  std::span<const std::uint8_t> c) {
  const std::array<std::span<const std::uint8_t>, 3> s{a, b, c};
  return of(std::span<const std::span<const std::uint8_t>>(s));
}

std::uint64_t JointHistogram::total() const {
  std::uint64_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

void JointHistogram::merge(const JointHistogram& other) {
  if (other.n_strings_ != n_strings_) throw DomainError("cannot merge histograms of different arity");
  for (std::size_t i = 0; i < 8; ++i) counts_[i] += other.counts_[i];
}

double JointHistogram::entropy(unsigned mask) const {
  if (total() == 0) throw DomainError("empty histogram");
  if (mask >= (1u << n_strings_)) throw DomainError("entropy mask selects a missing string");
  return masked_entropy(frequencies(*this), mask);
}

double mutual_information_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  const auto h = JointHistogram::of(a, b);
  return std::max(h.entropy(1) + h.entropy(2) - h.entropy(3), 0.0);
}

double conditional_mutual_information(std::span<const std::uint8_t> a,
                                      std::span<const std::uint8_t> b,
                                      std::span<const std::uint8_t> e) {
  const auto h = JointHistogram::of(a, b, e);
  return std::max(h.entropy(1 | 4) + h.entropy(2 | 4) - h.entropy(4) - h.entropy(7), 0.0);
}

InfoSummary shannon_summary(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                            std::span<const std::uint8_t> e) {
  return shannon_summary(JointHistogram::of(a, b, e));
}

InfoSummary shannon_summary(const JointHistogram& abe) {
  if (abe.n_strings() != 3) throw DomainError("shannon summary needs a three-string histogram");
  if (abe.total() == 0) throw DomainError("empty histogram");
  return summary_from_cells(frequencies(abe));
}

std::vector<OffsetCorrelation> offset_correlation(std::span<const double> a,
                                                  std::span<const double> b,
                                                  std::size_t max_offset) {
  if (a.size() != b.size()) throw DomainError("streams differ in length");
  if (a.size() <= max_offset) throw DomainError("streams must be longer than max_offset");

  const auto m = static_cast<std::ptrdiff_t>(max_offset);
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  std::vector<OffsetCorrelation> out;
  out.reserve(2 * max_offset + 1);
  for (std::ptrdiff_t k = -m; k <= m; ++k) {
    // Pairs (a[i], b[i + k]) for every i with both indices in range.
    const std::ptrdiff_t begin = std::max<std::ptrdiff_t>(0, -k);
    const std::ptrdiff_t end = std::min(n, n - k);
    const auto len = static_cast<double>(end - begin);
    if (end - begin < 2) {
      out.push_back({k, 0.0, true});
      continue;
    }
    double mean_a = 0.0, mean_b = 0.0;
    for (std::ptrdiff_t i = begin; i < end; ++i) {
      mean_a += a[static_cast<std::size_t>(i)];
      mean_b += b[static_cast<std::size_t>(i + k)];
    }
    mean_a /= len;
    mean_b /= len;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::ptrdiff_t i = begin; i < end; ++i) {
      const double da = a[static_cast<std::size_t>(i)] - mean_a;
      const double db = b[static_cast<std::size_t>(i + k)] - mean_b;
      sab += da * db;
      saa += da * da;
      sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) {
      out.push_back({k, 0.0, true});
    } else {
      out.push_back({k, sab / std::sqrt(saa * sbb), false});
    }
  }
  return out;
}

double thermal_tail_mass(double mean_photon, std::size_t truncation) {
  if (!(mean_photon >= 0.0) || !std::isfinite(mean_photon)) {
    throw DomainError("mean photon number must be finite and nonnegative");
  }
  if (mean_photon == 0.0) return 0.0;
  const double ratio = mean_photon / (mean_photon + 1.0);
  return std::pow(ratio, static_cast<double>(truncation) + 1.0);
}

double population_median(std::span<const double> pmf) {
  if (pmf.empty()) throw DomainError("empty distribution");
  double total = 0.0;
  for (double p : pmf) total += p;
  double cdf = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    cdf += pmf[k] / total;
    if (std::abs(cdf - 0.5) <= kMedianPlateauTol) {
      for (std::size_t j = k + 1; j < pmf.size(); ++j) {
        if (pmf[j] > 0.0) return 0.5 * (static_cast<double>(k) + static_cast<double>(j));
      }
      return static_cast<double>(k);
    }
    if (cdf > 0.5) return static_cast<double>(k);
  }
  return static_cast<double>(pmf.size() - 1);
}

InfoSummary exact_enumeration_oracle(double mean_photon, double eve_t2, std::size_t truncation) {
  if (!(eve_t2 >= 0.0 && eve_t2 <= 1.0)) throw DomainError("eve_t2 must lie in [0, 1]");
  if (truncation > kMaxOracleTruncation) {
    throw DomainError("truncation " + std::to_string(truncation) + " too large to enumerate");
  }
  if (thermal_tail_mass(mean_photon, truncation) > kTailLimit) {
    throw DomainError("truncation too small: thermal tail mass exceeds 1e-9");
  }

  const std::size_t nmax = truncation;
  const std::size_t dim = nmax + 1;
  // joint[(a * dim + b) * dim + e]; a + b + e = n <= nmax.
  std::vector<double> joint(dim * dim * dim, 0.0);
  const double ratio = mean_photon / (mean_photon + 1.0);
  double source_p = 1.0 / (mean_photon + 1.0);
  for (std::size_t n = 0; n <= nmax; ++n, source_p *= ratio) {
    const auto source_split = binomial_pmf(n, 0.5);
    for (std::size_t a = 0; a <= n; ++a) {
      const std::size_t channel = n - a;
      const double pa = source_p * source_split[a];
      const auto tap = binomial_pmf(channel, eve_t2);
      for (std::size_t b = 0; b <= channel; ++b) {
        joint[(a * dim + b) * dim + (channel - b)] += pa * tap[b];
      }
    }
  }

  std::vector<double> pa(dim, 0.0), pb(dim, 0.0), pe(dim, 0.0);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; a + b < dim; ++b) {
      for (std::size_t e = 0; a + b + e < dim; ++e) {
        const double p = joint[(a * dim + b) * dim + e];
        pa[a] += p;
        pb[b] += p;
        pe[e] += p;
      }
    }
  }
  const double ta = population_median(pa);
  const double tb = population_median(pb);
  const double te = population_median(pe);

  std::array<double, 8> cells{};
  double total = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; a + b < dim; ++b) {
      for (std::size_t e = 0; a + b + e < dim; ++e) {
        const double p = joint[(a * dim + b) * dim + e];
        const unsigned cell = static_cast<unsigned>(static_cast<double>(a) > ta) |
                              static_cast<unsigned>(static_cast<double>(b) > tb) << 1 |
                              static_cast<unsigned>(static_cast<double>(e) > te) << 2;
        cells[cell] += p;
        total += p;
      }
    }
  }
  for (double& c : cells) c /= total;
  return summary_from_cells(cells);
}

}  // namespace tqkd::info

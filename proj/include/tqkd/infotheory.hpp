#pragma once

// Classical information measures on binary strings and measurement streams.
//
// All entropies are in bits and use plug-in (maximum likelihood) estimates of
// the cell probabilities with no bias correction.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tqkd::info {

enum class Flavor { shannon, von_neumann };

/// Entropies, mutual informations and key-rate bounds for one configuration.
///
/// K_DR = I_AB - I_AE (direct reconciliation), K_RR = I_AB - I_BE (reverse
/// reconciliation). The secret key rate K satisfies
/// max(K_DR, K_RR) <= K <= min(I_AB, I_AB_given_E).
struct InfoSummary {
  double H_A = 0.0;
  double H_B = 0.0;
  double H_E = 0.0;
  double I_AB = 0.0;
  double I_AE = 0.0;
  double I_BE = 0.0;
  double I_AB_given_E = 0.0;
  double K_DR = 0.0;
  double K_RR = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  Flavor flavor = Flavor::shannon;
};

struct KeyRateInputs {
  double H_A = 0.0;
  double H_B = 0.0;
  double H_E = 0.0;
  double I_AB = 0.0;
  double I_AE = 0.0;
  double I_BE = 0.0;
  double I_AB_given_E = 0.0;
  Flavor flavor = Flavor::shannon;
};

/// Fills K_DR, K_RR and the bounds. Throws DomainError on non-finite input.
InfoSummary key_rate_bounds(const KeyRateInputs& in);

/// -p0 log2 p0 - (1-p0) log2 (1-p0), with 0 log 0 = 0.
double binary_entropy(double p0);

/// Shannon entropy in bits of a probability table; zero cells are skipped.
double entropy_of(std::span<const double> probabilities);

/// Counts over the joint outcomes of one to three equal-length bit strings.
/// Cell index is bit0 | bit1 << 1 | bit2 << 2.
class JointHistogram {
 public:
  /// Throws DomainError on an empty list, more than three strings, or
  /// mismatched lengths.
  static JointHistogram of(std::span<const std::span<const std::uint8_t>> strings);
  static JointHistogram of(std::span<const std::uint8_t> a);
  static JointHistogram of(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
  static JointHistogram of(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                           std::span<const std::uint8_t> c);

  std::size_t n_strings() const { return n_strings_; }
  std::uint64_t total() const;
  const std::array<std::uint64_t, 8>& counts() const { return counts_; }

  /// Adds another shard's counts; throws DomainError if arity differs.
  void merge(const JointHistogram& other);

  /// Plug-in joint entropy of the strings selected by `mask` (bit i selects
  /// string i).
  double entropy(unsigned mask) const;

 private:
  std::size_t n_strings_ = 0;
  std::array<std::uint64_t, 8> counts_{};
};

/// H(a) + H(b) - H(ab), clamped at zero. Throws DomainError on length
/// mismatch or empty input.
double mutual_information_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// H(ae) + H(be) - H(e) - H(abe), clamped at zero.
double conditional_mutual_information(std::span<const std::uint8_t> a,
                                      std::span<const std::uint8_t> b,
                                      std::span<const std::uint8_t> e);

/// Shannon-flavour summary of three bit strings (Alice, Bob, Eve).
InfoSummary shannon_summary(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                            std::span<const std::uint8_t> e);

/// Same, from an already accumulated three-string histogram.
InfoSummary shannon_summary(const JointHistogram& abe);

struct OffsetCorrelation {
  std::ptrdiff_t offset = 0;
  double r = 0.0;
  /// Set when either window had zero variance; r is then reported as 0.
  bool degenerate = false;
};

/// Pearson r of the overlapping windows a[i], b[i + k] for every k in
/// [-max_offset, max_offset]. Throws DomainError unless both streams have the
/// same length and that length exceeds max_offset.
std::vector<OffsetCorrelation> offset_correlation(std::span<const double> a,
                                                  std::span<const double> b,
                                                  std::size_t max_offset);

/// Probability mass beyond `truncation` for a thermal source of mean photon
/// number n, i.e. (n/(n+1))^(truncation+1).
double thermal_tail_mass(double mean_photon, std::size_t truncation);

/// Largest truncation the enumeration oracle accepts.
inline constexpr std::size_t kMaxOracleTruncation = 400;

/// Exact population Shannon summary of the photon-counting protocol.
///
/// Enumerates the joint law of Alice's, Bob's and Eve's photon counts
/// (geometric source, 50:50 source splitter, binomial tap with power
/// transmittance eve_t2) up to `truncation` source photons, thresholds each
/// marginal at its population median with the same strict ">" convention as
/// the sampler, and evaluates the entropies of the resulting 8-cell law.
///
/// Throws DomainError when the truncated tail exceeds 1e-9, when truncation
/// exceeds kMaxOracleTruncation, or for invalid parameters.
InfoSummary exact_enumeration_oracle(double mean_photon, double eve_t2, std::size_t truncation);

/// Population median of an integer-valued law given by its pmf over
/// 0..pmf.size()-1. When the CDF sits at exactly 1/2 (to 1e-12) on k the
/// median is the midpoint between k and the next support point, matching the
/// even-length sample convention.
double population_median(std::span<const double> pmf);

}  // namespace tqkd::info

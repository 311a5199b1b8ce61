#pragma once

// Zero-mean Gaussian states described by their quadrature covariance matrix.
//
// Quadratures are ordered (X1, P1, X2, P2, ..., XN, PN) and normalised so the
// vacuum has unit variance; a thermal mode with mean photon number n has
// variance V = 2n + 1. Means are identically zero for every state this
// library produces (thermal and vacuum inputs, passive beam splitters), so no
// displacement vector is stored.

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace tqkd::gaussian {

/// Tolerance on symplectic eigenvalues when judging physicality.
inline constexpr double kPhysicalTol = 1e-9;

class CovarianceMatrix {
 public:
  /// Validates symmetry (to 1e-12 relative), even dimension and a strictly
  /// positive diagonal. The stored matrix is exactly symmetric.
  explicit CovarianceMatrix(Eigen::MatrixXd entries);

  static CovarianceMatrix vacuum(std::size_t n_modes);

  std::size_t n_modes() const { return static_cast<std::size_t>(entries_.rows() / 2); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

  friend bool operator==(const CovarianceMatrix& a, const CovarianceMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Eigen::MatrixXd entries_;
};

/// Two-port passive splitter with amplitude transmittance tau and reflectance
/// mu. Acting on modes (a, b) it maps a -> tau a + mu b, b -> -mu a + tau b.
/// mu may be negative, giving the inverse splitter.
struct BeamSplitter {
  double tau;
  double mu;

  /// Throws DomainError unless tau in [0,1], mu in [-1,1], tau^2+mu^2 = 1.
  static BeamSplitter from_amplitudes(double tau, double mu);
  /// Amplitudes from a power transmittance t2 in [0,1]: tau = sqrt(t2).
  static BeamSplitter from_power_transmittance(double t2);
  static BeamSplitter balanced();
};

/// Strictly increasing list of mode indices selecting a subsystem.
class ModePartition {
 public:
  ModePartition(std::initializer_list<std::size_t> indices);
  explicit ModePartition(std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

  bool overlaps(const ModePartition& other) const;
  /// Sorted union; throws DomainError on overlap.
  static ModePartition disjoint_union(const ModePartition& a, const ModePartition& b);

 private:
  std::vector<std::size_t> indices_;
};

/// Symplectic eigenvalues, descending.
struct SymplecticSpectrum {
  std::vector<double> values;
};

/// Single-mode thermal state diag(V, V), V = 2n + 1.
CovarianceMatrix thermal_covariance(double mean_photon);

/// Block-diagonal extension by k >= 1 vacuum modes.
CovarianceMatrix append_vacuum(const CovarianceMatrix& gamma, std::size_t k);

CovarianceMatrix apply_beam_splitter(const CovarianceMatrix& gamma, std::size_t mode_a,
                                     std::size_t mode_b, const BeamSplitter& bs);

/// Principal submatrix on the quadratures of the selected modes.
CovarianceMatrix reduce(const CovarianceMatrix& gamma, const ModePartition& part);

/// Moduli of the eigenvalues of Omega * gamma, one per conjugate pair.
///
/// Positive-definite input goes through a Cholesky factor L (gamma = L L^T):
/// L^T Omega L is real antisymmetric with the same spectrum, and its square
/// is symmetric, so a self-adjoint solver gives each lambda^2 twice. Anything
/// else falls back to a general dense eigensolver on Omega * gamma.
SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& gamma);
/// Raw-matrix overload; throws DomainError on non-symmetric input.
SymplecticSpectrum symplectic_spectrum(const Eigen::MatrixXd& gamma);

/// g(x) = (x+1) log2(x+1) - x log2 x, with 0 log 0 = 0. Entropy in bits of a
/// thermal mode with mean photon number x.
double bosonic_entropy(double x);

/// Sum of g((lambda_i - 1)/2) in bits. Throws UnphysicalStateError if any
/// lambda_i < 1 - kPhysicalTol.
double von_neumann_entropy(const CovarianceMatrix& gamma);

/// S(a) + S(b) - S(a u b), clamped at zero. Throws DomainError if the
/// partitions overlap and IndexError if a mode is out of range.
double mutual_information(const CovarianceMatrix& gamma, const ModePartition& a,
                          const ModePartition& b);

/// S(ac) + S(bc) - S(c) - S(abc), clamped at zero.
double conditional_mutual_information(const CovarianceMatrix& gamma, const ModePartition& a,
                                      const ModePartition& b, const ModePartition& c);

}  // namespace tqkd::gaussian

#include "tqkd/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tqkd/errors.hpp"

namespace tqkd::gaussian {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kSplitterTol = 1e-12;

Eigen::MatrixXd symplectic_form(Eigen::Index n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (Eigen::Index k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

bool is_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTol * scale;
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  // (x + y) / 2 is commutative in IEEE arithmetic, so this is exactly symmetric.
  Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  return s;
}

void check_mode(const CovarianceMatrix& gamma, std::size_t mode) {
  if (mode >= gamma.n_modes()) {
    throw IndexError("mode index " + std::to_string(mode) + " out of range for " +
                     std::to_string(gamma.n_modes()) + "-mode state");
  }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) {
  if (entries.rows() == 0 || entries.rows() % 2 != 0 || entries.rows() != entries.cols()) {
    throw DomainError("covariance matrix must be square with even, nonzero dimension");
  }
  if (!entries.allFinite()) throw DomainError("covariance matrix has non-finite entries");
  if (!is_symmetric(entries)) throw DomainError("covariance matrix is not symmetric");
  if ((entries.diagonal().array() <= 0.0).any()) {
    throw DomainError("covariance matrix diagonal must be strictly positive");
  }
  entries_ = symmetrized(entries);
}

CovarianceMatrix CovarianceMatrix::vacuum(std::size_t n_modes) {
  if (n_modes == 0) throw DomainError("vacuum state needs at least one mode");
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return CovarianceMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

BeamSplitter BeamSplitter::from_amplitudes(double tau, double mu) {
  if (!(tau >= 0.0 && tau <= 1.0) || !(mu >= -1.0 && mu <= 1.0)) {
    throw DomainError("beam splitter amplitudes out of range");
  }
  if (std::abs(tau * tau + mu * mu - 1.0) > kSplitterTol) {
    throw DomainError("beam splitter amplitudes must satisfy tau^2 + mu^2 = 1");
  }
  return {tau, mu};
}

BeamSplitter BeamSplitter::from_power_transmittance(double t2) {
  if (!(t2 >= 0.0 && t2 <= 1.0)) throw DomainError("power transmittance must lie in [0, 1]");
  return {std::sqrt(t2), std::sqrt(1.0 - t2)};
}

BeamSplitter BeamSplitter::balanced() {
  const double s = std::sqrt(0.5);
  return {s, s};
}

ModePartition::ModePartition(std::initializer_list<std::size_t> indices)
    : ModePartition(std::vector<std::size_t>(indices)) {}

ModePartition::ModePartition(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw DomainError("mode partition must not be empty");
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) {
      throw DomainError("mode partition indices must be strictly increasing");
    }
  }
}

bool ModePartition::overlaps(const ModePartition& other) const {
  std::vector<std::size_t> common;
  std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(),
                        other.indices_.end(), std::back_inserter(common));
  return !common.empty();
}

ModePartition ModePartition::disjoint_union(const ModePartition& a, const ModePartition& b) {
  if (a.overlaps(b)) throw DomainError("mode partitions overlap");
  std::vector<std::size_t> merged;
  std::merge(a.indices_.begin(), a.indices_.end(), b.indices_.begin(), b.indices_.end(),
             std::back_inserter(merged));
  return ModePartition(std::move(merged));
}

CovarianceMatrix thermal_covariance(double mean_photon) {
  if (!(mean_photon >= 0.0) || !std::isfinite(mean_photon)) {
    throw DomainError("mean photon number must be finite and nonnegative");
  }
  const double v = 2.0 * mean_photon + 1.0;
  return CovarianceMatrix(Eigen::Vector2d(v, v).asDiagonal().toDenseMatrix());
}

CovarianceMatrix append_vacuum(const CovarianceMatrix& gamma, std::size_t k) {
  if (k == 0) throw DomainError("append_vacuum requires k >= 1");
  const Eigen::Index old_dim = gamma.entries().rows();
  const Eigen::Index dim = old_dim + static_cast<Eigen::Index>(2 * k);
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(dim, dim);
  out.topLeftCorner(old_dim, old_dim) = gamma.entries();
  return CovarianceMatrix(std::move(out));
}

CovarianceMatrix apply_beam_splitter(const CovarianceMatrix& gamma, std::size_t mode_a,
                                     std::size_t mode_b, const BeamSplitter& bs) {
  check_mode(gamma, mode_a);
  check_mode(gamma, mode_b);
  if (mode_a == mode_b) throw IndexError("beam splitter needs two distinct modes");

  // S acts as [[tau, mu], [-mu, tau]] on each quadrature pair (X_a, X_b) and
  // (P_a, P_b); only those four rows and columns change.
  Eigen::MatrixXd g = gamma.entries();
  for (Eigen::Index q = 0; q < 2; ++q) {
    const auto ra = static_cast<Eigen::Index>(2 * mode_a) + q;
    const auto rb = static_cast<Eigen::Index>(2 * mode_b) + q;
    const Eigen::RowVectorXd row_a = g.row(ra);
    const Eigen::RowVectorXd row_b = g.row(rb);
    g.row(ra) = bs.tau * row_a + bs.mu * row_b;
    g.row(rb) = -bs.mu * row_a + bs.tau * row_b;
  }
  for (Eigen::Index q = 0; q < 2; ++q) {
    const auto ca = static_cast<Eigen::Index>(2 * mode_a) + q;
    const auto cb = static_cast<Eigen::Index>(2 * mode_b) + q;
    const Eigen::VectorXd col_a = g.col(ca);
    const Eigen::VectorXd col_b = g.col(cb);
    g.col(ca) = bs.tau * col_a + bs.mu * col_b;
    g.col(cb) = -bs.mu * col_a + bs.tau * col_b;
  }
  return CovarianceMatrix(symmetrized(g));
}

CovarianceMatrix reduce(const CovarianceMatrix& gamma, const ModePartition& part) {
  for (std::size_t m : part.indices()) check_mode(gamma, m);
  std::vector<Eigen::Index> rows;
  rows.reserve(2 * part.size());
  for (std::size_t m : part.indices()) {
    rows.push_back(static_cast<Eigen::Index>(2 * m));
    rows.push_back(static_cast<Eigen::Index>(2 * m + 1));
  }
  return CovarianceMatrix(gamma.entries()(rows, rows));
}

SymplecticSpectrum symplectic_spectrum(const Eigen::MatrixXd& gamma) {
  if (gamma.rows() == 0 || gamma.rows() % 2 != 0 || !is_symmetric(gamma)) {
    throw DomainError("symplectic spectrum needs a symmetric matrix of even dimension");
  }
  const Eigen::Index n = gamma.rows() / 2;
  const Eigen::MatrixXd omega = symplectic_form(n);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));

  const Eigen::LLT<Eigen::MatrixXd> chol(symmetrized(gamma));
  if (chol.info() == Eigen::Success) {
    const Eigen::MatrixXd l = chol.matrixL();
    const Eigen::MatrixXd k = l.transpose() * omega * l;
    const Eigen::MatrixXd k2 = symmetrized(k.transpose() * k);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k2, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& sq = eig.eigenvalues();  // ascending, each value twice
    for (Eigen::Index i = 0; i < n; ++i) {
      const double pair = 0.5 * (sq(2 * i) + sq(2 * i + 1));
      values.push_back(std::sqrt(std::max(pair, 0.0)));
    }
  } else {
    const Eigen::EigenSolver<Eigen::MatrixXd> eig(omega * gamma, false);
    std::vector<double> moduli;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
      moduli.push_back(std::abs(eig.eigenvalues()(i)));
    }
    std::sort(moduli.begin(), moduli.end());
    for (Eigen::Index i = 0; i < n; ++i) {
      values.push_back(0.5 * (moduli[2 * i] + moduli[2 * i + 1]));
    }
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return {std::move(values)};
}

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& gamma) {
  return symplectic_spectrum(gamma.entries());
}

double bosonic_entropy(double x) {
  if (x <= 0.0) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

double von_neumann_entropy(const CovarianceMatrix& gamma) {
  double s = 0.0;
  for (double lambda : symplectic_spectrum(gamma).values) {
    if (lambda < 1.0 - kPhysicalTol) {
      throw UnphysicalStateError("symplectic eigenvalue " + std::to_string(lambda) +
                                 " below 1 violates the uncertainty principle");
    }
    if (lambda - 1.0 <= kPhysicalTol) continue;
    s += bosonic_entropy((std::max(lambda, 1.0) - 1.0) / 2.0);
  }
  return s;
}

double mutual_information(const CovarianceMatrix& gamma, const ModePartition& a,
                          const ModePartition& b) {
  const ModePartition ab = ModePartition::disjoint_union(a, b);
  const double mi = von_neumann_entropy(reduce(gamma, a)) + von_neumann_entropy(reduce(gamma, b)) -
                    von_neumann_entropy(reduce(gamma, ab));
  return std::max(mi, 0.0);
}

double conditional_mutual_information(const CovarianceMatrix& gamma, const ModePartition& a,
                                      const ModePartition& b, const ModePartition& c) {
  const ModePartition ac = ModePartition::disjoint_union(a, c);
  const ModePartition bc = ModePartition::disjoint_union(b, c);
  const ModePartition abc = ModePartition::disjoint_union(a, bc);
  const double cmi = von_neumann_entropy(reduce(gamma, ac)) +
                     von_neumann_entropy(reduce(gamma, bc)) - von_neumann_entropy(reduce(gamma, c)) -
                     von_neumann_entropy(reduce(gamma, abc));
  return std::max(cmi, 0.0);
}

}  // namespace tqkd::gaussian

#include "ghzgm/quantum_core.hpp"

#include "ghzgm/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ghzgm {

namespace {

// Relative cutoff below which eigenvalues of a PSD matrix are treated as zero
// before taking square roots.
constexpr double kSqrtCutoff = 64.0 * 2.220446049250313e-16;

}  // namespace

int qubits_for_dimension(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if (n > kMaxQubits) throw std::invalid_argument("more than 12 qubits are not supported");
  return n;
}

PureState PureState::from_amplitudes(CVector amplitudes) {
  const int n = qubits_for_dimension(static_cast<std::size_t>(amplitudes.size()));
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state vector is not normalized (norm " + std::to_string(norm) + ")");
  }
  return PureState(std::move(amplitudes), n);
}

PureState PureState::normalized(CVector amplitudes) {
  const int n = qubits_for_dimension(static_cast<std::size_t>(amplitudes.size()));
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("cannot normalize a zero vector");
  amplitudes /= norm;
  return PureState(std::move(amplitudes), n);
}

PureState PureState::basis(int n_qubits, std::size_t index) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) throw std::invalid_argument("basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v), n_qubits);
}

DensityMatrix DensityMatrix::from_matrix(CMatrix entries) {
  if (entries.rows() != entries.cols()) throw std::invalid_argument("density matrix must be square");
  const int n = qubits_for_dimension(static_cast<std::size_t>(entries.rows()));
  const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTolerance) {
    throw std::invalid_argument("matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = entries.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw std::invalid_argument("trace is not 1 (" + std::to_string(tr.real()) + ")");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(entries, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw std::invalid_argument("matrix is not positive semidefinite");
  }
  return DensityMatrix(std::move(entries), n);
}

DensityMatrix DensityMatrix::projector(const PureState& psi) {
  const CVector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint(), psi.n_qubits());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  const auto dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim), n_qubits);
}

Decomposition Decomposition::from_elements(std::vector<Element> elements) {
  if (elements.empty()) throw std::invalid_argument("decomposition has no elements (weights sum to 0)");
  const std::size_t dim = elements.front().state.dim();
  double total = 0.0;
  for (const auto& e : elements) {
    if (e.state.dim() != dim) throw std::invalid_argument("decomposition states differ in dimension");
    if (!(e.weight >= 0.0)) throw std::invalid_argument("decomposition weight is negative");
    total += e.weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw std::invalid_argument("decomposition weights sum to " + std::to_string(total));
  }
  return Decomposition(std::move(elements));
}

PureState tensor_product(std::span<const PureState> factors) {
  if (factors.empty()) throw std::invalid_argument("tensor_product of an empty list");
  int n = 0;
  for (const auto& f : factors) n += f.n_qubits();
  if (n > kMaxQubits) throw std::invalid_argument("tensor product exceeds 12 qubits");

  CVector out = factors.front().amplitudes();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const CVector& b = factors[i].amplitudes();
    CVector next(out.size() * b.size());
    for (Eigen::Index r = 0; r < out.size(); ++r) {
      next.segment(r * b.size(), b.size()) = out(r) * b;
    }
    out = std::move(next);
  }
  return PureState::normalized(std::move(out));
}

std::vector<PureState> ghz_basis(int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("GHZ basis needs at least 2 qubits");
  if (n_qubits > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t mask = dim - 1;
  const double s = 1.0 / std::sqrt(2.0);

  std::vector<PureState> basis;
  basis.reserve(dim);
  for (std::size_t x = 0; x < dim / 2; ++x) {
    for (const double sign : {1.0, -1.0}) {
      CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
      v(static_cast<Eigen::Index>(x)) = s;
      v(static_cast<Eigen::Index>(x ^ mask)) = sign * s;
      basis.push_back(PureState::from_amplitudes(std::move(v)));
    }
  }
  return basis;
}

PureState ghz_plus(int n_qubits) { return ghz_basis(n_qubits)[0]; }
PureState ghz_minus(int n_qubits) { return ghz_basis(n_qubits)[1]; }

DensityMatrix density_from_mixture(const Decomposition& dec) {
  const auto dim = static_cast<Eigen::Index>(dec.dim());
  CMatrix rho = CMatrix::Zero(dim, dim);
  for (const auto& e : dec.elements()) {
    const CVector& a = e.state.amplitudes();
    rho.noalias() += e.weight * (a * a.adjoint());
  }
  // Restore exact Hermiticity lost to rounding in the accumulation.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::from_matrix(std::move(rho));
}

CMatrix matrix_sqrt_psd(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_sqrt_psd needs a square matrix");
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-8) {
    throw DomainError("matrix_sqrt_psd: eigenvalue " + std::to_string(ev.minCoeff()) + " is not PSD roundoff");
  }
  const double cutoff = kSqrtCutoff * std::max(1.0, ev.maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) <= cutoff ? 0.0 : std::sqrt(ev(i));
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  const CMatrix s = matrix_sqrt_psd(rho.matrix());
  const CMatrix inner = s * sigma.matrix() * s;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = kSqrtCutoff * std::max(1.0, ev.maxCoeff());
  double tr = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cutoff) tr += std::sqrt(ev(i));
  }
  return std::clamp(tr * tr, 0.0, 1.0);
}

Complex overlap(const PureState& psi, const PureState& phi) {
  if (psi.dim() != phi.dim()) throw std::invalid_argument("overlap: dimension mismatch");
  return phi.amplitudes().dot(psi.amplitudes());
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("frobenius_distance: shape mismatch");
  return (a - b).norm();
}

CVector random_gaussian_vector(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

PureState random_pure_state(int n_qubits, Rng& rng) {
  return PureState::normalized(random_gaussian_vector(std::size_t{1} << n_qubits, rng));
}

CMatrix random_unitary(std::size_t dim, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix g(d, d);
  for (Eigen::Index c = 0; c < d; ++c) g.col(c) = random_gaussian_vector(dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

DensityMatrix random_density_matrix(int n_qubits, std::size_t rank, Rng& rng) {
  const auto dim = Eigen::Index{1} << n_qubits;
  if (rank < 1 || static_cast<Eigen::Index>(rank) > dim) throw std::invalid_argument("rank out of range");
  CMatrix g(dim, static_cast<Eigen::Index>(rank));
  for (Eigen::Index c = 0; c < g.cols(); ++c) g.col(c) = random_gaussian_vector(static_cast<std::size_t>(dim), rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::from_matrix(std::move(rho));
}

PureState random_product_state(int n_qubits, Rng& rng) {
  std::vector<PureState> qubits;
  qubits.reserve(static_cast<std::size_t>(n_qubits));
  for (int i = 0; i < n_qubits; ++i) qubits.push_back(random_pure_state(1, rng));
  return tensor_product(qubits);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace ghzgm

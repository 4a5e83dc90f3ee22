#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ghzgm {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

inline constexpr int kMaxQubits = 12;

/// Normalized state vector of n qubits in the computational basis.
/// Qubit 1 is the most significant bit of the basis index.
class PureState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Takes amplitudes as given; throws if the norm is not 1 within tolerance
  /// or the length is not a power of two.
  static PureState from_amplitudes(CVector amplitudes);
  /// Rescales to unit norm; throws on the zero vector.
  static PureState normalized(CVector amplitudes);
  static PureState basis(int n_qubits, std::size_t index);

  const CVector& amplitudes() const noexcept { return amplitudes_; }
  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  PureState(CVector amplitudes, int n_qubits)
      : amplitudes_(std::move(amplitudes)), n_qubits_(n_qubits) {}

  CVector amplitudes_;
  int n_qubits_;
};

/// Hermitian, positive semidefinite, unit-trace matrix on n qubits.
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kEigenvalueFloor = -1e-10;

  static DensityMatrix from_matrix(CMatrix entries);
  static DensityMatrix projector(const PureState& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  const CMatrix& matrix() const noexcept { return entries_; }
  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

 private:
  DensityMatrix(CMatrix entries, int n_qubits)
      : entries_(std::move(entries)), n_qubits_(n_qubits) {}

  CMatrix entries_;
  int n_qubits_;
};

/// Weighted pure-state ensemble. Weights are nonnegative and sum to one.
class Decomposition {
 public:
  struct Element {
    double weight;
    PureState state;
  };

  static constexpr double kWeightSumTolerance = 1e-12;

  static Decomposition from_elements(std::vector<Element> elements);

  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t dim() const noexcept { return elements_.front().state.dim(); }
  int n_qubits() const noexcept { return elements_.front().state.n_qubits(); }

 private:
  explicit Decomposition(std::vector<Element> elements) : elements_(std::move(elements)) {}

  std::vector<Element> elements_;
};

/// Returns log2(dim) or throws if dim is not a power of two >= 2.
int qubits_for_dimension(std::size_t dim);

PureState tensor_product(std::span<const PureState> factors);

/// GHZ basis on n >= 2 qubits: (|x> +/- |~x>)/sqrt(2) over bitstrings x with
/// leading bit 0, ascending in x, '+' before '-'. Entry 0 is GHZ+, entry 1 GHZ-.
std::vector<PureState> ghz_basis(int n_qubits);

/// Shorthands for the first two GHZ-basis vectors.
PureState ghz_plus(int n_qubits);
PureState ghz_minus(int n_qubits);

DensityMatrix density_from_mixture(const Decomposition& dec);

/// Hermitian PSD square root via eigendecomposition. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything below -1e-8 is rejected.
CMatrix matrix_sqrt_psd(const CMatrix& m);

/// F = [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// <phi|psi>, conjugate-linear in phi.
Complex overlap(const PureState& psi, const PureState& phi);

double frobenius_distance(const CMatrix& a, const CMatrix& b);

// Sampling helpers. Complex Gaussian vectors give Haar-distributed states.
PureState random_pure_state(int n_qubits, Rng& rng);
CVector random_gaussian_vector(std::size_t dim, Rng& rng);
/// Haar-random unitary of the given size (QR of a Ginibre matrix with phase fix).
CMatrix random_unitary(std::size_t dim, Rng& rng);
/// Random density matrix of the given rank (induced measure).
DensityMatrix random_density_matrix(int n_qubits, std::size_t rank, Rng& rng);
/// Product of Haar-random single-qubit states.
PureState random_product_state(int n_qubits, Rng& rng);

/// Deterministic per-task seed derivation (splitmix64 of base + index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace ghzgm

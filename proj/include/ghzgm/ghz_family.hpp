#pragma once

#include "ghzgm/quantum_core.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ghzgm {

/// A point (f+, f-) of the GHZ-symmetric triangle on n qubits.
class GhzParams {
 public:
  /// Slack allowed on the triangle constraints for values produced by
  /// floating-point arithmetic.
  static constexpr double kTriangleSlack = 1e-12;

  GhzParams(int n_qubits, double f_plus, double f_minus);

  int n_qubits() const noexcept { return n_qubits_; }
  double f_plus() const noexcept { return f_plus_; }
  double f_minus() const noexcept { return f_minus_; }

  /// Same point with f+ and f- exchanged.
  GhzParams swapped() const { return GhzParams(n_qubits_, f_minus_, f_plus_); }

 private:
  int n_qubits_;
  double f_plus_;
  double f_minus_;
};

/// k-separability class, 2 <= k. k = n is full separability, k = 2 biseparability.
class SeparabilityClass {
 public:
  explicit SeparabilityClass(int k);
  int k() const noexcept { return k_; }

  /// Throws std::invalid_argument unless k <= n_qubits.
  void check_against(int n_qubits) const;

 private:
  int k_;
};

struct Fidelities {
  double f_plus;
  double f_minus;
};

/// f+ |GHZ+><GHZ+| + f- |GHZ-><GHZ-| + (1 - f+ - f-) Pi / (2^n - 2).
DensityMatrix build_state(const GhzParams& params);

/// <GHZ+|rho|GHZ+> and <GHZ-|rho|GHZ->.
Fidelities extract_fidelities(const DensityMatrix& rho);

/// Projection onto the GHZ-symmetric family that keeps both GHZ fidelities.
DensityMatrix twirl(const DensityMatrix& rho);

/// Upper bound on f+ (given f-) for k-separable states:
/// [1 + (2^(k-1) - 2) f-] / 2^(k-1). For k = 2 this is the square bound 1/2.
double deltoid_bound(double other_fidelity, int k);

/// True iff (f+, f-) lies in the k-separability deltoid (square for k = 2),
/// boundary included.
bool k_sep_deltoid_contains(const GhzParams& params, const SeparabilityClass& cls);

/// Whether (alpha1^2, alpha2^2), the squared GHZ+/GHZ- overlaps of a pure
/// state, lie in the convex hull reachable by k-separable pure states.
bool product_coefficient_bounds(double alpha1_sq, double alpha2_sq, int k);

/// (|<GHZ+|phi>|^2, |<GHZ-|phi>|^2).
std::pair<double, double> ghz_coefficients_sq(const PureState& phi);

/// Squared GHZ coefficients of Haar-random product states (one Bloch-sphere
/// draw per qubit), seeded for reproducibility.
std::vector<std::pair<double, double>> sample_product_coefficients(int n_qubits, std::size_t samples,
                                                                   std::uint64_t seed);

}  // namespace ghzgm

#pragma once

#include "ghzgm/execution.hpp"
#include "ghzgm/ghz_family.hpp"
#include "ghzgm/oracle.hpp"
#include "ghzgm/quantum_core.hpp"

#include <array>
#include <vector>

namespace ghzgm {

/// Correlated z-rotation angles exp(i phi_j sigma_z) with phi1 + phi2 + phi3 = 0.
class PhaseTriple {
 public:
  static constexpr double kSumTolerance = 1e-12;

  PhaseTriple(double phi1, double phi2, double phi3);

  const std::array<double, 3>& angles() const noexcept { return angles_; }

 private:
  std::array<double, 3> angles_;
};

/// Phase triples generating the seven groups of the lower-cathetus decomposition.
const std::vector<PhaseTriple>& decomposition_group_phases();

/// Weight of each of the seven groups (each group holds four equally weighted
/// states). Frozen from the minimum-norm solution of the reconstruction system.
const std::array<double, 7>& decomposition_group_weights();

/// alpha (|000> + |111>) + beta (sum of the six other basis states) with
/// alpha = sqrt(f+/2), beta = sqrt((1 - f+)/6); f+ in [1/4, 3/4].
PureState build_psi1(double f_plus);

/// Correlated phase rotation of build_psi1(f_plus).
PureState build_xi(double f_plus, const PhaseTriple& phases);

/// [psi, (Z Z 1) psi, (Z 1 Z) psi, (1 Z Z) psi] for a three-qubit psi.
std::vector<PureState> sigma_z_symmetrize(const PureState& state);

/// 28-state decomposition of the three-qubit state (f+, 0), f+ in [1/4, 3/4].
/// Throws VerificationError if the mixture misses the target by more than 1e-10.
Decomposition build_optimal_decomposition(double f_plus);

/// (1 - p) x [28-state decomposition at f+ = 3/4] + p |GHZ+><GHZ+| with
/// p = 4 f+ - 3, for f+ in [3/4, 1]. Zero-weight parts are omitted.
Decomposition decomposition_high_fidelity(double f_plus);

/// Dispatches to the two constructions above for f+ in [1/4, 1].
Decomposition decompose_lower_cathetus(double f_plus);

/// Frobenius norm of the mixture minus target.
double verify_decomposition(const Decomposition& dec, const DensityMatrix& target);

/// Ensemble average of the pure-state geometric measure over dec.
double average_entanglement(const Decomposition& dec, const SeparabilityClass& cls, const OracleConfig& cfg = {},
                            Execution exec = Execution::parallel);

}  // namespace ghzgm

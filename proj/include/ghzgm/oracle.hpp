#pragma once

#include "ghzgm/execution.hpp"
#include "ghzgm/quantum_core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ghzgm {

/// Unlabeled set partition of the qubits {0, ..., n-1}. Groups are listed in
/// order of their smallest member; members ascend within a group.
struct Partition {
  std::vector<std::vector<int>> groups;
};

/// "{1}{2,3}" with 1-based qubit labels.
std::string to_string(const Partition& partition);

struct OracleConfig {
  int restarts = 50;
  int max_iterations = 500;
  double tolerance = 1e-12;
  std::uint64_t seed = 0;

  void validate() const;
};

/// All partitions of n qubits into exactly k nonempty groups (1 <= k <= n <= 8).
std::vector<Partition> set_partitions(int n, int k);

/// One see-saw run from given starting factors.
struct SeeSawRun {
  double overlap_sq = 0.0;
  std::vector<CVector> factors;
  /// Squared overlap at the start and after every sweep.
  std::vector<double> history;
  bool converged = false;
};

SeeSawRun see_saw(const PureState& psi, const Partition& partition, std::vector<CVector> initial_factors,
                  int max_iterations, double tolerance);

struct ClosestProductResult {
  double overlap_sq = 0.0;
  PureState state;
  int converged_runs = 0;
  /// Every run produced a non-decreasing overlap sequence.
  bool monotone = true;
};

/// Best grouped product state for a fixed partition over cfg.restarts
/// Haar-random starts. Throws ConvergenceError if no run converged.
ClosestProductResult closest_grouped_product_state(const PureState& psi, const Partition& partition,
                                                   const OracleConfig& cfg,
                                                   Execution exec = Execution::parallel);

/// 1 - max overlap^2 with k-separable pure states (n <= 6).
double pure_state_measure(const PureState& psi, int k, const OracleConfig& cfg,
                          Execution exec = Execution::parallel);

struct RoofSearchOptions {
  /// See-saw restarts per ensemble member.
  int inner_restarts = 8;
  /// Known decompositions of rho evaluated as additional candidates.
  std::vector<Decomposition> warm_starts;
};

/// Upper bound on the convex roof E_G^(k)(rho): minimum ensemble average over
/// the eigen-ensemble, the warm starts, and cfg.restarts ensembles obtained from
/// Haar-random isometries of size ensemble_size.
double convex_roof_upper_bound(const DensityMatrix& rho, int k, int ensemble_size, const OracleConfig& cfg,
                               const RoofSearchOptions& options = {}, Execution exec = Execution::parallel);

/// Ensemble average sum_i p_i E_G^(k)(psi_i) with the see-saw oracle.
double ensemble_average_measure(const Decomposition& dec, int k, const OracleConfig& cfg,
                                Execution exec = Execution::parallel);

/// Numerical sup over mu >= 0 of mu f - (mu - 1 + sqrt(1 + mu^2)) / 2 for
/// f in [1/2, 1]; checks the closed biseparable form independently.
double obs3_derivation_check(double f);

}  // namespace ghzgm

#include "ghzgm/decomposition.hpp"

#include "ghzgm/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ghzgm {

namespace {

constexpr double kReconstructionTolerance = 1e-10;

void require_range(double f_plus, double lo, double hi, const char* what) {
  if (!(f_plus >= lo && f_plus <= hi)) {
    throw std::invalid_argument(std::string(what) + ": f+ = " + std::to_string(f_plus) + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// Multiplies each amplitude by sign (-1)^(b_i + b_j) for the qubit pair (i, j).
PureState apply_zz(const PureState& state, int q1, int q2) {
  const int n = state.n_qubits();
  CVector v = state.amplitudes();
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    const auto bits = ((x >> (n - 1 - q1)) & 1) ^ ((x >> (n - 1 - q2)) & 1);
    if (bits) v(x) = -v(x);
  }
  return PureState::normalized(std::move(v));
}

}  // namespace

PhaseTriple::PhaseTriple(double phi1, double phi2, double phi3) : angles_{phi1, phi2, phi3} {
  if (std::abs(phi1 + phi2 + phi3) > kSumTolerance) {
    throw std::invalid_argument("phase triple must sum to zero");
  }
}

const std::vector<PhaseTriple>& decomposition_group_phases() {
  constexpr double q = std::numbers::pi / 4.0;
  static const std::vector<PhaseTriple> phases{
      {0.0, 0.0, 0.0},    {q, q, -2 * q},  {-q, -q, 2 * q}, {q, -2 * q, q},
      {-q, 2 * q, -q},    {-2 * q, q, q},  {2 * q, -q, -q},
  };
  return phases;
}

const std::array<double, 7>& decomposition_group_weights() {
  static const std::array<double, 7> weights{0.25, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125};
  return weights;
}

PureState build_psi1(double f_plus) {
  require_range(f_plus, 0.25, 0.75, "build_psi1");
  const double alpha = std::sqrt(f_plus / 2.0);
  const double beta = std::sqrt((1.0 - f_plus) / 6.0);
  CVector v = CVector::Constant(8, beta);
  v(0) = v(7) = alpha;
  return PureState::normalized(std::move(v));
}

PureState build_xi(double f_plus, const PhaseTriple& phases) {
  CVector v = build_psi1(f_plus).amplitudes();
  const auto& phi = phases.angles();
  for (Eigen::Index x = 0; x < 8; ++x) {
    double angle = 0.0;
    for (int q = 0; q < 3; ++q) angle += ((x >> (2 - q)) & 1) ? -phi[static_cast<std::size_t>(q)] : phi[static_cast<std::size_t>(q)];
    v(x) *= std::polar(1.0, angle);
  }
  return PureState::normalized(std::move(v));
}

std::vector<PureState> sigma_z_symmetrize(const PureState& state) {
  if (state.n_qubits() != 3) throw std::invalid_argument("sigma_z_symmetrize needs a three-qubit state");
  return {state, apply_zz(state, 0, 1), apply_zz(state, 0, 2), apply_zz(state, 1, 2)};
}

Decomposition build_optimal_decomposition(double f_plus) {
  require_range(f_plus, 0.25, 0.75, "build_optimal_decomposition");
  const auto& phases = decomposition_group_phases();
  const auto& weights = decomposition_group_weights();
  std::vector<Decomposition::Element> elements;
  elements.reserve(28);
  for (std::size_t g = 0; g < phases.size(); ++g) {
    for (auto& s : sigma_z_symmetrize(build_xi(f_plus, phases[g]))) {
      elements.push_back({weights[g] / 4.0, std::move(s)});
    }
  }
  Decomposition dec = Decomposition::from_elements(std::move(elements));
  const double residual = verify_decomposition(dec, build_state(GhzParams(3, f_plus, 0.0)));
  if (residual > kReconstructionTolerance) {
    throw VerificationError("28-state decomposition misses the target state", residual);
  }
  return dec;
}

Decomposition decomposition_high_fidelity(double f_plus) {
  require_range(f_plus, 0.75, 1.0, "decomposition_high_fidelity");
  const double p = 4.0 * f_plus - 3.0;
  std::vector<Decomposition::Element> elements;
  if (p < 1.0) {
    const Decomposition base = build_optimal_decomposition(0.75);
    for (const auto& e : base.elements()) elements.push_back({(1.0 - p) * e.weight, e.state});
  }
  if (p > 0.0) elements.push_back({p, ghz_plus(3)});
  Decomposition dec = Decomposition::from_elements(std::move(elements));
  const double residual = verify_decomposition(dec, build_state(GhzParams(3, f_plus, 0.0)));
  if (residual > kReconstructionTolerance) {
    throw VerificationError("high-fidelity decomposition misses the target state", residual);
  }
  return dec;
}

Decomposition decompose_lower_cathetus(double f_plus) {
  require_range(f_plus, 0.25, 1.0, "decompose_lower_cathetus");
  return f_plus <= 0.75 ? build_optimal_decomposition(f_plus) : decomposition_high_fidelity(f_plus);
}

double verify_decomposition(const Decomposition& dec, const DensityMatrix& target) {
  if (dec.dim() != target.dim()) throw std::invalid_argument("verify_decomposition: dimension mismatch");
  return frobenius_distance(density_from_mixture(dec).matrix(), target.matrix());
}

double average_entanglement(const Decomposition& dec, const SeparabilityClass& cls, const OracleConfig& cfg,
                            Execution exec) {
  cls.check_against(dec.n_qubits());
  return ensemble_average_measure(dec, cls.k(), cfg, exec);
}

}  // namespace ghzgm

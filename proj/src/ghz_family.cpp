#include "ghzgm/ghz_family.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ghzgm {

GhzParams::GhzParams(int n_qubits, double f_plus, double f_minus)
    : n_qubits_(n_qubits), f_plus_(f_plus), f_minus_(f_minus) {
  if (n_qubits < 2 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("n_qubits must be in [2, 12], got " + std::to_string(n_qubits));
  }
  if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) throw std::invalid_argument("fidelities must be finite");
  if (f_plus < -kTriangleSlack || f_minus < -kTriangleSlack || f_plus + f_minus > 1.0 + kTriangleSlack) {
    throw std::invalid_argument("(f+, f-) = (" + std::to_string(f_plus) + ", " + std::to_string(f_minus) +
                                ") is outside the triangle");
  }
  f_plus_ = std::max(f_plus_, 0.0);
  f_minus_ = std::max(f_minus_, 0.0);
}

SeparabilityClass::SeparabilityClass(int k) : k_(k) {
  if (k < 2) throw std::invalid_argument("separability class k must be >= 2, got " + std::to_string(k));
}

void SeparabilityClass::check_against(int n_qubits) const {
  if (k_ > n_qubits) {
    throw std::invalid_argument("separability class k=" + std::to_string(k_) + " exceeds n=" +
                                std::to_string(n_qubits));
  }
}

DensityMatrix build_state(const GhzParams& params) {
  const int n = params.n_qubits();
  const auto dim = Eigen::Index{1} << n;
  const double fp = params.f_plus();
  const double fm = params.f_minus();
  const double rest = std::max(0.0, 1.0 - fp - fm) / static_cast<double>(dim - 2);

  CMatrix rho = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 1; i + 1 < dim; ++i) rho(i, i) = rest;
  rho(0, 0) = rho(dim - 1, dim - 1) = 0.5 * (fp + fm);
  rho(0, dim - 1) = rho(dim - 1, 0) = 0.5 * (fp - fm);
  // Slack-admitted inputs can leave the trace off by ~1e-12; renormalize.
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(std::move(rho));
}

Fidelities extract_fidelities(const DensityMatrix& rho) {
  if (rho.dim() < 4) throw std::invalid_argument("extract_fidelities needs at least 2 qubits");
  const CMatrix& m = rho.matrix();
  const Eigen::Index last = m.rows() - 1;
  const double diag = 0.5 * (m(0, 0).real() + m(last, last).real());
  const double coherence = 0.5 * (m(0, last).real() + m(last, 0).real());
  return {diag + coherence, diag - coherence};
}

DensityMatrix twirl(const DensityMatrix& rho) {
  const Fidelities f = extract_fidelities(rho);
  double fp = std::max(f.f_plus, 0.0);
  double fm = std::max(f.f_minus, 0.0);
  if (fp + fm > 1.0) {
    const double s = fp + fm;
    fp /= s;
    fm /= s;
  }
  return build_state(GhzParams(rho.n_qubits(), fp, fm));
}

double deltoid_bound(double other_fidelity, int k) {
  if (k < 2) throw std::invalid_argument("deltoid_bound: k must be >= 2");
  const double scale = std::ldexp(1.0, k - 1);  // 2^(k-1)
  return (1.0 + (scale - 2.0) * other_fidelity) / scale;
}

namespace {

// Boundary points count as inside; the slack absorbs rounding in the bound.
constexpr double kDeltoidSlack = 1e-12;

bool inside_deltoid(double a, double b, int k) {
  return a <= deltoid_bound(b, k) + kDeltoidSlack && b <= deltoid_bound(a, k) + kDeltoidSlack;
}

}  // namespace

bool k_sep_deltoid_contains(const GhzParams& params, const SeparabilityClass& cls) {
  cls.check_against(params.n_qubits());
  return inside_deltoid(params.f_plus(), params.f_minus(), cls.k());
}

bool product_coefficient_bounds(double alpha1_sq, double alpha2_sq, int k) {
  if (k < 2) throw std::invalid_argument("product_coefficient_bounds: k must be >= 2");
  if (alpha1_sq < -kDeltoidSlack || alpha2_sq < -kDeltoidSlack || alpha1_sq + alpha2_sq > 1.0 + kDeltoidSlack) {
    throw std::invalid_argument("product_coefficient_bounds: coefficients out of range");
  }
  return inside_deltoid(alpha1_sq, alpha2_sq, k);
}

std::pair<double, double> ghz_coefficients_sq(const PureState& phi) {
  const CVector& a = phi.amplitudes();
  const Complex first = a(0);
  const Complex last = a(a.size() - 1);
  return {0.5 * std::norm(first + last), 0.5 * std::norm(first - last)};
}

std::vector<std::pair<double, double>> sample_product_coefficients(int n_qubits, std::size_t samples,
                                                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<double, double>> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) out.push_back(ghz_coefficients_sq(random_product_state(n_qubits, rng)));
  return out;
}

}  // namespace ghzgm

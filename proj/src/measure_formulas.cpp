#include "ghzgm/measure_formulas.hpp"

#include "ghzgm/errors.hpp"
#include "ghzgm/scalar_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ghzgm {

namespace {

// Distance kept from the pole of the f- term when f- > 0.
constexpr double kPoleMargin = 1e-9;

// Box for the (mu, nu) search of the Legendre route. nu has to reach far
// below zero because the optimal nu diverges as the optimum approaches mu_max.
constexpr double kLegendreMuUpper = 1e3;
constexpr double kLegendreNuLower = -1e8;
constexpr double kLegendreNuUpper = 2.0;

double witness_weight(int k) { return std::ldexp(1.0, 3 - k); }  // c = 2^(3-k)

void require_class(int k) {
  if (k < 2) throw std::invalid_argument("separability class k must be >= 2");
}

// Also maps -0.0 to +0.0 so formatted output never shows a signed zero.
double clamp_unit(double v) { return v > 0.0 ? std::min(v, 1.0) : 0.0; }

// Largest eigenvalue of [[mu + a, sqrt(a (1 - a))], [sqrt(a (1 - a)), 1 - a]].
double plus_corner_eigenvalue(double mu, double c) {
  return 0.5 * (mu + 1.0 + std::sqrt((mu - 1.0) * (mu - 1.0) + c * mu));
}

// Largest eigenvalue of [[mu + 1/2, 1/2], [1/2, nu + 1/2]], written so the
// large-|mu - nu| regime does not cancel.
double zero_corner_eigenvalue(double mu, double nu) {
  const double d = std::abs(mu - nu);
  const double hi = std::max(mu, nu);
  return 0.5 * (2.0 * hi + 1.0 + 1.0 / (std::sqrt(1.0 + d * d) + d));
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::closed_form: return "closed_form";
    case Method::obs1: return "obs1";
    case Method::obs2: return "obs2";
    case Method::obs3: return "obs3";
    case Method::obs4_fidelity: return "obs4_fidelity";
    case Method::legendre_2d: return "legendre_2d";
    case Method::oracle_upper_bound: return "oracle_upper_bound";
  }
  return "unknown";
}

double mu_max(int k) {
  require_class(k);
  if (k == 2) return std::numeric_limits<double>::infinity();
  return std::ldexp(1.0, k - 3) / (std::ldexp(1.0, k - 2) - 1.0);
}

double objective_obs1(double mu, double f_plus, double f_minus, int k) {
  require_class(k);
  if (f_plus < f_minus) throw std::invalid_argument("objective_obs1 requires f+ >= f-; swap the fidelities");
  const double upper = mu_max(k);
  if (!(mu >= 0.0) || mu > upper) {
    throw std::invalid_argument("objective_obs1: mu=" + std::to_string(mu) + " outside [0, mu_max]");
  }
  const double c = witness_weight(k);
  const double d = 2.0 - c;
  const double root_gamma = std::sqrt((mu - 1.0) * (mu - 1.0) + c * mu);
  double minus_term = 0.0;
  if (f_minus != 0.0) {
    const double denom = mu * d - 1.0;
    if (denom >= 0.0) throw DomainError("objective_obs1: pole at mu = mu_max with f- > 0");
    minus_term = f_minus * mu * d * (mu + root_gamma) / denom;
  }
  return 0.5 * (1.0 + mu * (2.0 * f_plus - 1.0) - root_gamma + minus_term);
}

double objective_obs1_derivative(double mu, double f_plus, double f_minus, int k) {
  require_class(k);
  const double c = witness_weight(k);
  const double d = 2.0 - c;
  const double root_gamma = std::sqrt((mu - 1.0) * (mu - 1.0) + c * mu);
  const double d_root_gamma = (2.0 * (mu - 1.0) + c) / (2.0 * root_gamma);
  double d_minus_term = 0.0;
  if (f_minus != 0.0) {
    const double num = mu * d * (mu + root_gamma);
    const double den = mu * d - 1.0;
    const double d_num = d * (mu + root_gamma) + mu * d * (1.0 + d_root_gamma);
    d_minus_term = f_minus * (d_num * den - num * d) / (den * den);
  }
  return 0.5 * ((2.0 * f_plus - 1.0) - d_root_gamma + d_minus_term);
}

double closed_form_hypotenuse(double f_plus) {
  if (!(f_plus >= 0.5 && f_plus <= 1.0)) {
    throw std::invalid_argument("closed_form_hypotenuse: f+ must be in [1/2, 1]");
  }
  const double t = 2.0 * f_plus - 1.0;
  return clamp_unit(0.5 * (1.0 - std::sqrt(1.0 - t * t)));
}

double closed_form_lower_cathetus(double f_plus) {
  if (!(f_plus >= 0.0 && f_plus <= 1.0)) {
    throw std::invalid_argument("closed_form_lower_cathetus: f+ must be in [0, 1]");
  }
  if (f_plus < 0.25) return 0.0;
  if (f_plus <= 0.75) {
    return clamp_unit(0.25 * (1.0 + 2.0 * f_plus - 2.0 * std::sqrt(3.0) * std::sqrt(f_plus * (1.0 - f_plus))));
  }
  return f_plus - 0.5;
}

double closed_form_biseparable(double f_plus, double f_minus) {
  const double f = std::max(f_plus, f_minus);
  if (f <= 0.5) return 0.0;
  return clamp_unit(0.5 - std::sqrt(f * (1.0 - f)));
}

MeasureResult eval_measure(const GhzParams& params, const SeparabilityClass& cls) {
  cls.check_against(params.n_qubits());
  const int k = cls.k();
  if (k == 2) {
    const double f = std::max(params.f_plus(), params.f_minus());
    const double value = closed_form_biseparable(params.f_plus(), params.f_minus());
    // Stationary multiplier of the biseparable Legendre optimization.
    const double t = 2.0 * f - 1.0;
    const double mu = value > 0.0 && t < 1.0 ? t / std::sqrt(1.0 - t * t)
                                             : (value > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return {value, mu, 0.0, Method::obs3};
  }

  const double fp = std::max(params.f_plus(), params.f_minus());
  const double fm = std::min(params.f_plus(), params.f_minus());
  const double upper = fm == 0.0 ? mu_max(k) : mu_max(k) - kPoleMargin;

  ScalarSearchOptions options;
  options.derivative = [=](double mu) { return objective_obs1_derivative(mu, fp, fm, k); };
  const ScalarMaximum best = maximize_scalar([=](double mu) { return objective_obs1(mu, fp, fm, k); }, 0.0,
                                             upper, options);
  return {clamp_unit(best.value), best.x, std::nullopt, k == 3 ? Method::obs1 : Method::obs2};
}

double legendre_transform(const LegendrePoint& point) {
  require_class(point.k);
  const double mu = point.mu;
  const double nu = point.nu;
  const double c = witness_weight(point.k);
  // Corners of the k-separable coefficient region (alpha1^2, alpha2^2):
  // |+>^k at (2^(1-k), 0) and its mirror, |0...0> at (1/2, 1/2), and the
  // origin (all weight outside the GHZ pair).
  const double plus_corner = std::max(plus_corner_eigenvalue(mu, c), nu);
  const double minus_corner = std::max(plus_corner_eigenvalue(nu, c), mu);
  const double zero_corner = std::max(zero_corner_eigenvalue(mu, nu), 0.0);
  const double origin = std::max({mu, nu, 1.0});
  return std::max({plus_corner, minus_corner, zero_corner, origin}) - 1.0;
}

double nu_boundary(double mu, int k) {
  require_class(k);
  if (!(mu >= 0.0) || mu >= mu_max(k)) {
    throw std::invalid_argument("nu_boundary: mu must be in [0, mu_max)");
  }
  const double c = witness_weight(k);
  const double d = 2.0 - c;
  const double root_gamma = std::sqrt((mu - 1.0) * (mu - 1.0) + c * mu);
  return mu * d * (mu + root_gamma) / (2.0 * (mu * d - 1.0));
}

MeasureResult measure_via_legendre_2d(const GhzParams& params, const SeparabilityClass& cls,
                                      int grid_resolution) {
  cls.check_against(params.n_qubits());
  if (grid_resolution < 100) throw std::invalid_argument("measure_via_legendre_2d: grid resolution must be >= 100");
  const int k = cls.k();
  // The transform is symmetric under mu <-> nu, so work with f+ >= f-.
  const double fp = std::max(params.f_plus(), params.f_minus());
  const double fm = std::min(params.f_plus(), params.f_minus());

  auto objective = [=](double mu, double nu) { return mu * fp + nu * fm - legendre_transform({mu, nu, k}); };
  // The objective is jointly concave, so the partial sup over nu is concave in mu.
  auto best_nu = [&](double mu) {
    return golden_section_maximize([&](double nu) { return objective(mu, nu); }, kLegendreNuLower,
                                   kLegendreNuUpper, 1e-10, 400);
  };

  ScalarSearchOptions options;
  options.prescan_points = grid_resolution;
  options.x_tolerance = 1e-12;
  // mu = s / (1 - s) keeps the pre-scan dense where the optimum usually sits.
  auto to_mu = [](double s) { return s / (1.0 - s); };
  const double s_upper = kLegendreMuUpper / (1.0 + kLegendreMuUpper);
  const ScalarMaximum outer =
      maximize_scalar([&](double s) { return best_nu(to_mu(s)).value; }, 0.0, s_upper, options);
  const double mu = to_mu(outer.x);
  const ScalarMaximum inner = best_nu(mu);
  return {clamp_unit(std::max(outer.value, inner.value)), mu, inner.x, Method::legendre_2d};
}

MeasureResult measure_via_fidelity_obs4(const GhzParams& params) {
  if (params.n_qubits() != 3) throw std::invalid_argument("measure_via_fidelity_obs4 is defined for 3 qubits only");
  const double fp = std::max(params.f_plus(), params.f_minus());
  const double fm = std::min(params.f_plus(), params.f_minus());
  if (k_sep_deltoid_contains(params, SeparabilityClass(3))) {
    throw DomainError("measure_via_fidelity_obs4: point is separable; the border formula does not apply");
  }
  const double rest = std::max(0.0, 1.0 - fp - fm);
  // Fidelity with the border state sigma(mu) = GHZ-symmetric point
  // ((1 + 2 mu)/4, mu); both are diagonal in the GHZ basis.
  auto fidelity = [=](double mu) {
    const double amp = std::sqrt(3.0) * std::sqrt(rest) * std::sqrt(std::max(0.0, 1.0 - 2.0 * mu)) +
                       2.0 * std::sqrt(fm) * std::sqrt(mu) + std::sqrt(fp) * std::sqrt(1.0 + 2.0 * mu);
    return 0.25 * amp * amp;
  };
  const ScalarMaximum best = maximize_scalar(fidelity, 0.0, 0.5);
  return {clamp_unit(1.0 - best.value), best.x, std::nullopt, Method::obs4_fidelity};
}

double bures_from_geometric(double geometric) { return 2.0 - 2.0 * std::sqrt(1.0 - clamp_unit(geometric)); }

double groverian_from_geometric(double geometric) { return std::sqrt(clamp_unit(geometric)); }

double bures_measure(const GhzParams& params, const SeparabilityClass& cls) {
  return bures_from_geometric(eval_measure(params, cls).value);
}

double groverian_measure(const GhzParams& params, const SeparabilityClass& cls) {
  return groverian_from_geometric(eval_measure(params, cls).value);
}

}  // namespace ghzgm

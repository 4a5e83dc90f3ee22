#pragma once

#include "ghzgm/ghz_family.hpp"

#include <optional>
#include <string_view>

namespace ghzgm {

enum class Method { closed_form, obs1, obs2, obs3, obs4_fidelity, legendre_2d, oracle_upper_bound };

std::string_view to_string(Method method);

/// A measure value together with the Legendre multipliers that attain it.
struct MeasureResult {
  double value = 0.0;
  double mu = 0.0;
  std::optional<double> nu;
  Method method = Method::closed_form;
};

/// Multipliers of the GHZ+ and GHZ- fidelity witnesses in the Legendre transform.
struct LegendrePoint {
  double mu;
  double nu;
  int k;
};

/// Upper end of the mu range for class k: 2^(k-3) / (2^(k-2) - 1).
/// Infinite for k = 2.
double mu_max(int k);

/// The one-parameter objective whose maximum over mu in [0, mu_max(k)] is
/// E_G^(k)(f+, f-). Requires f+ >= f-, mu in [0, mu_max(k)]; mu = mu_max(k)
/// is only allowed when f- = 0 (the f- term has a pole there).
///
/// The f- term is mu (2 - c)(mu + sqrt(gamma)) / (mu (2 - c) - 1), with
/// c = 2^(3-k) and gamma = (mu - 1)^2 + c mu. For k = 3 it reduces to
/// mu (mu + sqrt(1 - mu + mu^2)) / (mu - 1).
double objective_obs1(double mu, double f_plus, double f_minus, int k);
double objective_obs1_derivative(double mu, double f_plus, double f_minus, int k);

/// E_G^(k) of a GHZ-symmetric state. k = 2 uses the closed biseparable form,
/// k >= 3 maximizes objective_obs1 over mu.
MeasureResult eval_measure(const GhzParams& params, const SeparabilityClass& cls);

/// Three-qubit hypotenuse f+ + f- = 1 with f+ in [1/2, 1].
double closed_form_hypotenuse(double f_plus);

/// Three-qubit lower cathetus f- = 0; zero below f+ = 1/4.
double closed_form_lower_cathetus(double f_plus);

/// 1/2 - sqrt(f (1 - f)) with f = max(f+, f-), zero when f <= 1/2.
double closed_form_biseparable(double f_plus, double f_minus);

/// Legendre transform of E_G^(k) restricted to the GHZ fidelity witnesses,
/// evaluated as the best corner of the k-separable coefficient deltoid.
double legendre_transform(const LegendrePoint& point);

/// nu on the curve where the |+>^k corner and the |0...0> corner of the
/// Legendre transform coincide. Requires mu in [0, mu_max(k)).
double nu_boundary(double mu, int k = 3);

/// Independent route: sup over (mu, nu) of mu f+ + nu f- - legendre_transform.
/// grid_resolution >= 100 pre-scan points along mu.
MeasureResult measure_via_legendre_2d(const GhzParams& params, const SeparabilityClass& cls,
                                      int grid_resolution = 200);

/// Three-qubit full separability via the closest separable state on the
/// deltoid border. Throws DomainError on separable inputs.
MeasureResult measure_via_fidelity_obs4(const GhzParams& params);

double bures_from_geometric(double geometric);
double groverian_from_geometric(double geometric);
double bures_measure(const GhzParams& params, const SeparabilityClass& cls);
double groverian_measure(const GhzParams& params, const SeparabilityClass& cls);

}  // namespace ghzgm

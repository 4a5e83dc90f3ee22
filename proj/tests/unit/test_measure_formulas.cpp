#include "generators.hpp"

#include "ghzgm/errors.hpp"
#include "ghzgm/measure_formulas.hpp"
#include "ghzgm/scalar_search.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace ghzgm;

namespace {

double measure(int n, double fp, double fm, int k) { return eval_measure(GhzParams(n, fp, fm), SeparabilityClass(k)).value; }

// Three-qubit objective with alpha = 1 - mu + mu^2, written out independently.
double three_qubit_objective(double mu, double fp, double fm) {
  const double alpha = 1.0 - mu + mu * mu;
  return 0.5 * (1.0 + mu * (2.0 * fp - 1.0) - std::sqrt(alpha) + fm * mu * (mu + std::sqrt(alpha)) / (mu - 1.0));
}

// Largest eigenvalue of mu |GHZ+><GHZ+| + nu |GHZ-><GHZ-| + |phi><phi|, minus one.
double witness_value(double mu, double nu, const PureState& phi) {
  const int n = phi.n_qubits();
  const CVector gp = ghz_plus(n).amplitudes();
  const CVector gm = ghz_minus(n).amplitudes();
  const CMatrix w = mu * gp * gp.adjoint() + nu * gm * gm.adjoint() + phi.amplitudes() * phi.amplitudes().adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(w, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() - 1.0;
}

PureState plus_state(int n) { return PureState::normalized(CVector::Ones(Eigen::Index{1} << n)); }

}  // namespace

TEST_CASE("mu_max") {
  CHECK(std::isinf(mu_max(2)));
  CHECK(mu_max(3) == 1.0);
  CHECK(std::abs(mu_max(4) - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(mu_max(5) - 4.0 / 7.0) < 1e-15);
  CHECK_THROWS_AS(mu_max(1), std::invalid_argument);
}

TEST_CASE("objective_obs1") {
  CHECK(objective_obs1(0.0, 0.7, 0.2, 3) == 0.0);
  CHECK(objective_obs1(0.0, 0.4, 0.1, 5) == 0.0);
  for (double fp : {0.3, 0.75, 0.9, 1.0}) CHECK(std::abs(objective_obs1(1.0, fp, 0.0, 3) - (fp - 0.5)) < 1e-15);
  CHECK(objective_obs1(1.0 - 1e-9, 0.8, 0.0, 3) == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(objective_obs1(0.5, 0.8, 0.0, 4) > objective_obs1(0.5, 0.8, 0.0, 3));

  CHECK_THROWS_AS(objective_obs1(0.5, 0.1, 0.2, 3), std::invalid_argument);
  CHECK_THROWS_AS(objective_obs1(-0.1, 0.5, 0.2, 3), std::invalid_argument);
  CHECK_THROWS_AS(objective_obs1(0.7, 0.5, 0.2, 4), std::invalid_argument);
  CHECK_THROWS_AS(objective_obs1(1.0, 0.5, 0.2, 3), DomainError);
  CHECK_NOTHROW(objective_obs1(2.0 / 3.0, 0.5, 0.0, 4));
}

TEST_CASE("objective with k=3 reduces to the three-qubit objective") {
  Rng rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = testing::random_triangle_point(3, rng);
    const double fp = std::max(p.f_plus(), p.f_minus());
    const double fm = std::min(p.f_plus(), p.f_minus());
    const double mu = testing::uniform(rng, 0.0, 0.999);
    CHECK(std::abs(objective_obs1(mu, fp, fm, 3) - three_qubit_objective(mu, fp, fm)) < 1e-12);
  }
}

TEST_CASE("analytic derivative matches finite differences") {
  Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 3 + trial % 4;
    const auto p = testing::random_triangle_point(6, rng);
    const double fp = std::max(p.f_plus(), p.f_minus());
    const double fm = std::min(p.f_plus(), p.f_minus());
    const double mu = testing::uniform(rng, 0.01, 0.95 * mu_max(k));
    const double h = 1e-6;
    const double fd = (objective_obs1(mu + h, fp, fm, k) - objective_obs1(mu - h, fp, fm, k)) / (2 * h);
    CHECK(std::abs(objective_obs1_derivative(mu, fp, fm, k) - fd) < 1e-6 * (1.0 + std::abs(fd)));
  }
}

TEST_CASE("eval_measure examples") {
  const auto ghz = eval_measure(GhzParams(3, 1.0, 0.0), SeparabilityClass(3));
  CHECK(std::abs(ghz.value - 0.5) < 1e-9);
  CHECK(ghz.method == Method::obs1);
  CHECK(measure(3, 0.125, 0.125, 3) == 0.0);
  for (int n : {2, 3, 5, 8}) {
    CHECK(std::abs(measure(n, 1.0, 0.0, 2) - 0.5) < 1e-12);
    CHECK(measure(n, 0.5, 0.1, 2) == 0.0);
  }
  CHECK(eval_measure(GhzParams(4, 0.9, 0.0), SeparabilityClass(2)).method == Method::obs3);
  CHECK(std::abs(measure(4, 0.9, 0.0, 2) - 0.2) < 1e-12);
  CHECK(std::abs(measure(3, 0.75, 0.0, 3) - 0.25) < 1e-9);
  CHECK(eval_measure(GhzParams(5, 0.9, 0.0), SeparabilityClass(4)).method == Method::obs2);
  CHECK(std::abs(measure(4, 0.0, 1.0, 4) - measure(4, 1.0, 0.0, 4)) < 1e-12);

  CHECK_THROWS_AS(eval_measure(GhzParams(3, 0.5, 0.1), SeparabilityClass(4)), std::invalid_argument);
}

TEST_CASE("closed forms") {
  CHECK(std::abs(closed_form_hypotenuse(1.0) - 0.5) < 1e-15);
  CHECK(closed_form_hypotenuse(0.5) == 0.0);
  CHECK(std::abs(closed_form_hypotenuse(0.9) - 0.2) < 1e-12);
  CHECK_THROWS_AS(closed_form_hypotenuse(0.4), std::invalid_argument);

  CHECK(std::abs(closed_form_lower_cathetus(0.25)) < 1e-15);
  CHECK(std::abs(closed_form_lower_cathetus(0.75) - 0.25) < 1e-12);
  const double first_branch = 0.25 * (1.0 + 1.5 - 2.0 * std::sqrt(3.0) * std::sqrt(0.75 * 0.25));
  CHECK(std::abs(first_branch - 0.25) < 1e-12);
  CHECK(std::abs(closed_form_lower_cathetus(1.0) - 0.5) < 1e-15);
  CHECK(closed_form_lower_cathetus(0.1) == 0.0);
}

TEST_CASE("eval_measure along the hypotenuse and the lower cathetus") {
  for (int i = 0; i < 50; ++i) {
    const double fp = 0.5 + 0.5 * i / 49.0;
    CAPTURE(fp);
    CHECK(std::abs(measure(3, fp, 1.0 - fp, 3) - closed_form_hypotenuse(fp)) < 1e-8);
  }
  for (int i = 0; i < 50; ++i) {
    const double fp = 0.25 + 0.75 * i / 49.0;
    CAPTURE(fp);
    CHECK(std::abs(measure(3, fp, 0.0, 3) - closed_form_lower_cathetus(fp)) < 1e-8);
  }
}

TEST_CASE("legendre_transform examples") {
  CHECK(std::abs(legendre_transform({0.0, -1.0, 3})) < 1e-15);
  CHECK(std::abs(legendre_transform({0.0, 0.0, 3})) < 1e-15);
  CHECK(std::abs(legendre_transform({1.0, 0.0, 2}) - std::sqrt(2.0) / 2.0) < 1e-15);
  CHECK(legendre_transform({-1.0, -2.0, 3}) == 0.0);
  // Both sides of the boundary curve.
  const double mu = 0.5;
  const double nb = nu_boundary(mu);
  const double alpha = 1.0 - mu + mu * mu;
  CHECK(std::abs(legendre_transform({mu, nb - 0.5, 3}) - 0.5 * (mu - 1.0 + std::sqrt(alpha))) < 1e-14);
  const double nu = nb + 0.2;
  CHECK(std::abs(legendre_transform({mu, nu, 3}) - 0.5 * (mu + nu - 1.0 + std::sqrt(1.0 + (mu - nu) * (mu - nu)))) <
        1e-14);
  // The second region stays finite for |mu - nu| > 1.
  CHECK(std::isfinite(legendre_transform({3.0, -2.0, 3})));
}

TEST_CASE("nu_boundary") {
  CHECK(nu_boundary(0.0) == 0.0);
  CHECK(std::abs(nu_boundary(0.5) - (-0.25 - std::sqrt(3.0) / 4.0)) < 1e-15);
  CHECK(nu_boundary(1.0 - 1e-9) < -1e8);
  CHECK_THROWS_AS(nu_boundary(1.0), std::invalid_argument);
  CHECK_THROWS_AS(nu_boundary(-0.1), std::invalid_argument);
  for (double m = 0.0; m < 1.0; m += 0.05) CHECK(nu_boundary(m) <= 0.0);
}

TEST_CASE("legendre_transform dominates every k-separable product state and is attained at corners") {
  Rng rng(47);
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<PureState> pm{PureState::normalized(CVector::Ones(2)), PureState::normalized(CVector::Ones(2)),
                                  PureState::from_amplitudes(CVector{{h, -h}})};
  const PureState plus_minus = tensor_product(pm);
  for (int trial = 0; trial < 300; ++trial) {
    const double mu = testing::uniform(rng, -1.0, 3.0);
    const double nu = testing::uniform(rng, -3.0, 2.0);
    for (int n : {3, 4}) {
      for (int k = 2; k <= n; ++k) {
        // k groups: the first n-k+1 qubits share one Haar-random group state.
        std::vector<PureState> parts{random_pure_state(n - k + 1, rng)};
        for (int q = 1; q < k; ++q) parts.push_back(random_pure_state(1, rng));
        const PureState phi = tensor_product(parts);
        CHECK(witness_value(mu, nu, phi) <= legendre_transform({mu, nu, k}) + 1e-12);
      }
    }
    // Corner states for n = k = 3.
    const double corners = std::max({witness_value(mu, nu, plus_state(3)), witness_value(mu, nu, plus_minus),
                                     witness_value(mu, nu, PureState::basis(3, 0)),
                                     witness_value(mu, nu, PureState::basis(3, 1))});
    CHECK(std::abs(corners - legendre_transform({mu, nu, 3})) < 1e-10);
  }
}

TEST_CASE("measure_via_legendre_2d examples") {
  CHECK(std::abs(measure_via_legendre_2d(GhzParams(3, 1.0, 0.0), SeparabilityClass(3)).value - 0.5) < 1e-6);
  CHECK(measure_via_legendre_2d(GhzParams(3, 0.125, 0.125), SeparabilityClass(3)).value < 1e-6);
  const GhzParams p(4, 0.9, 0.05);
  CHECK(std::abs(measure_via_legendre_2d(p, SeparabilityClass(4)).value - eval_measure(p, SeparabilityClass(4)).value) <
        1e-6);
  CHECK_THROWS_AS(measure_via_legendre_2d(p, SeparabilityClass(4), 50), std::invalid_argument);
}

TEST_CASE("measure_via_fidelity_obs4 examples") {
  CHECK(std::abs(measure_via_fidelity_obs4(GhzParams(3, 1.0, 0.0)).value - 0.5) < 1e-12);
  CHECK(std::abs(measure_via_fidelity_obs4(GhzParams(3, 0.75, 0.0)).value - 0.25) < 1e-9);
  CHECK(std::abs(measure_via_fidelity_obs4(GhzParams(3, 0.6, 0.2)).value - measure(3, 0.6, 0.2, 3)) < 1e-8);
  CHECK_THROWS_AS(measure_via_fidelity_obs4(GhzParams(3, 0.2, 0.1)), DomainError);
  CHECK_THROWS_AS(measure_via_fidelity_obs4(GhzParams(4, 0.9, 0.0)), std::invalid_argument);
}

TEST_CASE("fidelity route matches the Uhlmann fidelity to border states") {
  // sigma(mu) sits on the deltoid edge f+ = 1/4 + f-/2.
  Rng rng(53);
  int checked = 0;
  while (checked < 10) {
    const auto p = testing::random_triangle_point(3, rng);
    if (p.f_plus() <= p.f_minus() || k_sep_deltoid_contains(p, SeparabilityClass(3))) continue;
    const auto rho = build_state(p);
    const auto best = maximize_scalar(
        [&](double mu) { return uhlmann_fidelity(rho, build_state(GhzParams(3, (1.0 + 2.0 * mu) / 4.0, mu))); }, 0.0,
        0.5, {.prescan_points = 200, .x_tolerance = 1e-10, .max_iterations = 200, .derivative = {}});
    CHECK(std::abs((1.0 - best.value) - measure_via_fidelity_obs4(p).value) < 1e-8);
    ++checked;
  }
}

TEST_CASE("Bures and Groverian measures") {
  CHECK(bures_from_geometric(0.0) == 0.0);
  CHECK(std::abs(bures_measure(GhzParams(3, 1.0, 0.0), SeparabilityClass(3)) - (2.0 - std::sqrt(2.0))) < 1e-9);
  CHECK(std::abs(bures_from_geometric(0.75) - 1.0) < 1e-15);
  CHECK(groverian_from_geometric(0.0) == 0.0);
  CHECK(std::abs(groverian_measure(GhzParams(3, 1.0, 0.0), SeparabilityClass(3)) - std::sqrt(0.5)) < 1e-9);
  CHECK(std::abs(groverian_measure(GhzParams(3, 1.0, 0.0), SeparabilityClass(2)) - std::sqrt(0.5)) < 1e-12);
  CHECK(bures_measure(GhzParams(3, 0.125, 0.125), SeparabilityClass(3)) == 0.0);
}

TEST_CASE("class monotonicity on a triangle grid") {
  const int n = 6;
  const int res = 41;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; i + j < res; ++j) {
      const GhzParams p(n, i / (res - 1.0), j / (res - 1.0));
      double prev = 0.0;
      for (int k = 2; k <= n; ++k) {
        const double e = eval_measure(p, SeparabilityClass(k)).value;
        CHECK(e >= prev - 1e-9);
        prev = e;
      }
    }
  }
}

TEST_CASE("convexity and swap symmetry") {
  Rng rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + trial % 4;
    const auto p = testing::random_triangle_point(5, rng);
    const auto q = testing::random_triangle_point(5, rng);
    const SeparabilityClass cls(k);
    const double ep = eval_measure(p, cls).value;
    const double eq = eval_measure(q, cls).value;
    for (double lambda : {0.25, 0.5, 0.75}) {
      const GhzParams m(5, lambda * p.f_plus() + (1 - lambda) * q.f_plus(),
                        lambda * p.f_minus() + (1 - lambda) * q.f_minus());
      CHECK(eval_measure(m, cls).value <= lambda * ep + (1 - lambda) * eq + 1e-9);
    }
    CHECK(std::abs(eval_measure(p.swapped(), cls).value - ep) < 1e-9);
  }
}

TEST_CASE("zero set is the deltoid") {
  Rng rng(61);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 2 + trial % 4;
    const auto p = testing::random_triangle_point(5, rng);
    const SeparabilityClass cls(k);
    const double e = eval_measure(p, cls).value;
    if (k_sep_deltoid_contains(p, cls)) {
      CHECK(e < 1e-9);
    } else {
      CHECK(e > 0.0);
    }
  }
}

TEST_CASE("cross-method agreement on random entangled points") {
  Rng rng(67);
  int three = 0;
  while (three < 40) {
    const auto p = testing::random_triangle_point(3, rng);
    if (p.f_plus() <= p.f_minus() || k_sep_deltoid_contains(p, SeparabilityClass(3))) continue;
    const double e = measure(3, p.f_plus(), p.f_minus(), 3);
    CAPTURE(p.f_plus());
    CAPTURE(p.f_minus());
    CHECK(std::abs(e - measure_via_fidelity_obs4(p).value) < 1e-8);
    CHECK(std::abs(e - measure_via_legendre_2d(p, SeparabilityClass(3)).value) < 1e-6);
    ++three;
  }
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = testing::random_triangle_point(5, rng);
    const SeparabilityClass cls(2 + trial % 4);
    CAPTURE(p.f_plus());
    CAPTURE(p.f_minus());
    CAPTURE(cls.k());
    CHECK(std::abs(eval_measure(p, cls).value - measure_via_legendre_2d(p, cls).value) < 1e-6);
  }
}

TEST_CASE("biseparable formula matches its Legendre optimization") {
  for (int i = 0; i <= 50; ++i) {
    const double f = 0.5 + 0.5 * i / 50.0;
    const double s_max = 1e6 / (1.0 + 1e6);
    const auto best = maximize_scalar(
        [&](double s) {
          const double mu = s / (1.0 - s);
          return mu * f - legendre_transform({mu, 0.0, 2});
        },
        0.0, s_max);
    const double expected = 0.5 - std::sqrt(f * (1.0 - f));
    // The sup at f = 1 is only reached as mu -> infinity.
    CHECK(std::abs(best.value - expected) < (f < 1.0 ? 1e-8 : 1e-6));
  }
}

#include "ghzgm/oracle.hpp"

#include "ghzgm/errors.hpp"
#include "ghzgm/scalar_search.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace ghzgm {

namespace {

constexpr double kMonotoneSlack = 1e-14;

// local[g][x]: index of basis state x restricted to the qubits of group g,
// first listed qubit most significant.
std::vector<std::vector<std::size_t>> local_indices(const Partition& partition, int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<std::vector<std::size_t>> local(partition.groups.size(), std::vector<std::size_t>(dim));
  for (std::size_t g = 0; g < partition.groups.size(); ++g) {
    for (std::size_t x = 0; x < dim; ++x) {
      std::size_t l = 0;
      for (const int q : partition.groups[g]) l = (l << 1) | ((x >> (n_qubits - 1 - q)) & 1u);
      local[g][x] = l;
    }
  }
  return local;
}

void check_partition(const Partition& partition, int n_qubits) {
  std::vector<int> seen(static_cast<std::size_t>(n_qubits), 0);
  for (const auto& group : partition.groups) {
    if (group.empty()) throw std::invalid_argument("partition has an empty group");
    for (const int q : group) {
      if (q < 0 || q >= n_qubits || seen[static_cast<std::size_t>(q)]++) {
        throw std::invalid_argument("partition groups must be disjoint and cover the qubits");
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != n_qubits) {
    throw std::invalid_argument("partition does not cover every qubit");
  }
}

PureState product_of_groups(const Partition& partition, const std::vector<CVector>& factors, int n_qubits) {
  const auto local = local_indices(partition, n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  CVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    Complex amp = 1.0;
    for (std::size_t g = 0; g < factors.size(); ++g) amp *= factors[g](static_cast<Eigen::Index>(local[g][x]));
    v(static_cast<Eigen::Index>(x)) = amp;
  }
  return PureState::normalized(std::move(v));
}

std::vector<CVector> random_factors(const Partition& partition, Rng& rng) {
  std::vector<CVector> factors;
  factors.reserve(partition.groups.size());
  for (const auto& group : partition.groups) {
    CVector f = random_gaussian_vector(std::size_t{1} << group.size(), rng);
    factors.push_back(f / f.norm());
  }
  return factors;
}

}  // namespace

std::string to_string(const Partition& partition) {
  std::string out;
  for (const auto& group : partition.groups) {
    out += '{';
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(group[i] + 1);
    }
    out += '}';
  }
  return out;
}

void OracleConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("oracle restarts must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("oracle max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("oracle tolerance must be > 0");
}

std::vector<Partition> set_partitions(int n, int k) {
  if (n < 1 || n > 8 || k < 1 || k > n) throw std::invalid_argument("set_partitions requires 1 <= k <= n <= 8");
  // Restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[0..i-1]).
  std::vector<Partition> out;
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);

  auto emit = [&] {
    Partition p;
    p.groups.resize(static_cast<std::size_t>(k));
    for (int q = 0; q < n; ++q) p.groups[static_cast<std::size_t>(label[static_cast<std::size_t>(q)])].push_back(q);
    out.push_back(std::move(p));
  };

  auto recurse = [&](auto&& self, int pos) -> void {
    const int used = pos == 0 ? 0 : prefix_max[static_cast<std::size_t>(pos - 1)] + 1;
    if (pos == n) {
      if (used == k) emit();
      return;
    }
    // Not enough positions left to open the remaining groups.
    if (used + (n - pos) < k) return;
    const int limit = std::min(used, k - 1);
    for (int l = 0; l <= limit; ++l) {
      if (pos == 0 && l > 0) break;
      label[static_cast<std::size_t>(pos)] = l;
      prefix_max[static_cast<std::size_t>(pos)] = pos == 0 ? l : std::max(prefix_max[static_cast<std::size_t>(pos - 1)], l);
      self(self, pos + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

SeeSawRun see_saw(const PureState& psi, const Partition& partition, std::vector<CVector> initial_factors,
                  int max_iterations, double tolerance) {
  const int n = psi.n_qubits();
  check_partition(partition, n);
  if (initial_factors.size() != partition.groups.size()) throw std::invalid_argument("see_saw: factor count mismatch");
  const auto local = local_indices(partition, n);
  const CVector& amps = psi.amplitudes();
  const std::size_t dim = psi.dim();
  const std::size_t groups = partition.groups.size();

  SeeSawRun run;
  run.factors = std::move(initial_factors);
  for (auto& f : run.factors) f /= f.norm();

  auto current_overlap = [&] {
    Complex acc = 0.0;
    for (std::size_t x = 0; x < dim; ++x) {
      Complex prod = 1.0;
      for (std::size_t g = 0; g < groups; ++g) prod *= std::conj(run.factors[g](static_cast<Eigen::Index>(local[g][x])));
      acc += prod * amps(static_cast<Eigen::Index>(x));
    }
    return std::norm(acc);
  };

  run.overlap_sq = current_overlap();
  run.history.push_back(run.overlap_sq);
  if (groups == 1) {
    // The single factor is psi itself.
    run.factors[0] = amps;
    run.overlap_sq = 1.0;
    run.history.push_back(1.0);
    run.converged = true;
    return run;
  }

  for (int sweep = 0; sweep < max_iterations; ++sweep) {
    double last = run.overlap_sq;
    for (std::size_t g = 0; g < groups; ++g) {
      // Contract psi with the conjugates of every other factor.
      CVector v = CVector::Zero(run.factors[g].size());
      for (std::size_t x = 0; x < dim; ++x) {
        Complex prod = amps(static_cast<Eigen::Index>(x));
        for (std::size_t h = 0; h < groups; ++h) {
          if (h != g) prod *= std::conj(run.factors[h](static_cast<Eigen::Index>(local[h][x])));
        }
        v(static_cast<Eigen::Index>(local[g][x])) += prod;
      }
      const double norm = v.norm();
      if (norm > 0.0) {
        run.factors[g] = v / norm;
        last = norm * norm;
      }
    }
    const double gain = last - run.overlap_sq;
    run.overlap_sq = std::max(run.overlap_sq, last);
    run.history.push_back(last);
    if (gain < tolerance) {
      run.converged = true;
      break;
    }
  }
  return run;
}

ClosestProductResult closest_grouped_product_state(const PureState& psi, const Partition& partition,
                                                   const OracleConfig& cfg, Execution exec) {
  cfg.validate();
  check_partition(partition, psi.n_qubits());
  std::vector<std::optional<SeeSawRun>> runs(static_cast<std::size_t>(cfg.restarts));

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    runs[static_cast<std::size_t>(r)] =
        see_saw(psi, partition, random_factors(partition, rng), cfg.max_iterations, cfg.tolerance);
  }

  std::size_t best = 0;
  int converged = 0;
  bool monotone = true;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const SeeSawRun& run = *runs[r];
    if (run.converged) ++converged;
    for (std::size_t i = 1; i < run.history.size(); ++i) {
      if (run.history[i] + kMonotoneSlack < run.history[i - 1]) monotone = false;
    }
    if (run.overlap_sq > runs[best]->overlap_sq) best = r;
  }
  if (converged == 0) {
    throw ConvergenceError("see-saw did not converge within " + std::to_string(cfg.max_iterations) + " sweeps",
                           runs[best]->overlap_sq);
  }
  return ClosestProductResult{std::min(runs[best]->overlap_sq, 1.0),
                              product_of_groups(partition, runs[best]->factors, psi.n_qubits()), converged,
                              monotone};
}

double pure_state_measure(const PureState& psi, int k, const OracleConfig& cfg, Execution exec) {
  const int n = psi.n_qubits();
  if (n > 6) throw std::invalid_argument("pure_state_measure supports at most 6 qubits");
  if (k < 1 || k > n) throw std::invalid_argument("pure_state_measure: k must be in [1, n]");
  const std::vector<Partition> partitions = set_partitions(n, k);
  std::vector<double> overlaps(partitions.size(), 0.0);
  std::vector<std::optional<ConvergenceError>> failures(partitions.size());

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel && partitions.size() > 1)
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    OracleConfig local = cfg;
    local.seed = derive_seed(cfg.seed, 1000003u + p);
    try {
      overlaps[p] = closest_grouped_product_state(psi, partitions[p], local, Execution::serial).overlap_sq;
    } catch (const ConvergenceError& e) {
      failures[p] = e;
    }
  }
  for (const auto& f : failures) {
    if (f) throw *f;
  }
  return std::clamp(1.0 - *std::max_element(overlaps.begin(), overlaps.end()), 0.0, 1.0);
}

double ensemble_average_measure(const Decomposition& dec, int k, const OracleConfig& cfg, Execution exec) {
  const auto& elements = dec.elements();
  std::vector<double> values(elements.size(), 0.0);
  std::vector<std::optional<ConvergenceError>> failures(elements.size());

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].weight == 0.0) continue;
    OracleConfig local = cfg;
    local.seed = derive_seed(cfg.seed, i);
    try {
      values[i] = pure_state_measure(elements[i].state, k, local, Execution::serial);
    } catch (const ConvergenceError& e) {
      failures[i] = e;
    }
  }
  for (const auto& f : failures) {
    if (f) throw *f;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i) total += elements[i].weight * values[i];
  return total;
}

double convex_roof_upper_bound(const DensityMatrix& rho, int k, int ensemble_size, const OracleConfig& cfg,
                               const RoofSearchOptions& options, Execution exec) {
  cfg.validate();
  if (options.inner_restarts < 1) throw std::invalid_argument("inner_restarts must be >= 1");
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  const Eigen::VectorXd& ev = es.eigenvalues();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 1e-14) support.push_back(i);
  }
  const auto rank = static_cast<int>(support.size());
  if (ensemble_size < rank || ensemble_size > 64) {
    throw std::invalid_argument("ensemble_size must be in [rank(rho), 64]");
  }

  // Unnormalized canonical vectors sqrt(lambda_i) |e_i>.
  CMatrix scaled(rho.matrix().rows(), rank);
  for (int c = 0; c < rank; ++c) scaled.col(c) = std::sqrt(ev(support[static_cast<std::size_t>(c)])) *
                                                 es.eigenvectors().col(support[static_cast<std::size_t>(c)]);

  OracleConfig inner = cfg;
  inner.restarts = options.inner_restarts;

  auto ensemble_from = [&](const CMatrix& isometry) {
    // Row j of the isometry mixes the canonical vectors into member j.
    std::vector<Decomposition::Element> members;
    double total = 0.0;
    for (Eigen::Index j = 0; j < isometry.rows(); ++j) {
      CVector v = scaled * isometry.row(j).transpose();
      const double w = v.squaredNorm();
      if (w <= 1e-15) continue;
      total += w;
      members.push_back({w, PureState::normalized(std::move(v))});
    }
    for (auto& m : members) m.weight /= total;
    return Decomposition::from_elements(std::move(members));
  };

  for (const auto& warm : options.warm_starts) {
    if (frobenius_distance(density_from_mixture(warm).matrix(), rho.matrix()) > 1e-8) {
      throw std::invalid_argument("warm-start decomposition does not reproduce rho");
    }
  }

  const std::size_t n_warm = options.warm_starts.size();
  const std::size_t n_candidates = 1 + n_warm + static_cast<std::size_t>(cfg.restarts);
  std::vector<double> values(n_candidates, std::numeric_limits<double>::infinity());
  std::vector<std::optional<ConvergenceError>> failures(n_candidates);

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (std::size_t c = 0; c < n_candidates; ++c) {
    OracleConfig local = inner;
    local.seed = derive_seed(cfg.seed, 7919u + c);
    try {
      if (c == 0) {
        values[c] = ensemble_average_measure(ensemble_from(CMatrix::Identity(rank, rank)), k, local, Execution::serial);
      } else if (c <= n_warm) {
        values[c] = ensemble_average_measure(options.warm_starts[c - 1], k, local, Execution::serial);
      } else {
        Rng rng(derive_seed(cfg.seed, c));
        const CMatrix u = random_unitary(static_cast<std::size_t>(ensemble_size), rng);
        values[c] = ensemble_average_measure(ensemble_from(u.leftCols(rank)), k, local, Execution::serial);
      }
    } catch (const ConvergenceError& e) {
      failures[c] = e;
    }
  }
  for (const auto& f : failures) {
    if (f) throw *f;
  }
  return *std::min_element(values.begin(), values.end());
}

double obs3_derivation_check(double f) {
  if (!(f >= 0.5 && f <= 1.0)) throw std::invalid_argument("obs3_derivation_check: f must be in [1/2, 1]");
  auto objective = [f](double mu) { return mu * f - 0.5 * (mu - 1.0 + std::sqrt(1.0 + mu * mu)); };
  // Search mu in [0, 1e6] through t = mu / (1 + mu) so large optima stay resolvable.
  constexpr double kMuUpper = 1e6;
  const double t_upper = kMuUpper / (1.0 + kMuUpper);
  ScalarSearchOptions options;
  options.x_tolerance = 1e-15;
  const ScalarMaximum best =
      maximize_scalar([&](double t) { return objective(t / (1.0 - t)); }, 0.0, t_upper, options);
  double value = best.value;
  // As mu -> infinity the objective tends to mu (f - 1) + 1/2: the supremum
  // 1/2 is only approached for f = 1.
  if (f == 1.0) value = std::max(value, 0.5);
  return value;
}

}  // namespace ghzgm

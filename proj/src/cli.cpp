#include "ghzgm/cli.hpp"

#include "ghzgm/contour.hpp"
#include "ghzgm/decomposition.hpp"
#include "ghzgm/errors.hpp"
#include "ghzgm/measure_formulas.hpp"
#include "ghzgm/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <stdexcept>

namespace ghzgm::cli {

namespace {

// Tolerances used by `compare`; they mirror the cross-method agreement
// guaranteed by the library tests.
constexpr double kLegendreTolerance = 1e-6;
constexpr double kFidelityTolerance = 1e-8;
constexpr double kOrderTolerance = 1e-9;
constexpr double kDecompositionTolerance = 1e-10;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ComparisonFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalOptions {
  int n = 3;
  double f_plus = 0.0;
  double f_minus = 0.0;
  int k = 3;
  std::string method = "auto";
  int grid = 200;
  int restarts = 20;
  std::uint64_t seed = 0;
};

struct ContourOptions {
  int n = 3;
  std::vector<std::string> classes;
  int resolution = 51;
  std::string output;
  std::string format = "csv";
  std::uint64_t seed = 0;
};

struct DecomposeOptions {
  double f_plus = 0.5;
  std::string output;
  int restarts = 20;
  std::uint64_t seed = 0;
};

struct CompareOptions {
  int n = 3;
  std::vector<std::string> classes;
  int samples = 100;
  int oracle_samples = 3;
  std::uint64_t seed = 0;
};

void print_result(std::ostream& out, const MeasureResult& r) {
  out << "value: " << format_scientific(r.value) << '\n';
  out << "mu: " << format_scientific(r.mu) << '\n';
  if (r.nu) out << "nu: " << format_scientific(*r.nu) << '\n';
  out << "method: " << to_string(r.method) << '\n';
  out << "bures: " << format_scientific(bures_from_geometric(r.value)) << '\n';
  out << "groverian: " << format_scientific(groverian_from_geometric(r.value)) << '\n';
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
  const GhzParams params(o.n, o.f_plus, o.f_minus);
  const SeparabilityClass cls(o.k);
  cls.check_against(o.n);
  const std::string& m = o.method;

  MeasureResult r;
  if (m == "auto") {
    r = eval_measure(params, cls);
  } else if (m == "obs1" || m == "obs2") {
    if (m == "obs1" ? o.k != 3 : o.k < 3) throw std::invalid_argument("method " + m + " does not apply to k=" + std::to_string(o.k));
    r = eval_measure(params, cls);
    r.method = m == "obs1" ? Method::obs1 : Method::obs2;
  } else if (m == "obs3") {
    if (o.k != 2) throw std::invalid_argument("method obs3 needs k=2");
    r = eval_measure(params, cls);
  } else if (m == "obs4") {
    if (o.n != 3 || o.k != 3) throw std::invalid_argument("method obs4 needs n=3 and k=3");
    r = measure_via_fidelity_obs4(params);
  } else if (m == "legendre2d") {
    r = measure_via_legendre_2d(params, cls, o.grid);
  } else if (m == "oracle") {
    if (o.n > 4) throw std::invalid_argument("method oracle supports n <= 4");
    OracleConfig cfg;
    cfg.restarts = o.restarts;
    cfg.seed = o.seed;
    RoofSearchOptions roof;
    if (o.n == 3 && o.k == 3 && o.f_minus == 0.0 && o.f_plus >= 0.25) {
      roof.warm_starts.push_back(decompose_lower_cathetus(o.f_plus));
    }
    r = {convex_roof_upper_bound(build_state(params), o.k, 1 << o.n, cfg, roof), 0.0, std::nullopt,
         Method::oracle_upper_bound};
  } else {
    throw std::invalid_argument("unknown method " + m);
  }
  print_result(out, r);
  return kOk;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path);
  return file;
}

int cmd_contour(const ContourOptions& o, std::ostream& out) {
  if (o.format != "csv" && o.format != "json") throw std::invalid_argument("format must be csv or json");
  const std::vector<int> classes = parse_classes(o.classes.empty() ? std::vector<std::string>{std::to_string(o.n)} : o.classes);
  const auto rows = contour_grid(o.n, classes, o.resolution);
  std::ofstream file = open_output(o.output);
  if (o.format == "csv") {
    write_contour_csv(file, rows);
  } else {
    write_contour_json(file, rows);
  }
  file.flush();
  if (!file) throw IoError("failed writing " + o.output);
  out << "wrote " << rows.size() << " rows to " << o.output << '\n';
  return kOk;
}

int cmd_decompose(const DecomposeOptions& o, std::ostream& out) {
  if (!(o.f_plus >= 0.25 && o.f_plus <= 1.0)) {
    throw std::invalid_argument("decompose needs f+ in [1/4, 1] (no decomposition defined below the deltoid)");
  }
  const Decomposition dec = decompose_lower_cathetus(o.f_plus);
  const double residual = verify_decomposition(dec, build_state(GhzParams(3, o.f_plus, 0.0)));
  if (residual > kDecompositionTolerance) throw VerificationError("reconstruction residual too large", residual);

  OracleConfig cfg;
  cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  const double average = average_entanglement(dec, SeparabilityClass(3), cfg);

  nlohmann::json doc;
  doc["f_plus"] = format_scientific(o.f_plus);
  doc["form"] = o.f_plus <= 0.75 ? "optimal_28" : "high_fidelity";
  doc["n_elements"] = dec.size();
  doc["residual"] = format_scientific(residual);
  doc["average_entanglement"] = format_scientific(average);
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : dec.elements()) {
    nlohmann::json amps = nlohmann::json::array();
    for (Eigen::Index i = 0; i < e.state.amplitudes().size(); ++i) {
      const Complex a = e.state.amplitudes()(i);
      amps.push_back({format_scientific(a.real()), format_scientific(a.imag())});
    }
    elements.push_back({{"weight", format_scientific(e.weight)}, {"amplitudes", std::move(amps)}});
  }
  doc["elements"] = std::move(elements);

  std::ofstream file = open_output(o.output);
  file << doc.dump(2) << '\n';
  file.flush();
  if (!file) throw IoError("failed writing " + o.output);
  out << "elements: " << dec.size() << '\n';
  out << "residual: " << format_scientific(residual) << '\n';
  out << "average_entanglement: " << format_scientific(average) << '\n';
  return kOk;
}

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  if (o.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (o.oracle_samples < 0) throw std::invalid_argument("oracle-samples must be >= 0");
  std::vector<int> classes = parse_classes(o.classes.empty() ? std::vector<std::string>{std::to_string(o.n)} : o.classes);
  std::sort(classes.begin(), classes.end());
  std::vector<SeparabilityClass> cls;
  for (const int k : classes) {
    cls.emplace_back(k);
    cls.back().check_against(o.n);
  }

  // Points are drawn serially so the set is independent of the thread count.
  Rng rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<GhzParams> points;
  for (int s = 0; s < o.samples; ++s) {
    double u = unit(rng);
    double v = unit(rng);
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    points.emplace_back(o.n, u, v);
  }

  const std::size_t nc = cls.size();
  std::vector<double> formula(points.size() * nc);
  std::vector<double> legendre_dev(points.size() * nc, 0.0);
  std::vector<double> fidelity_dev(points.size(), 0.0);
  std::vector<int> fidelity_used(points.size(), 0);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t c = 0; c < nc; ++c) {
      const double e = eval_measure(points[p], cls[c]).value;
      formula[p * nc + c] = e;
      legendre_dev[p * nc + c] = std::abs(e - measure_via_legendre_2d(points[p], cls[c]).value);
      if (o.n == 3 && cls[c].k() == 3 && points[p].f_plus() != points[p].f_minus() &&
          !k_sep_deltoid_contains(points[p], cls[c])) {
        fidelity_dev[p] = std::abs(e - measure_via_fidelity_obs4(points[p]).value);
        fidelity_used[p] = 1;
      }
    }
  }

  double max_legendre = 0.0;
  for (const double d : legendre_dev) max_legendre = std::max(max_legendre, d);
  double max_fidelity = 0.0;
  int fidelity_points = 0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (fidelity_used[p]) {
      ++fidelity_points;
      max_fidelity = std::max(max_fidelity, fidelity_dev[p]);
    }
  }
  int order_violations = 0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t c = 1; c < nc; ++c) {
      if (formula[p * nc + c - 1] > formula[p * nc + c] + kOrderTolerance) ++order_violations;
    }
  }

  int sandwich_checked = 0;
  int sandwich_violations = 0;
  if (o.n <= 4) {
    const int m = std::min(o.oracle_samples, o.samples);
    for (int p = 0; p < m; ++p) {
      for (std::size_t c = 0; c < nc; ++c) {
        OracleConfig cfg;
        cfg.restarts = 2;
        cfg.seed = derive_seed(o.seed, static_cast<std::uint64_t>(p * nc + c));
        RoofSearchOptions roof;
        roof.inner_restarts = 4;
        const double upper =
            convex_roof_upper_bound(build_state(points[static_cast<std::size_t>(p)]), cls[c].k(), 1 << o.n, cfg, roof);
        ++sandwich_checked;
        if (formula[static_cast<std::size_t>(p) * nc + c] > upper + kOrderTolerance) ++sandwich_violations;
      }
    }
  }

  const bool ok = max_legendre < kLegendreTolerance && max_fidelity < kFidelityTolerance && order_violations == 0 &&
                  sandwich_violations == 0;
  out << "samples: " << o.samples << '\n';
  out << "classes:";
  for (const int k : classes) out << ' ' << k;
  out << '\n';
  out << "max |formula - legendre2d|: " << format_scientific(max_legendre) << " (tolerance 1e-6)\n";
  if (fidelity_points > 0) {
    out << "max |formula - obs4|: " << format_scientific(max_fidelity) << " over " << fidelity_points
        << " entangled points (tolerance 1e-8)\n";
  }
  out << "class monotonicity violations: " << order_violations << '\n';
  if (o.n <= 4) {
    out << "oracle sandwich violations: " << sandwich_violations << " of " << sandwich_checked << '\n';
  } else {
    out << "oracle sandwich: skipped for n > 4\n";
  }
  out << "status: " << (ok ? "ok" : "FAILED") << '\n';
  if (!ok) throw ComparisonFailure("comparison tolerances violated");
  return kOk;
}

}  // namespace

std::vector<int> parse_classes(const std::vector<std::string>& tokens) {
  std::vector<int> out;
  for (const auto& t : tokens) {
    const auto dots = t.find("..");
    try {
      std::size_t used = 0;
      if (dots == std::string::npos) {
        out.push_back(std::stoi(t, &used));
        if (used != t.size()) throw std::invalid_argument(t);
      } else {
        const int lo = std::stoi(t.substr(0, dots));
        const int hi = std::stoi(t.substr(dots + 2), &used);
        if (used != t.size() - dots - 2 || lo > hi) throw std::invalid_argument(t);
        for (int k = lo; k <= hi; ++k) out.push_back(k);
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("cannot parse class list entry '" + t + "'");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric measure of entanglement for GHZ-symmetric qubit states"};
  app.require_subcommand(1);

  EvalOptions eval;
  auto* e = app.add_subcommand("eval", "Evaluate E_G^(k) at one point of the triangle");
  e->add_option("-n,--qubits", eval.n, "number of qubits")->required();
  e->add_option("--fp", eval.f_plus, "GHZ+ fidelity")->required();
  e->add_option("--fm", eval.f_minus, "GHZ- fidelity")->required();
  e->add_option("-k,--class", eval.k, "separability class k")->required();
  e->add_option("--method", eval.method, "auto|obs1|obs2|obs3|obs4|legendre2d|oracle")->capture_default_str();
  e->add_option("--grid", eval.grid, "pre-scan resolution of the legendre2d route")->capture_default_str();
  e->add_option("--restarts", eval.restarts, "random ensembles for the oracle route")->capture_default_str();
  e->add_option("--seed", eval.seed, "random seed")->capture_default_str();

  ContourOptions contour;
  auto* c = app.add_subcommand("contour", "Write E_G^(k) on a triangle grid");
  c->add_option("-n,--qubits", contour.n, "number of qubits")->required();
  c->add_option("-k,--class", contour.classes, "classes, e.g. -k 2 3 4 or -k 2..4 (default: n)");
  c->add_option("-r,--resolution", contour.resolution, "grid points per axis")->capture_default_str();
  c->add_option("-o,--output", contour.output, "output path")->required();
  c->add_option("--format", contour.format, "csv|json")->capture_default_str();
  c->add_option("--seed", contour.seed, "random seed (unused; the grid is deterministic)")->capture_default_str();

  DecomposeOptions decompose;
  auto* d = app.add_subcommand("decompose", "Build and verify the lower-cathetus decomposition (n=3)");
  d->add_option("--fp", decompose.f_plus, "GHZ+ fidelity in [1/4, 1]")->required();
  d->add_option("-o,--output", decompose.output, "output JSON path")->required();
  d->add_option("--restarts", decompose.restarts, "see-saw restarts per element")->capture_default_str();
  d->add_option("--seed", decompose.seed, "random seed")->capture_default_str();

  CompareOptions compare;
  auto* m = app.add_subcommand("compare", "Cross-check formulas against independent routes on random points");
  m->add_option("-n,--qubits", compare.n, "number of qubits")->required();
  m->add_option("-k,--class", compare.classes, "classes, e.g. -k 3 or -k 2..4 (default: n)");
  m->add_option("--samples", compare.samples, "random triangle points")->capture_default_str();
  m->add_option("--oracle-samples", compare.oracle_samples, "points also checked with the see-saw oracle")
      ->capture_default_str();
  m->add_option("--seed", compare.seed, "random seed")->capture_default_str();

  std::vector<char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (e->parsed()) return cmd_eval(eval, out);
    if (c->parsed()) return cmd_contour(contour, out);
    if (d->parsed()) return cmd_decompose(decompose, out);
    if (m->parsed()) return cmd_compare(compare, out);
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << '\n';
    return kDomain;
  } catch (const IoError& ex) {
    err << "error: " << ex.what() << '\n';
    return kIo;
  } catch (const VerificationError& ex) {
    err << "error: " << ex.what() << " (residual " << format_scientific(ex.residual()) << ")\n";
    return kVerification;
  } catch (const ConvergenceError& ex) {
    err << "error: " << ex.what() << '\n';
    return kVerification;
  } catch (const ComparisonFailure& ex) {
    err << "error: " << ex.what() << '\n';
    return kComparison;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace ghzgm::cli

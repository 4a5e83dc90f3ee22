#include "ghzgm/scalar_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ghzgm {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/phi

void keep_better(ScalarMaximum& best, double x, double value) {
  if (value > best.value) best = {x, value};
}

}  // namespace

ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double x_tolerance, int max_iterations) {
  if (!(lo <= hi)) throw std::invalid_argument("golden_section_maximize: empty interval");
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iterations && (b - a) > x_tolerance; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  ScalarMaximum best{c, fc};
  keep_better(best, d, fd);
  const double mid = 0.5 * (a + b);
  keep_better(best, mid, f(mid));
  return best;
}

ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              const ScalarSearchOptions& options) {
  if (!(lo <= hi)) throw std::invalid_argument("maximize_scalar: empty interval");
  if (lo == hi) return {lo, f(lo)};

  const int points = std::max(options.prescan_points, 3);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  ScalarMaximum best{lo, f(lo)};
  int best_index = 0;
  for (int i = 1; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + step * i;
    const double v = f(x);
    if (v > best.value) {
      best = {x, v};
      best_index = i;
    }
  }

  const double a = best_index == 0 ? lo : lo + step * (best_index - 1);
  const double b = best_index + 1 >= points ? hi : lo + step * (best_index + 1);
  const ScalarMaximum golden = golden_section_maximize(f, a, b, options.x_tolerance, options.max_iterations);
  keep_better(best, golden.x, golden.value);

  if (options.derivative) {
    // Safeguarded Newton on f' = 0 inside the bracket; the second derivative
    // comes from a central difference of the analytic first derivative.
    double x = golden.x;
    for (int it = 0; it < 30; ++it) {
      const double g = options.derivative(x);
      const double h = 1e-6 * std::max(1.0, std::abs(x));
      if (x - h < a || x + h > b) break;
      const double curvature = (options.derivative(x + h) - options.derivative(x - h)) / (2.0 * h);
      if (!(curvature < 0.0) || !std::isfinite(g)) break;
      const double next = x - g / curvature;
      if (next < a || next > b) break;
      const double v = f(next);
      if (!(v >= best.value)) break;
      best = {next, v};
      if (std::abs(next - x) < options.x_tolerance) break;
      x = next;
    }
  }

  keep_better(best, hi, f(hi));
  return best;
}

}  // namespace ghzgm

#pragma once

#include <functional>

namespace ghzgm {

struct ScalarMaximum {
  double x;
  double value;
};

struct ScalarSearchOptions {
  /// Uniform pre-scan points on [lo, hi] used to bracket the maximum.
  int prescan_points = 1000;
  /// Bracket width at which golden-section search stops.
  double x_tolerance = 1e-12;
  int max_iterations = 500;
  /// Optional analytic first derivative; enables Newton refinement of the
  /// golden-section result.
  std::function<double(double)> derivative;
};

/// Golden-section maximization of f on [lo, hi]; assumes unimodality.
ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double x_tolerance = 1e-12, int max_iterations = 500);

/// Maximize f on the closed interval [lo, hi]: pre-scan, golden section on the
/// bracket around the best scan point, optional Newton polish. Both endpoints
/// are always candidates.
ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              const ScalarSearchOptions& options = {});

}  // namespace ghzgm

#pragma once

#include "ghzgm/execution.hpp"

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace ghzgm {

struct ContourRow {
  double f_plus;
  double f_minus;
  int k;
  double value;
};

/// Grid coordinate i / (resolution - 1); shared with the CLI so that a point
/// typed on the command line maps to the same double as the grid point.
double grid_coordinate(int index, int resolution);

/// E_G^(k) on every in-triangle grid point (i + j <= resolution - 1), rows
/// ordered f+ ascending, then f- ascending, then k ascending.
std::vector<ContourRow> contour_grid(int n_qubits, std::span<const int> classes, int resolution,
                                     Execution exec = Execution::parallel);

/// 12 significant digits in scientific notation.
std::string format_scientific(double value);

/// Header `f_plus,f_minus,k,value`, LF line endings.
void write_contour_csv(std::ostream& out, std::span<const ContourRow> rows);

/// JSON array of {"f_plus", "f_minus", "k", "value"} records; reals as strings.
void write_contour_json(std::ostream& out, std::span<const ContourRow> rows);

}  // namespace ghzgm

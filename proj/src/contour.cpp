#include "ghzgm/contour.hpp"

#include "ghzgm/measure_formulas.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace ghzgm {

double grid_coordinate(int index, int resolution) {
  return static_cast<double>(index) / static_cast<double>(resolution - 1);
}

std::vector<ContourRow> contour_grid(int n_qubits, std::span<const int> classes, int resolution, Execution exec) {
  if (resolution < 2) throw std::invalid_argument("contour resolution must be >= 2");
  if (classes.empty()) throw std::invalid_argument("contour needs at least one class");
  std::vector<int> ks(classes.begin(), classes.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<SeparabilityClass> cls;
  for (const int k : ks) {
    cls.emplace_back(k);
    cls.back().check_against(n_qubits);
  }

  // Flattened (i, j) pairs in output order; the row index of a point is fixed
  // before any evaluation so the parallel kernel fills the same slots.
  std::vector<std::pair<int, int>> points;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; i + j <= resolution - 1; ++j) points.emplace_back(i, j);
  }
  std::vector<ContourRow> rows(points.size() * cls.size());

#pragma omp parallel for schedule(dynamic, 16) if (exec == Execution::parallel)
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double fp = grid_coordinate(points[p].first, resolution);
    const double fm = grid_coordinate(points[p].second, resolution);
    const GhzParams params(n_qubits, fp, fm);
    for (std::size_t c = 0; c < cls.size(); ++c) {
      rows[p * cls.size() + c] = {fp, fm, cls[c].k(), eval_measure(params, cls[c]).value};
    }
  }
  return rows;
}

std::string format_scientific(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return buf;
}

void write_contour_csv(std::ostream& out, std::span<const ContourRow> rows) {
  out << "f_plus,f_minus,k,value\n";
  for (const auto& r : rows) {
    out << format_scientific(r.f_plus) << ',' << format_scientific(r.f_minus) << ',' << r.k << ','
        << format_scientific(r.value) << '\n';
  }
}

void write_contour_json(std::ostream& out, std::span<const ContourRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"f_plus", format_scientific(r.f_plus)},
                   {"f_minus", format_scientific(r.f_minus)},
                   {"k", r.k},
                   {"value", format_scientific(r.value)}});
  }
  out << arr.dump(2) << '\n';
}

}  // namespace ghzgm

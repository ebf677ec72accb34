#pragma once

#include <string>
#include <utility>
#include <vector>

namespace distgeo {

struct TupleResidual {
  std::vector<int> tuple;  // 0-based frame indices
  double residual = 0.0;
};

// Residual grid of one identity over frame tuples.
struct CheckReport {
  std::string identity;
  std::string label;
  std::vector<TupleResidual> grid;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::vector<std::pair<std::string, double>> extras;

  void add(std::vector<int> tuple, double residual) { grid.push_back({std::move(tuple), residual}); }
  // pass <=> max residual < tol (NaN fails).
  void finish(double tol);
};

using CurvatureReport = CheckReport;

inline void CheckReport::finish(double tol) {
  tolerance = tol;
  max_residual = 0.0;
  double sum = 0.0;
  bool finite = true;
  for (const auto& g : grid) {
    if (!(g.residual == g.residual)) finite = false;
    if (g.residual > max_residual) max_residual = g.residual;
    sum += g.residual;
  }
  mean_residual = grid.empty() ? 0.0 : sum / static_cast<double>(grid.size());
  pass = finite && max_residual < tol;
}

}  // namespace distgeo

#pragma once

#include <vector>

#include "artgallery/mwu_solver.hpp"

namespace artgallery {

struct NetResult {
  std::vector<Point> net;
  std::size_t heavy_cells = 0;
  std::size_t heavy_ranges = 0;  // distinct heavy labels
};

/// Rounds the fractional solution: a subset of the support hitting the label
/// of every cell seen by at least T support points. `complex` must be the
/// complex built over the support in order.
NetResult extract_net(const CellComplex& complex, const FractionalSolution& fractional);

/// Same, building the complex over the support first.
NetResult extract_net(const Polygon& polygon, const FractionalSolution& fractional);

}  // namespace artgallery

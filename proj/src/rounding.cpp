#include <algorithm>

#include "artgallery/oracle.hpp"

namespace artgallery {

GridSpec grid_from_bound(const Rational& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("grid bound must be positive");
  GridSpec g;
  g.exponent = floor_log2(bound);
  g.rho = pow2(g.exponent);
  g.bound = bound;
  return g;
}

GridSpec grid_spec(const Polygon& polygon, const Rational& eps, const Rational& delta,
                   const Rational& nu, unsigned long T, const Rational& r_max) {
  const auto in_unit = [](const Rational& v) { return sgn(v) > 0 && v < 1; };
  if (!in_unit(eps) || !in_unit(delta) || !in_unit(nu))
    throw std::invalid_argument("grid_spec: parameters must lie in (0, 1)");
  if (T < 1 || r_max < 1) throw std::invalid_argument("grid_spec: T and r_max must be >= 1");
  const Rational n(static_cast<unsigned long>(polygon.vertex_count()));
  const Rational bound = nu * delta * pow(1 - eps, T) * polygon.area() /
                         (16 * (1 - nu / 2) * diameter_bound(polygon) * n * r_max);
  GridSpec g = grid_from_bound(bound);
  g.r_max = r_max;
  return g;
}

namespace {

/// x-extent of a convex cell on the horizontal line y = row, if any.
std::optional<std::pair<Rational, Rational>> row_extent(std::span<const Point> cell,
                                                        const Rational& row) {
  std::optional<Rational> lo, hi;
  const auto add = [&](const Rational& x) {
    if (!lo || x < *lo) lo = x;
    if (!hi || x > *hi) hi = x;
  };
  const std::size_t n = cell.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = cell[i];
    const Point& b = cell[(i + 1) % n];
    const int sa = cmp(a.y, row), sb = cmp(b.y, row);
    if (sa == 0) add(a.x);
    if (sa != 0 && sb != 0 && sa != sb) add(a.x + (row - a.y) * (b.x - a.x) / (b.y - a.y));
  }
  if (!lo) return std::nullopt;
  return std::make_pair(*lo, *hi);
}

}  // namespace

Point nearest_grid_point(std::span<const Point> cell, const Point& v, const Rational& rho) {
  if (cell.empty()) throw InvariantViolation("grid snap of an empty cell");
  std::vector<Point> scaled;
  scaled.reserve(cell.size());
  for (const auto& p : cell) scaled.push_back({p.x / rho, p.y / rho});
  const Point target{v.x / rho, v.y / rho};
  const BoundingBox box = bounding_box(scaled);
  const Integer row_lo = ceil(box.lo.y), row_hi = floor(box.hi.y);
  if (row_lo > row_hi) throw InvariantViolation("large cell contains no grid point");

  std::optional<Point> best;
  Rational best_d;
  const auto consider = [&](const Integer& xi, const Integer& yi) {
    const Point p{Rational(xi), Rational(yi)};
    const Rational d = squared_distance(p, target);
    if (!best || d < best_d || (d == best_d && p < *best)) {
      best = p;
      best_d = d;
    }
  };

  Integer down = std::min(Integer(floor(target.y)), row_hi);
  Integer up = std::max(Integer(down + 1), row_lo);
  constexpr long kRowLimit = 20'000'000;
  for (long steps = 0;; ++steps) {
    if (steps > kRowLimit) throw InvariantViolation("grid snap search limit exceeded");
    const bool has_down = down >= row_lo, has_up = up <= row_hi;
    if (!has_down && !has_up) break;
    Integer row;
    if (has_down && has_up) {
      const Rational dd = target.y - down, du = Rational(up) - target.y;
      row = (dd <= du) ? down : up;
    } else {
      row = has_down ? down : up;
    }
    const Rational dy = Rational(row) - target.y;
    if (best && dy * dy > best_d) break;
    if (row == down && has_down) {
      --down;
    } else {
      ++up;
    }
    const auto ext = row_extent(scaled, Rational(row));
    if (!ext) continue;
    const Integer lo = ceil(ext->first), hi = floor(ext->second);
    if (lo > hi) continue;
    if (target.x <= lo) {
      consider(lo, row);
    } else if (target.x >= hi) {
      consider(hi, row);
    } else {
      consider(floor(target.x), row);
      consider(ceil(target.x), row);
    }
  }
  if (!best) throw InvariantViolation("large cell contains no grid point");
  return {best->x * rho, best->y * rho};
}

RoundedComplex round_complex(const CellComplex& complex, unsigned long T, const GridSpec& grid,
                             const Polygon& polygon) {
  RoundedComplex out;
  out.active_area = 0;
  out.dropped_area = 0;
  const Rational large = 4 * grid.rho * diameter_bound(polygon);
  for (std::size_t i = 0; i < complex.cells.size(); ++i) {
    const Cell& c = complex.cells[i];
    if (c.label.size() >= T) continue;
    out.active_area += c.area;
    if (c.area < large) {
      ++out.small_cells;
      out.dropped_area += c.area;
      continue;
    }
    std::vector<Point> snapped;
    snapped.reserve(c.polygon.size());
    for (const auto& v : c.polygon) snapped.push_back(nearest_grid_point(c.polygon, v, grid.rho));
    ConvexCell hull = convex_hull(std::move(snapped));
    const Rational a = hull.size() >= 3 ? ring_area(hull) : Rational(0);
    out.dropped_area += c.area - a;
    if (sgn(a) > 0)
      out.kept.push_back({i, std::move(hull), a, static_cast<unsigned>(c.label.size())});
  }
  return out;
}

std::vector<Rational> weight_table(const Rational& eps, std::size_t count) {
  std::vector<Rational> w;
  w.reserve(count);
  Rational cur(1);
  for (std::size_t j = 0; j < count; ++j) {
    w.push_back(cur);
    cur *= (1 - eps);
  }
  return w;
}

}  // namespace artgallery

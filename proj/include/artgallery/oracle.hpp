#pragma once

// Approximate maximization of the weighted visible area
//   xi(q) = sum over kept cells R of (1 - eps)^{|label(R)|} * area(V(q) ∩ R~)
// over the rounded complex, with a certified upper bound.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "artgallery/arrangement.hpp"

namespace artgallery {

// ---------------------------------------------------------------- rounding

struct GridSpec {
  long exponent = 0;
  Rational rho;     // 2^exponent
  Rational bound;   // the value b with rho <= b < 2 rho
  Rational r_max;
};

/// Largest power of two not exceeding `bound`.
GridSpec grid_from_bound(const Rational& bound);

/// rho for the rounded oracle: the largest power of two not exceeding
/// nu*delta*(1-eps)^T*area(H) / (16*(1-nu/2)*Dbound*n*r_max).
GridSpec grid_spec(const Polygon& polygon, const Rational& eps, const Rational& delta,
                   const Rational& nu, unsigned long T, const Rational& r_max);

/// Nearest point of the grid rho*Z^2 inside the closed convex cell, to v.
/// Ties go to the lexicographically smallest point. Throws InvariantViolation
/// if the cell contains no grid point.
Point nearest_grid_point(std::span<const Point> cell, const Point& v, const Rational& rho);

struct RoundedCell {
  std::size_t source = 0;  // index into the complex's cells
  ConvexCell cell;         // R~, vertices on the grid
  Rational area;
  unsigned exponent = 0;   // |label(R)|
};

struct RoundedComplex {
  std::vector<RoundedCell> kept;
  Rational active_area;   // area(H_t)
  Rational dropped_area;  // area(H_t \ H~_t)
  std::size_t small_cells = 0;
};

/// Drops small active cells and snaps each large active cell inward to the
/// grid. Inactive cells (|label| >= T) are ignored.
RoundedComplex round_complex(const CellComplex& complex, unsigned long T, const GridSpec& grid,
                             const Polygon& polygon);

// ------------------------------------------------------- tracked clipping

/// V(q) ∩ C for convex C, with each vertex's dependence on q tracked.
/// Returns nullopt when some clipped edge cannot be classified (q is on a
/// line where the combinatorial structure changes).
std::optional<std::vector<VisVertex>> clip_tracked(std::span<const VisVertex> subject,
                                                   std::span<const Point> convex);

/// True when the edge a -> b of a tracked ring lies on a line through q.
bool is_window_edge(const VisVertex& a, const VisVertex& b);

/// Upper bound on area(W(q)) over q in the convex region, given the tracked
/// ring W computed at some q0 in the region's interior and assuming the
/// structure of W is constant over the region.
Rational tracked_area_bound(std::span<const VisVertex> ring, std::span<const Point> region);

// ------------------------------------------------- per-triangle objective

/// a*x + b*y + c.
struct Affine {
  Rational a, b, c;
  Rational at(const Point& p) const { return a * p.x + b * p.y + c; }
};

/// coeff * prod(num) / prod(den), a function of the viewpoint q = (x, y).
struct ObjectiveTerm {
  Rational coeff;
  std::vector<Affine> num;
  std::vector<Affine> den;
  std::size_t cell = 0;  // index into RoundedComplex::kept
};

struct TriangleObjective {
  ConvexCell triangle;
  std::vector<ObjectiveTerm> terms;
  std::vector<Rational> cell_cap;  // weighted area of each kept cell

  Rational evaluate(const Point& q) const;
  /// q = l1*v1 + l2*v2 + (1 - l1 - l2)*v3.
  Point point_at(const Rational& l1, const Rational& l2) const;
  /// Upper bound over a sub-triangle by interval evaluation.
  Rational upper_bound(std::span<const Point> region) const;
};

/// Symbolic xi over a triangle inside a cell of the refined complex. Throws
/// std::logic_error if the structure is not constant on the triangle.
TriangleObjective build_triangle_objective(const Polygon& polygon, const RoundedComplex& rounded,
                                           const Rational& eps, std::span<const Point> triangle);

struct TriangleMax {
  Point point;
  Rational value;
  Rational upper;
};

/// Branch and bound on the triangle until upper - value <= theta.
TriangleMax maximize_triangle(const TriangleObjective& f, const Rational& theta,
                              std::size_t max_regions = 200000);

// ------------------------------------------------------------------ oracle

struct OracleCertificate {
  Point point;
  Rational achieved;  // exact xi~(point)
  Rational upper;     // certified sup of xi~ over H
  Rational theta;
  Rational weight;           // w_t(H~_t)
  Rational active_weight;    // w_t(H_t)
  Rational dropped_area;     // area(H_t \ H~_t)
  std::size_t kept_cells = 0;
  std::size_t regions = 0;   // branch-and-bound regions examined
  bool reused_guard = false;
};

struct OracleOptions {
  /// Prefer an already chosen guard when its value is within theta of the
  /// certified upper bound.
  bool prefer_existing = true;
  std::size_t max_regions = 400000;
};

/// Per-polygon state shared by all oracle calls of one solve.
class Oracle {
 public:
  explicit Oracle(const Polygon& polygon, OracleOptions options = {});

  /// Max(H, H~_t, w_t, nu/2): rounds the active complex to the grid, then
  /// maximizes xi~ over H by branch and bound.
  OracleCertificate maximize(const CellComplex& complex, unsigned long T, const Rational& eps,
                             const Rational& nu, const GridSpec& grid);

  /// Exact xi~(q) for a rounded complex.
  Rational evaluate(const RoundedComplex& rounded, const std::vector<Rational>& weights,
                    const Point& q);

  const Polygon& polygon() const { return *polygon_; }
  VisibilityCache& visibility() { return cache_; }

 private:
  struct Event {
    Segment segment;
  };
  const std::vector<std::uint32_t>& vertex_events(const Point& r);

  const Polygon* polygon_;
  OracleOptions options_;
  VisibilityCache cache_;
  std::vector<Point> reflex_;
  std::vector<Event> events_;
  std::vector<Segment> zones_;                 // zone of each polygon-polygon event
  std::size_t polygon_events_ = 0;             // events_[0, polygon_events_) have zones
  std::map<Point, std::vector<std::uint32_t>> vertex_events_;
};

/// One-shot convenience wrapper.
OracleCertificate max_oracle(const Polygon& polygon, const CellComplex& complex, unsigned long T,
                             const Rational& eps, const Rational& nu, const GridSpec& grid);

/// (1 - eps)^j for j = 0..count-1.
std::vector<Rational> weight_table(const Rational& eps, std::size_t count);

}  // namespace artgallery

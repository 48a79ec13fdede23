#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "artgallery/geometry.hpp"
#include "artgallery/visibility.hpp"

namespace artgallery {

/// Convex face of a subdivision of H with a constant visibility label.
struct Cell {
  ConvexCell polygon;
  Rational area;
  Point rep;  // strictly interior representative
  /// Indices into the guard list of the guards that see the cell. Repeated
  /// guard positions contribute one index each.
  std::vector<std::uint32_t> label;
};

/// Memoized visibility polygons, keyed by viewpoint.
class VisibilityCache {
 public:
  explicit VisibilityCache(const Polygon& polygon) : polygon_(&polygon) {}
  const VisibilityPolygon& get(const Point& q);
  std::size_t size() const { return cache_.size(); }

 private:
  const Polygon* polygon_;
  std::map<Point, VisibilityPolygon> cache_;
};

/// Convex subdivision of H into cells of constant label w.r.t. the guards.
struct CellComplex {
  std::vector<Point> guards;
  std::vector<Cell> cells;

  Rational total_area() const;
};

/// Convex decomposition of H alone (every label empty).
CellComplex base_complex(const Polygon& polygon);

/// Adds one guard, splitting cells along the edges of V(p).
void add_guard(CellComplex& complex, const Point& guard, VisibilityCache& cache);

CellComplex build_complex(const Polygon& polygon, std::span<const Point> guards);
CellComplex build_complex(const Polygon& polygon, std::span<const Point> guards,
                          VisibilityCache& cache);

/// Splits a convex cell along every segment that crosses its interior.
void split_by_segments(const ConvexCell& cell, std::span<const Segment> segments,
                       std::vector<ConvexCell>& out);

/// Splits a convex cell along every line that crosses its interior.
void split_by_lines(const ConvexCell& cell, std::span<const Line> lines,
                    std::vector<ConvexCell>& out);

/// True when some point of the segment lies strictly inside the convex cell.
bool crosses_interior(const Segment& segment, std::span<const Point> cell);

struct RefinedComplex {
  std::vector<ConvexCell> cells;
  std::vector<std::size_t> parent;  // index of the containing complex cell
  std::vector<Point> seeds;         // vertex set whose pairwise lines refine
};

/// Refines every cell by the lines through all pairs of complex vertices.
/// Coincident lines are inserted once. Quadratic in the number of vertices;
/// intended for small complexes.
RefinedComplex refine_complex(const CellComplex& complex);

/// Fan triangulation from the lexicographically smallest vertex. Returns an
/// empty list for a degenerate cell.
std::vector<ConvexCell> triangulate(std::span<const Point> cell);

/// Distinct visibility traces {q in Q' : q sees x} over x in H, each as a
/// sorted index list. Only traces realized on positive area are reported.
std::vector<std::vector<std::uint32_t>> subsystem_ranges(const Polygon& polygon,
                                                         std::span<const Point> points);

}  // namespace artgallery

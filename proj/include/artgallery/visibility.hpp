#pragma once

#include <memory>
#include <vector>

#include "artgallery/geometry.hpp"

namespace artgallery {

/// How a vertex of a visibility region depends on the viewpoint q.
///  - fixed: the vertex does not move with q.
///  - ray:   the vertex is the intersection of line(q, generator) with `line`
///           (normalized), and it stays on the segment `support`.
struct RaySource {
  Point generator;
  Line line;
  Segment support;
};

struct VisVertex {
  enum class Kind { fixed, ray };
  Point point;
  Kind kind = Kind::fixed;
  std::shared_ptr<const RaySource> source;  // set for ray vertices

  const Point& generator() const { return source->generator; }
  const Line& line() const { return source->line; }
  const Segment& support() const { return source->support; }
};

/// Visibility polygon V(q) of a point in a polygon with holes.
struct VisibilityPolygon {
  Point owner;
  /// Closed region, star-shaped about `owner`. Zero-width spikes (points seen
  /// only along a grazing line) are kept, so membership matches `sees`.
  Ring boundary;
  /// The same region with spikes, repeated and straight-run vertices removed,
  /// annotated with how each vertex depends on the viewpoint.
  std::vector<VisVertex> core;

  Ring core_ring() const;
  Rational area() const { return ring_area(core_ring()); }
};

/// True iff the closed segment pq lies in the closed region of H. Throws
/// std::invalid_argument if either endpoint is exterior.
bool sees(const Polygon& polygon, const Point& p, const Point& q);

/// Largest s >= 0 with origin + [0, s] * direction inside the closed region.
/// Requires origin to be in the closed region and direction != 0.
Rational extent_along_ray(const Polygon& polygon, const Point& origin, const Point& direction);

/// Exact V(q) by an angular sweep over all polygon vertices. Throws
/// std::invalid_argument if q is exterior.
VisibilityPolygon visibility_polygon(const Polygon& polygon, const Point& q);

/// Exact-order angular comparison of direction vectors, starting at +x and
/// going counterclockwise. Returns -1, 0 or 1.
int compare_angle(const Point& a, const Point& b);

}  // namespace artgallery

#pragma once

// Exact 2-D primitives over rationals: points, segments, rings, polygons with
// holes, and the convex-polygon helpers the higher layers are built on.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "artgallery/rational.hpp"

namespace artgallery {

struct ApproxPoint {
  double x = 0, y = 0;
};

/// Exact point. The coordinates are public; code that assigns to them
/// directly must construct a new Point instead, so the cached floating
/// approximation stays in sync.
struct Point {
  Rational x;
  Rational y;

  Point() = default;
  Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  Point(long px, long py) : x(px), y(py) {}

  /// Floating approximation, computed on first use.
  const ApproxPoint& approx() const {
    if (!approx_set_) {
      approx_ = {artgallery::approx(x), artgallery::approx(y)};
      approx_set_ = true;
    }
    return approx_;
  }

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  /// Lexicographic (x, then y). Used for every deterministic tie-break.
  friend bool operator<(const Point& a, const Point& b) {
    const int cx = cmp(a.x, b.x);
    return cx != 0 ? cx < 0 : a.y < b.y;
  }
  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(const Rational& s, const Point& p) { return {s * p.x, s * p.y}; }

 private:
  mutable ApproxPoint approx_;
  mutable bool approx_set_ = false;
};

inline Rational cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline Rational squared_distance(const Point& a, const Point& b) {
  const Point d = a - b;
  return dot(d, d);
}

std::string to_string(const Point& p);

enum class Orientation { right = -1, collinear = 0, left = 1 };

/// Sign of (q - p) x (r - p).
Orientation orientation(const Point& p, const Point& q, const Point& r);
int orient_sign(const Point& p, const Point& q, const Point& r);

inline ApproxPoint approx(const Point& p) { return p.approx(); }

/// Sign of (b - a) x (d - c) from a floating-point filter, or 2 when the
/// filter cannot decide. Never wrong when it returns -1 or 1. The inputs
/// must be approximations within a few ulp.
int approx_cross_sign(const ApproxPoint& a, const ApproxPoint& b, const ApproxPoint& c,
                      const ApproxPoint& d);
int approx_cross_sign(const Point& a, const Point& b, const Point& c, const Point& d);

/// Exact sign of (b - a) x (d - c), filtered.
int cross_sign(const Point& a, const Point& b, const Point& c, const Point& d);

struct Segment {
  Point a;
  Point b;
};

/// True when p lies on the closed segment ab (ab may be degenerate).
bool on_segment(const Point& p, const Point& a, const Point& b);

struct SegmentIntersection {
  enum class Kind { empty, point, overlap };
  Kind kind = Kind::empty;
  Point point;      // valid for Kind::point
  Segment overlap;  // valid for Kind::overlap, endpoints lexicographically ordered
};

/// Exact intersection of two closed segments.
SegmentIntersection segment_intersect(const Segment& s1, const Segment& s2);

/// Intersection point of the supporting lines of ab and cd; nullopt if parallel.
std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c,
                                       const Point& d);

/// Line a*x + b*y = c.
struct Line {
  Rational a;
  Rational b;
  Rational c;

  static Line through(const Point& p, const Point& q);
  Rational eval(const Point& p) const { return a * p.x + b * p.y - c; }
  friend bool operator==(const Line&, const Line&) = default;
};

/// Canonical form so that coincident lines compare equal.
Line normalized(const Line& l);

using Ring = std::vector<Point>;

/// Signed shoelace area; positive iff counterclockwise.
Rational ring_area(std::span<const Point> ring);

/// Sum of the L1 lengths of the ring's edges (an upper bound on its perimeter).
Rational perimeter_bound(std::span<const Point> ring);

enum class Location { interior, boundary, exterior };

Location locate(const Point& p, std::span<const Point> ring);

/// Polygon with holes. Outer ring counterclockwise, holes clockwise.
class Polygon {
 public:
  Polygon() = default;
  /// Validates and normalizes orientation. Throws std::invalid_argument when
  /// the rings are not simple, a hole is not strictly inside the outer ring,
  /// or holes intersect.
  Polygon(Ring outer, std::vector<Ring> holes);

  const Ring& outer() const { return outer_; }
  const std::vector<Ring>& holes() const { return holes_; }
  std::size_t hole_count() const { return holes_.size(); }
  std::size_t vertex_count() const;
  std::vector<Point> vertices() const;
  const std::vector<Segment>& edges() const { return edges_; }
  /// Floating-point copies of the edge endpoints, for filters.
  const std::vector<std::pair<ApproxPoint, ApproxPoint>>& edge_approx() const { return edge_approx_; }
  /// Vertices whose interior angle exceeds pi (they can occlude).
  std::vector<Point> reflex_vertices() const;
  Rational area() const;
  /// Visits each ring: outer first, then holes.
  template <typename F>
  void for_each_ring(F&& f) const {
    f(outer_);
    for (const auto& h : holes_) f(h);
  }

 private:
  Ring outer_;
  std::vector<Ring> holes_;
  std::vector<Segment> edges_;
  std::vector<std::pair<ApproxPoint, ApproxPoint>> edge_approx_;
};

Location locate(const Point& p, const Polygon& polygon);

/// Bounding-box bound on the diameter D: width + height of the bounding box,
/// so D <= bound <= sqrt(2) * D.
Rational diameter_bound(const Polygon& polygon);

struct BoundingBox {
  Point lo;
  Point hi;
};
BoundingBox bounding_box(std::span<const Point> points);
BoundingBox bounding_box(const Polygon& polygon);

/// Convex polygon, counterclockwise, without repeated or collinear vertices.
using ConvexCell = std::vector<Point>;

/// Removes repeated vertices and vertices in the middle of straight runs.
Ring simplify_ring(std::span<const Point> ring);

/// Vertex average; strictly interior for a convex cell of positive area.
Point vertex_centroid(std::span<const Point> ring);

/// Keeps the part of a convex polygon with line.eval(p) >= 0 (side > 0) or
/// <= 0 (side < 0).
ConvexCell clip_convex(std::span<const Point> cell, const Line& line, int side);

/// Sutherland-Hodgman: clips an arbitrary simple polygon by a convex
/// counterclockwise polygon. Degenerate connecting edges may appear in the
/// output but its signed area is exact.
Ring clip_by_convex(std::span<const Point> subject, std::span<const Point> convex);

/// Convex hull (counterclockwise, collinear points dropped).
ConvexCell convex_hull(std::vector<Point> points);

bool is_convex_ccw(std::span<const Point> ring);

}  // namespace artgallery

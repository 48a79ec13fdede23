#include "artgallery/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace artgallery {

std::string to_string(const Point& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

int approx_cross_sign(const ApproxPoint& a, const ApproxPoint& b, const ApproxPoint& c,
                      const ApproxPoint& d) {
  const double v[8] = {a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y};
  double m = 0;
  for (const double x : v) {
    if (std::isnan(x)) return 2;
    m = std::max(m, std::fabs(x));
  }
  if (!(m >= 1e-100 && m <= 1e100)) return 2;
  const double d1 = v[2] - v[0], d2 = v[7] - v[5];
  const double d3 = v[3] - v[1], d4 = v[6] - v[4];
  const double p1 = d1 * d2, p2 = d3 * d4;
  const double det = p1 - p2;
  // Inputs are within 3 ulp, so each difference is within 2e-15 * m.
  const double e = 2e-15 * m;
  const double err = 2 * (e * (std::fabs(d1) + std::fabs(d2) + std::fabs(d3) + std::fabs(d4) + 2 * e) +
                          4e-16 * (std::fabs(p1) + std::fabs(p2)));
  if (det > err) return 1;
  if (det < -err) return -1;
  return 2;
}

int approx_cross_sign(const Point& a, const Point& b, const Point& c, const Point& d) {
  return approx_cross_sign(a.approx(), b.approx(), c.approx(), d.approx());
}

int cross_sign(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int s = approx_cross_sign(a, b, c, d);
  if (s != 2) return s;
  const Rational lhs = (b.x - a.x) * (d.y - c.y);
  const Rational rhs = (b.y - a.y) * (d.x - c.x);
  const int k = cmp(lhs, rhs);
  return k > 0 ? 1 : (k < 0 ? -1 : 0);
}

int orient_sign(const Point& p, const Point& q, const Point& r) { return cross_sign(p, q, p, r); }

Orientation orientation(const Point& p, const Point& q, const Point& r) {
  return static_cast<Orientation>(orient_sign(p, q, r));
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (orient_sign(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c,
                                       const Point& d) {
  const Point r = b - a;
  const Point s = d - c;
  const Rational denom = cross(r, s);
  if (sgn(denom) == 0) return std::nullopt;
  const Rational t = cross(c - a, s) / denom;
  return a + t * r;
}

SegmentIntersection segment_intersect(const Segment& s1, const Segment& s2) {
  SegmentIntersection out;
  const int o1 = orient_sign(s1.a, s1.b, s2.a);
  const int o2 = orient_sign(s1.a, s1.b, s2.b);
  const int o3 = orient_sign(s2.a, s2.b, s1.a);
  const int o4 = orient_sign(s2.a, s2.b, s1.b);

  const bool s1_point = s1.a == s1.b;
  const bool s2_point = s2.a == s2.b;
  if (s1_point || s2_point) {
    const Point& p = s1_point ? s1.a : s2.a;
    const Segment& other = s1_point ? s2 : s1;
    if (on_segment(p, other.a, other.b)) {
      out.kind = SegmentIntersection::Kind::point;
      out.point = p;
    }
    return out;
  }

  if (o1 == 0 && o2 == 0) {
    // Collinear: intersect the parameter intervals along the dominant axis.
    auto lo1 = std::min(s1.a, s1.b), hi1 = std::max(s1.a, s1.b);
    auto lo2 = std::min(s2.a, s2.b), hi2 = std::max(s2.a, s2.b);
    const Point lo = std::max(lo1, lo2);
    const Point hi = std::min(hi1, hi2);
    if (hi < lo) return out;
    if (lo == hi) {
      out.kind = SegmentIntersection::Kind::point;
      out.point = lo;
    } else {
      out.kind = SegmentIntersection::Kind::overlap;
      out.overlap = {lo, hi};
    }
    return out;
  }

  if (o1 * o2 <= 0 && o3 * o4 <= 0) {
    out.kind = SegmentIntersection::Kind::point;
    if (o1 == 0)
      out.point = s2.a;
    else if (o2 == 0)
      out.point = s2.b;
    else if (o3 == 0)
      out.point = s1.a;
    else if (o4 == 0)
      out.point = s1.b;
    else
      out.point = *line_intersection(s1.a, s1.b, s2.a, s2.b);
  }
  return out;
}

Line Line::through(const Point& p, const Point& q) {
  Line l;
  l.a = q.y - p.y;
  l.b = p.x - q.x;
  l.c = l.a * p.x + l.b * p.y;
  return l;
}

Line normalized(const Line& l) {
  Line out = l;
  const Rational& lead = sgn(l.a) != 0 ? l.a : l.b;
  if (sgn(lead) == 0) return out;
  const Rational inv = 1 / lead;
  out.a *= inv;
  out.b *= inv;
  out.c *= inv;
  return out;
}

Rational ring_area(std::span<const Point> ring) {
  Rational twice = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    twice += a.x * b.y - a.y * b.x;
  }
  return twice / 2;
}

Rational perimeter_bound(std::span<const Point> ring) {
  Rational total = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point d = ring[(i + 1) % n] - ring[i];
    total += abs(d.x) + abs(d.y);
  }
  return total;
}

Location locate(const Point& p, std::span<const Point> ring) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    if (on_segment(p, a, b)) return Location::boundary;
    const bool a_above = a.y > p.y;
    const bool b_above = b.y > p.y;
    if (a_above == b_above) continue;
    const int o = orient_sign(a, b, p);
    // Upward edge with p on its left, or downward edge with p on its right.
    if ((b_above && o > 0) || (a_above && o < 0)) inside = !inside;
  }
  return inside ? Location::interior : Location::exterior;
}

namespace {

bool ring_is_simple(const Ring& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (ring[i] == ring[(i + 1) % n]) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e1{ring[i], ring[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      const Segment e2{ring[j], ring[(j + 1) % n]};
      const auto hit = segment_intersect(e1, e2);
      if (hit.kind == SegmentIntersection::Kind::empty) continue;
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (!adjacent) return false;
      if (hit.kind == SegmentIntersection::Kind::overlap) return false;
    }
  }
  return sgn(ring_area(ring)) != 0;
}

bool rings_touch(const Ring& r1, const Ring& r2) {
  for (std::size_t i = 0; i < r1.size(); ++i) {
    const Segment e1{r1[i], r1[(i + 1) % r1.size()]};
    for (std::size_t j = 0; j < r2.size(); ++j) {
      const Segment e2{r2[j], r2[(j + 1) % r2.size()]};
      if (segment_intersect(e1, e2).kind != SegmentIntersection::Kind::empty) return true;
    }
  }
  return false;
}

}  // namespace

Polygon::Polygon(Ring outer, std::vector<Ring> holes)
    : outer_(std::move(outer)), holes_(std::move(holes)) {
  if (!ring_is_simple(outer_)) throw std::invalid_argument("outer ring is not a simple polygon");
  if (sgn(ring_area(outer_)) < 0) std::reverse(outer_.begin(), outer_.end());
  for (auto& hole : holes_) {
    if (!ring_is_simple(hole)) throw std::invalid_argument("hole ring is not a simple polygon");
    if (sgn(ring_area(hole)) > 0) std::reverse(hole.begin(), hole.end());
    if (rings_touch(outer_, hole)) throw std::invalid_argument("hole touches the outer ring");
    if (locate(hole.front(), outer_) != Location::interior)
      throw std::invalid_argument("hole is not inside the outer ring");
  }
  for (std::size_t i = 0; i < holes_.size(); ++i) {
    for (std::size_t j = i + 1; j < holes_.size(); ++j) {
      if (rings_touch(holes_[i], holes_[j])) throw std::invalid_argument("holes intersect");
      if (locate(holes_[i].front(), holes_[j]) != Location::exterior ||
          locate(holes_[j].front(), holes_[i]) != Location::exterior)
        throw std::invalid_argument("holes are nested");
    }
  }
  edges_.reserve(vertex_count());
  for_each_ring([&](const Ring& r) {
    for (std::size_t i = 0; i < r.size(); ++i) edges_.push_back({r[i], r[(i + 1) % r.size()]});
  });
  for (const auto& e : edges_) edge_approx_.push_back({approx(e.a), approx(e.b)});
}

std::size_t Polygon::vertex_count() const {
  std::size_t n = outer_.size();
  for (const auto& h : holes_) n += h.size();
  return n;
}

std::vector<Point> Polygon::vertices() const {
  std::vector<Point> out;
  out.reserve(vertex_count());
  for_each_ring([&](const Ring& r) { out.insert(out.end(), r.begin(), r.end()); });
  return out;
}


std::vector<Point> Polygon::reflex_vertices() const {
  std::vector<Point> out;
  // The interior lies to the left of every ring edge, so a right turn marks a
  // reflex corner.
  for_each_ring([&](const Ring& r) {
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i)
      if (orient_sign(r[(i + n - 1) % n], r[i], r[(i + 1) % n]) < 0) out.push_back(r[i]);
  });
  return out;
}

Rational Polygon::area() const {
  Rational a = ring_area(outer_);
  for (const auto& h : holes_) a += ring_area(h);
  return a;
}

Location locate(const Point& p, const Polygon& polygon) {
  const Location outer = locate(p, polygon.outer());
  if (outer != Location::interior) return outer;
  for (const auto& hole : polygon.holes()) {
    const Location l = locate(p, hole);
    if (l == Location::boundary) return Location::boundary;
    if (l == Location::interior) return Location::exterior;
  }
  return Location::interior;
}

BoundingBox bounding_box(std::span<const Point> points) {
  BoundingBox box{points.front(), points.front()};
  for (const auto& p : points) {
    if (p.x < box.lo.x) box.lo = Point(p.x, box.lo.y);
    if (p.y < box.lo.y) box.lo = Point(box.lo.x, p.y);
    if (p.x > box.hi.x) box.hi = Point(p.x, box.hi.y);
    if (p.y > box.hi.y) box.hi = Point(box.hi.x, p.y);
  }
  return box;
}

BoundingBox bounding_box(const Polygon& polygon) { return bounding_box(polygon.outer()); }

Rational diameter_bound(const Polygon& polygon) {
  const auto box = bounding_box(polygon);
  return (box.hi.x - box.lo.x) + (box.hi.y - box.lo.y);
}

Ring simplify_ring(std::span<const Point> ring) {
  Ring pts;
  for (const auto& p : ring)
    if (pts.empty() || pts.back() != p) pts.push_back(p);
  while (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    Ring next;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = pts[(i + n - 1) % n];
      const Point& b = pts[i];
      const Point& c = pts[(i + 1) % n];
      // Drop b when it sits strictly inside the straight run a-b-c.
      if (orient_sign(a, b, c) == 0 && sgn(dot(b - a, c - b)) > 0) {
        changed = true;
        continue;
      }
      next.push_back(b);
    }
    pts = std::move(next);
  }
  return pts;
}

Point vertex_centroid(std::span<const Point> ring) {
  Rational sx = 0, sy = 0;
  for (const auto& p : ring) {
    sx += p.x;
    sy += p.y;
  }
  const Rational n(static_cast<long>(ring.size()));
  return {sx / n, sy / n};
}

ConvexCell clip_convex(std::span<const Point> cell, const Line& line, int side) {
  ConvexCell out;
  const std::size_t n = cell.size();
  if (n == 0) return out;
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = sgn(line.eval(cell[i])) * side;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (s[i] >= 0) out.push_back(cell[i]);
    if ((s[i] > 0 && s[j] < 0) || (s[i] < 0 && s[j] > 0)) {
      const Rational vi = line.eval(cell[i]);
      const Rational vj = line.eval(cell[j]);
      const Rational t = vi / (vi - vj);
      out.push_back(cell[i] + t * (cell[j] - cell[i]));
    }
  }
  return simplify_ring(out);
}

Ring clip_by_convex(std::span<const Point> subject, std::span<const Point> convex) {
  Ring current(subject.begin(), subject.end());
  const std::size_t m = convex.size();
  for (std::size_t k = 0; k < m && !current.empty(); ++k) {
    const Point& a = convex[k];
    const Point& b = convex[(k + 1) % m];
    Ring next;
    const std::size_t n = current.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& p = current[i];
      const Point& q = current[(i + 1) % n];
      const int sp = orient_sign(a, b, p);
      const int sq = orient_sign(a, b, q);
      if (sp >= 0) next.push_back(p);
      if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) next.push_back(*line_intersection(p, q, a, b));
    }
    current = std::move(next);
  }
  return current;
}

ConvexCell convex_hull(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  ConvexCell hull(2 * points.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    while (k >= 2 && orient_sign(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  for (std::size_t i = points.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && orient_sign(hull[k - 2], hull[k - 1], points[i - 1]) <= 0) --k;
    hull[k++] = points[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

bool is_convex_ccw(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (orient_sign(ring[i], ring[(i + 1) % n], ring[(i + 2) % n]) < 0) return false;
  return sgn(ring_area(ring)) > 0;
}

}  // namespace artgallery

#include "artgallery/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace artgallery {

namespace {

int half_plane(const Point& d) { return (sgn(d.y) > 0 || (sgn(d.y) == 0 && sgn(d.x) > 0)) ? 0 : 1; }

/// Parameters s >= 0 at which origin + s * dir meets the closed segment ab.
/// Floating-point copy of a ray, for filtering.
struct ApproxRay {
  ApproxPoint origin, dir;
  ApproxRay(const Point& o, const Point& d) : origin(approx(o)), dir(approx(d)) {}
};

/// False when the ray certainly misses the closed segment ab: a hit needs
/// s >= 0 and 0 <= u <= 1, where s = cross(a - o, e) / den, u = cross(a - o, dir) / den
/// and u - 1 = cross(b - o, dir) / den.
bool may_hit(const ApproxRay& r, const ApproxPoint& a, const ApproxPoint& b) {
  const ApproxPoint zero;
  const int sd = approx_cross_sign(zero, r.dir, a, b);
  if (sd == 2 || sd == 0) return true;
  const int ss = approx_cross_sign(r.origin, a, a, b);
  if (ss != 2 && ss * sd < 0) return false;
  const int su = approx_cross_sign(r.origin, a, zero, r.dir);
  if (su != 2 && su * sd < 0) return false;
  const int su1 = approx_cross_sign(r.origin, b, zero, r.dir);
  return !(su1 != 2 && su1 * sd > 0);
}

void ray_segment_params(const Point& origin, const Point& dir, const Point& a, const Point& b,
                        std::vector<Rational>& out) {
  const Point e = b - a;
  const Rational denom = cross(dir, e);
  const Point ao = a - origin;
  if (sgn(denom) == 0) {
    if (sgn(cross(ao, dir)) != 0) return;
    const Rational dd = dot(dir, dir);
    const Rational sa = dot(ao, dir) / dd;
    const Rational sb = dot(b - origin, dir) / dd;
    if (sgn(sa) >= 0) out.push_back(sa);
    if (sgn(sb) >= 0) out.push_back(sb);
    if ((sgn(sa) < 0) != (sgn(sb) < 0)) out.push_back(Rational(0));
    return;
  }
  const Rational s = cross(ao, e) / denom;
  const Rational u = cross(ao, dir) / denom;
  if (sgn(s) >= 0 && sgn(u) >= 0 && u <= 1) out.push_back(s);
}

struct Direction {
  Point dir;
  std::vector<Point> vertices;  // polygon vertices lying on this ray
};

}  // namespace

int compare_angle(const Point& a, const Point& b) {
  const int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb ? -1 : 1;
  const int c = sgn(cross(a, b));
  return c > 0 ? -1 : (c < 0 ? 1 : 0);
}

Ring VisibilityPolygon::core_ring() const {
  Ring r;
  r.reserve(core.size());
  for (const auto& v : core) r.push_back(v.point);
  return r;
}

bool sees(const Polygon& polygon, const Point& p, const Point& q) {
  if (locate(p, polygon) == Location::exterior || locate(q, polygon) == Location::exterior)
    throw std::invalid_argument("sees: endpoint outside the polygon");
  if (p == q) return true;
  const Point d = q - p;
  std::vector<Rational> params{Rational(0), Rational(1)};
  const ApproxRay ar(p, d);
  const auto& edges = polygon.edges();
  const auto& fe = polygon.edge_approx();
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (may_hit(ar, fe[i].first, fe[i].second)) ray_segment_params(p, d, edges[i].a, edges[i].b, params);
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  for (std::size_t i = 0; i + 1 < params.size() && params[i] < 1; ++i) {
    const Rational mid = (params[i] + params[i + 1]) / 2;
    if (locate(p + mid * d, polygon) == Location::exterior) return false;
  }
  return true;
}

Rational extent_along_ray(const Polygon& polygon, const Point& origin, const Point& direction) {
  std::vector<Rational> params{Rational(0)};
  const ApproxRay ar(origin, direction);
  const auto& edges = polygon.edges();
  const auto& fe = polygon.edge_approx();
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (may_hit(ar, fe[i].first, fe[i].second))
      ray_segment_params(origin, direction, edges[i].a, edges[i].b, params);
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    const Rational mid = (params[i] + params[i + 1]) / 2;
    if (locate(origin + mid * direction, polygon) == Location::exterior) return params[i];
  }
  return params.back();
}

namespace {

/// Nearest transversal edge crossing of a ray that passes through no vertex.
/// Returns the blocking edge, or nullopt when the ray leaves H immediately.
std::optional<Segment> blocking_edge(const Polygon& polygon, const std::vector<Segment>& edges,
                                     const Point& q, const Point& dir) {
  std::optional<Rational> best;
  std::optional<Segment> best_edge;
  std::vector<Rational> params;
  const ApproxRay ar(q, dir);
  const auto& fe = polygon.edge_approx();
  // Floating estimates of the hit parameter with a generous forward error
  // bound. Edges whose lower estimate lies beyond the upper estimate of a
  // certain hit cannot be the nearest and skip the exact test.
  std::vector<double> lower(edges.size(), -INFINITY);
  std::vector<bool> candidate(edges.size(), false);
  double sure = INFINITY;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!may_hit(ar, fe[i].first, fe[i].second)) continue;
    candidate[i] = true;
    const ApproxPoint& a = fe[i].first;
    const ApproxPoint& b = fe[i].second;
    const ApproxPoint& o = ar.origin;
    const ApproxPoint& d = ar.dir;
    const double ex = b.x - a.x, ey = b.y - a.y, ox = a.x - o.x, oy = a.y - o.y;
    const double den = d.x * ey - d.y * ex;
    // Magnitudes of the inputs to each difference bound its rounding error.
    const double mx = std::fabs(a.x) + std::fabs(b.x) + std::fabs(o.x);
    const double my = std::fabs(a.y) + std::fabs(b.y) + std::fabs(o.y);
    const double den_err = 1e-8 * (std::fabs(d.x) * my + std::fabs(d.y) * mx);
    if (!(std::fabs(den) > 2 * den_err)) continue;
    const double sa = (ox * ey - oy * ex) / den;
    const double ua = (ox * d.y - oy * d.x) / den;
    const double err = 1e-8 * (mx * my + std::fabs(sa) * den_err * 1e8) / std::fabs(den) * 2;
    const double uerr = (1e-8 * (std::fabs(d.y) * mx + std::fabs(d.x) * my) + std::fabs(ua) * den_err) /
                        std::fabs(den) * 2;
    if (!std::isfinite(sa) || !std::isfinite(err) || !std::isfinite(uerr)) continue;
    lower[i] = sa - err;
    if (ua - uerr > 0 && ua + uerr < 1 && sa - err > 0) sure = std::min(sure, sa + err);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Segment& e = edges[i];
    if (!candidate[i] || lower[i] > sure) continue;
    params.clear();
    ray_segment_params(q, dir, e.a, e.b, params);
    for (const auto& s : params) {
      if (sgn(s) <= 0) continue;
      if (!best || s < *best) {
        best = s;
        best_edge = e;
      }
    }
  }
  if (!best) return std::nullopt;
  if (locate(q + (*best / 2) * dir, polygon) == Location::exterior) return std::nullopt;
  return best_edge;
}

VisVertex make_vertex(const Point& q, const Direction& d, const Segment& edge) {
  VisVertex v;
  v.point = *line_intersection(q, q + d.dir, edge.a, edge.b);
  for (const auto& x : d.vertices) {
    if (x == v.point) {
      v.kind = VisVertex::Kind::fixed;
      return v;
    }
  }
  v.kind = VisVertex::Kind::ray;
  v.source = std::make_shared<const RaySource>(
      RaySource{d.vertices.empty() ? q + d.dir : d.vertices.front(),
                normalized(Line::through(edge.a, edge.b)), edge});
  return v;
}

VisVertex owner_vertex(const Point& q) {
  VisVertex v;
  v.point = q;
  v.kind = VisVertex::Kind::fixed;
  return v;
}

std::vector<VisVertex> simplify_core(std::vector<VisVertex> pts) {
  std::vector<VisVertex> dedup;
  for (auto& p : pts)
    if (dedup.empty() || dedup.back().point != p.point) dedup.push_back(std::move(p));
  while (dedup.size() > 1 && dedup.front().point == dedup.back().point) dedup.pop_back();
  bool changed = true;
  while (changed && dedup.size() >= 3) {
    changed = false;
    std::vector<VisVertex> next;
    const std::size_t n = dedup.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = dedup[(i + n - 1) % n].point;
      const Point& b = dedup[i].point;
      const Point& c = dedup[(i + 1) % n].point;
      if (orient_sign(a, b, c) == 0) {
        // Straight run (drop the middle) or a zero-width spike (drop the tip).
        changed = true;
        continue;
      }
      next.push_back(dedup[i]);
    }
    dedup = std::move(next);
    // Removing one spike tip can expose consecutive duplicates.
    std::vector<VisVertex> again;
    for (auto& p : dedup)
      if (again.empty() || again.back().point != p.point) again.push_back(std::move(p));
    while (again.size() > 1 && again.front().point == again.back().point) again.pop_back();
    dedup = std::move(again);
  }
  if (dedup.size() < 3) dedup.clear();
  return dedup;
}

}  // namespace

VisibilityPolygon visibility_polygon(const Polygon& polygon, const Point& q) {
  if (locate(q, polygon) == Location::exterior)
    throw std::invalid_argument("visibility_polygon: viewpoint outside the polygon");

  std::vector<Direction> dirs;
  for (const auto& v : polygon.vertices())
    if (v != q) dirs.push_back({v - q, {v}});
  for (const auto& axis : {Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, -1)})
    dirs.push_back({axis, {}});
  std::stable_sort(dirs.begin(), dirs.end(),
                   [](const Direction& a, const Direction& b) { return compare_angle(a.dir, b.dir) < 0; });

  // Merge directions along the same ray, nearest vertex first.
  std::vector<Direction> rays;
  for (auto& d : dirs) {
    if (!rays.empty() && compare_angle(rays.back().dir, d.dir) == 0) {
      auto& r = rays.back();
      r.vertices.insert(r.vertices.end(), d.vertices.begin(), d.vertices.end());
      if (r.vertices.size() == d.vertices.size() && !d.vertices.empty()) r.dir = d.dir;
      continue;
    }
    rays.push_back(std::move(d));
  }
  for (auto& r : rays) {
    std::sort(r.vertices.begin(), r.vertices.end(), [&](const Point& a, const Point& b) {
      return squared_distance(a, q) < squared_distance(b, q);
    });
    if (!r.vertices.empty()) r.dir = r.vertices.front() - q;
  }

  const auto& edges = polygon.edges();
  const std::size_t m = rays.size();
  // Blocking edge of the open sector between ray i and ray i+1.
  std::vector<std::optional<Segment>> sector(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Point mid = rays[i].dir + rays[(i + 1) % m].dir;
    sector[i] = blocking_edge(polygon, edges, q, mid);
  }

  // Corners with interior angle >= pi.
  std::vector<Point> open_corners;
  polygon.for_each_ring([&](const Ring& r) {
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i)
      if (orient_sign(r[(i + n - 1) % n], r[i], r[(i + 1) % n]) <= 0) open_corners.push_back(r[i]);
  });
  std::sort(open_corners.begin(), open_corners.end());

  VisibilityPolygon out;
  out.owner = q;
  std::vector<VisVertex> full;
  std::vector<bool> is_spike;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& ray = rays[i];
    const auto& before = sector[(i + m - 1) % m];
    const auto& after = sector[i];
    const VisVertex a = before ? make_vertex(q, ray, *before) : owner_vertex(q);
    const VisVertex b = after ? make_vertex(q, ray, *after) : owner_vertex(q);

    // The ray can only run on past the farther of a and b through a vertex
    // whose interior angle is at least pi, or when q is on the boundary.
    const Rational da = squared_distance(a.point, q), db = squared_distance(b.point, q);
    const Point& far = da < db ? b.point : a.point;
    const bool may_spike =
        !before || !after ||
        (std::find(ray.vertices.begin(), ray.vertices.end(), far) != ray.vertices.end() &&
         std::binary_search(open_corners.begin(), open_corners.end(), far));

    full.push_back(a);
    is_spike.push_back(false);
    std::optional<Point> tip;
    if (may_spike) {
      const Point t = q + extent_along_ray(polygon, q, ray.dir) * ray.dir;
      const Rational tip_d = squared_distance(t, q);
      if (tip_d > da && tip_d > db) tip = t;
    }
    if (tip) {
      VisVertex s;
      s.point = *tip;
      s.kind = VisVertex::Kind::fixed;
      full.push_back(s);
      is_spike.push_back(true);
    }
    full.push_back(b);
    is_spike.push_back(false);
  }

  for (const auto& v : full)
    if (out.boundary.empty() || out.boundary.back() != v.point) out.boundary.push_back(v.point);
  while (out.boundary.size() > 1 && out.boundary.front() == out.boundary.back())
    out.boundary.pop_back();

  std::vector<VisVertex> core;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (!is_spike[i]) core.push_back(full[i]);
  out.core = simplify_core(std::move(core));
  return out;
}

}  // namespace artgallery

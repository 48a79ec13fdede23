#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <tuple>

#include "artgallery/oracle.hpp"

namespace artgallery {

namespace {

/// Closed segment meets closed convex cell.
bool segment_meets(const Segment& s, std::span<const Point> cell) {
  Rational t0(0), t1(1);
  const Point d = s.b - s.a;
  const std::size_t n = cell.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = cell[i];
    const Point e = cell[(i + 1) % n] - a;
    const Rational f0 = cross(e, s.a - a);
    const Rational df = cross(e, d);
    const int sg = sgn(df);
    if (sg == 0) {
      if (sgn(f0) < 0) return false;
      continue;
    }
    const Rational t = -f0 / df;
    if (sg > 0) {
      if (t > t0) t0 = t;
    } else if (t < t1) {
      t1 = t;
    }
    if (t0 > t1) return false;
  }
  return true;
}

/// Segment from `from` in direction `dir` to where it leaves H; nullopt if it
/// leaves immediately.
std::optional<Segment> ray_to_exit(const Polygon& h, const Point& from, const Point& dir) {
  const Rational ext = extent_along_ray(h, from, dir);
  if (sgn(ext) <= 0) return std::nullopt;
  return Segment{from, from + ext * dir};
}

bool on_closed_cell(const Point& p, std::span<const Point> cell) {
  return locate(p, cell) != Location::exterior;
}

struct CellBound {
  Rational upper;  // weighted
  Rational value;  // weighted, at the region's centroid
  bool invalid = false;
  bool constant = false;  // structure fixed and no vertex moves: same value on the whole region
  std::optional<Point> pivot;  // reflex generator touching the region
};

struct Region {
  ConvexCell poly;
  std::vector<std::uint32_t> crossing;
  std::vector<CellBound> cells;
  Rational upper;
  unsigned depth = 0;
};

/// A dyadic rational in the middle half of [lo, hi], with small denominator.
Rational middle_dyadic(const Rational& lo, const Rational& hi) {
  const Rational quarter = (hi - lo) / 4;
  const Rational a = lo + quarter, b = hi - quarter;
  const Rational step = pow2(floor_log2(b - a));
  return Rational(ceil(a / step)) * step;
}

/// Axis-parallel cut across the longer side of the bounding box.
Line bisect_cut(std::span<const Point> poly) {
  const BoundingBox box = bounding_box(poly);
  if (box.hi.x - box.lo.x >= box.hi.y - box.lo.y) return {1, 0, middle_dyadic(box.lo.x, box.hi.x)};
  return {0, 1, middle_dyadic(box.lo.y, box.hi.y)};
}

/// A point of small bit size near the middle of the region.
Point middle_point(std::span<const Point> poly) {
  const Point c = vertex_centroid(poly);
  const BoundingBox box = bounding_box(poly);
  const Rational w = std::min(box.hi.x - box.lo.x, box.hi.y - box.lo.y) / 8;
  if (sgn(w) == 0) return c;
  Point p{middle_dyadic(c.x - w, c.x + w), middle_dyadic(c.y - w, c.y + w)};
  return locate(p, poly) == Location::interior ? p : c;
}

/// An interior point of small bit size near the vertex centroid: the centroid
/// rounded to the coarsest dyadic grid that keeps it inside.
Point interior_dyadic(std::span<const Point> poly) {
  const Point c = vertex_centroid(poly);
  const BoundingBox box = bounding_box(poly);
  const Rational extent = std::min(box.hi.x - box.lo.x, box.hi.y - box.lo.y);
  if (sgn(extent) == 0) return c;
  const long top = floor_log2(extent) - 2;
  const Rational half(1, 2);
  for (long e = top; e > top - 48; --e) {
    const Rational step = pow2(e);
    const Point p{Rational(floor(c.x / step + half)) * step, Rational(floor(c.y / step + half)) * step};
    if (locate(p, poly) == Location::interior) return p;
  }
  return c;
}

}  // namespace

Oracle::Oracle(const Polygon& polygon, OracleOptions options)
    : polygon_(&polygon), options_(options), cache_(polygon), reflex_(polygon.reflex_vertices()) {
  std::set<std::tuple<Point, Point, Point>> seen;
  const auto vertices = polygon.vertices();
  for (const auto& a : reflex_) {
    for (const auto& b : vertices) {
      if (a == b || !sees(polygon, a, b)) continue;
      const auto seg = ray_to_exit(polygon, a, a - b);
      if (!seg) continue;
      const auto zone = ray_to_exit(polygon, a, b - a);
      if (!zone) continue;
      if (!seen.insert({a, seg->b, zone->b}).second) continue;
      events_.push_back({*seg});
      zones_.push_back(*zone);
    }
  }
  polygon_events_ = events_.size();
}

const std::vector<std::uint32_t>& Oracle::vertex_events(const Point& r) {
  auto it = vertex_events_.find(r);
  if (it != vertex_events_.end()) return it->second;
  std::vector<std::uint32_t> ids;
  if (locate(r, *polygon_) != Location::exterior) {
    for (const auto& u : reflex_) {
      if (u == r || !sees(*polygon_, u, r)) continue;
      const auto seg = ray_to_exit(*polygon_, u, u - r);
      if (!seg) continue;
      ids.push_back(static_cast<std::uint32_t>(events_.size()));
      events_.push_back({*seg});
    }
  }
  return vertex_events_.emplace(r, std::move(ids)).first->second;
}

Rational Oracle::evaluate(const RoundedComplex& rounded, const std::vector<Rational>& weights,
                          const Point& q) {
  const VisibilityPolygon& vis = cache_.get(q);
  const Ring ring = vis.core_ring();
  Rational sum(0);
  for (const auto& k : rounded.kept) sum += weights[k.exponent] * ring_area(clip_by_convex(ring, k.cell));
  return sum;
}

OracleCertificate Oracle::maximize(const CellComplex& complex, unsigned long T, const Rational& eps,
                                   const Rational& nu, const GridSpec& grid) {
  const Polygon& h = *polygon_;
  const RoundedComplex rounded = round_complex(complex, T, grid, h);
  const auto weights = weight_table(eps, T + 1);
  const std::size_t K = rounded.kept.size();

  OracleCertificate cert;
  cert.kept_cells = K;
  cert.dropped_area = rounded.dropped_area;
  cert.weight = 0;
  cert.active_weight = 0;
  for (const auto& c : complex.cells)
    if (c.label.size() < T) cert.active_weight += weights[c.label.size()] * c.area;
  std::vector<Rational> cap(K);
  for (std::size_t k = 0; k < K; ++k) {
    cap[k] = weights[rounded.kept[k].exponent] * rounded.kept[k].area;
    cert.weight += cap[k];
  }
  const Rational n(static_cast<unsigned long>(h.vertex_count()));
  cert.theta = nu * cert.weight / (2 * n);

  // Floating bounding boxes of the kept cells, to skip clipping cells that a
  // visibility region certainly misses.
  struct Box {
    double lx, ly, hx, hy;
  };
  const auto box_of = [](const auto& pts, auto get) {
    Box b{INFINITY, INFINITY, -INFINITY, -INFINITY};
    for (const auto& p : pts) {
      const ApproxPoint a = approx(get(p));
      b.lx = std::min(b.lx, a.x);
      b.ly = std::min(b.ly, a.y);
      b.hx = std::max(b.hx, a.x);
      b.hy = std::max(b.hy, a.y);
    }
    return b;
  };
  const auto apart = [](const Box& a, const Box& b) {
    const double m = 1e-9 * (1 + std::max({std::fabs(a.lx), std::fabs(a.ly), std::fabs(a.hx), std::fabs(a.hy)}));
    return a.hx + m < b.lx || b.hx + m < a.lx || a.hy + m < b.ly || b.hy + m < a.ly;
  };
  std::vector<Box> cell_box(K);
  for (std::size_t k = 0; k < K; ++k)
    cell_box[k] = box_of(rounded.kept[k].cell, [](const Point& p) -> const Point& { return p; });

  // Guards and polygon vertices recur across iterations and are cached;
  // boundary points of regions are not.
  const auto value_at = [&](const Point& q, bool keep) {
    std::optional<VisibilityPolygon> fresh;
    if (!keep) fresh = visibility_polygon(h, q);
    const VisibilityPolygon& vis = keep ? cache_.get(q) : *fresh;
    const Box vis_box = box_of(vis.core, [](const VisVertex& v) -> const Point& { return v.point; });
    const Ring ring = vis.core_ring();
    Rational sum(0);
    for (std::size_t k = 0; k < K; ++k)
      if (!apart(vis_box, cell_box[k]))
        sum += weights[rounded.kept[k].exponent] * ring_area(clip_by_convex(ring, rounded.kept[k].cell));
    return sum;
  };

  // Candidates with exact values: polygon vertices and chosen guards.
  struct Best {
    Point point;
    Rational value;
    bool set = false;
  } best;
  const auto offer = [&](const Point& q, const Rational& v) {
    if (!best.set || v > best.value || (v == best.value && q < best.point)) {
      best.point = q;
      best.value = v;
      best.set = true;
    }
  };
  std::vector<std::pair<Point, Rational>> guard_values;
  {
    std::set<Point> distinct(complex.guards.begin(), complex.guards.end());
    for (const auto& g : distinct) guard_values.push_back({g, value_at(g, true)});
    for (const auto& [g, v] : guard_values) offer(g, v);
    for (const auto& v : h.vertices()) offer(v, value_at(v, true));
  }

  if (K == 0) {
    cert.point = best.point;
    cert.achieved = 0;
    cert.upper = 0;
    return cert;
  }

  // Events that can change the structure of V(q) ∩ R~ for each kept cell.
  std::vector<std::vector<std::uint32_t>> affects;
  const auto note = [&](std::uint32_t e, std::size_t k) {
    if (affects.size() < events_.size()) affects.resize(events_.size());
    affects[e].push_back(static_cast<std::uint32_t>(k));
  };
  for (std::size_t k = 0; k < K; ++k) {
    const ConvexCell& cell = rounded.kept[k].cell;
    for (std::uint32_t e = 0; e < polygon_events_; ++e)
      if (segment_meets(zones_[e], cell)) note(e, k);
    for (const auto& r : cell)
      for (const auto e : vertex_events(r)) note(e, k);
  }
  affects.resize(events_.size());
  std::vector<std::uint32_t> relevant;
  for (std::uint32_t e = 0; e < affects.size(); ++e) {
    auto& list = affects[e];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (!list.empty()) relevant.push_back(e);
  }

  std::size_t regions = 0;
  const auto make_region = [&](ConvexCell poly, const std::vector<std::uint32_t>& parent_crossing,
                               const std::vector<CellBound>* parent, unsigned depth) {
    ++regions;
    Region r;
    r.depth = depth;
    r.poly = std::move(poly);
    for (const auto e : parent_crossing)
      if (crosses_interior(events_[e].segment, r.poly)) r.crossing.push_back(e);
    std::vector<bool> invalid(K, false);
    for (const auto e : r.crossing)
      for (const auto k : affects[e]) invalid[k] = true;

    const Point q0 = interior_dyadic(r.poly);
    const VisibilityPolygon vis = visibility_polygon(h, q0);
    const Ring core = vis.core_ring();
    const Box vis_box = box_of(vis.core, [](const VisVertex& v) -> const Point& { return v.point; });
    Rational total(0);
    r.cells.resize(K);
    r.upper = 0;
    for (std::size_t k = 0; k < K; ++k) {
      const Rational& w = weights[rounded.kept[k].exponent];
      CellBound& b = r.cells[k];
      if (parent && ((*parent)[k].constant || sgn((*parent)[k].upper) == 0)) {
        b = (*parent)[k];
        b.pivot.reset();
        total += b.value;
        r.upper += b.upper;
        continue;
      }
      const auto ring = apart(vis_box, cell_box[k]) ? std::optional<std::vector<VisVertex>>(std::in_place)
                                                     : clip_tracked(vis.core, rounded.kept[k].cell);
      if (ring) {
        Ring pts;
        pts.reserve(ring->size());
        for (const auto& v : *ring) pts.push_back(v.point);
        b.value = w * ring_area(pts);
      } else {
        b.value = w * ring_area(clip_by_convex(core, rounded.kept[k].cell));
      }
      b.invalid = invalid[k] || !ring;
      b.upper = cap[k];
      if (parent && (*parent)[k].upper < b.upper) b.upper = (*parent)[k].upper;
      b.constant = !b.invalid && std::none_of(ring->begin(), ring->end(), [](const VisVertex& v) {
                     return v.kind == VisVertex::Kind::ray;
                   });
      if (b.constant) b.upper = b.value;
      if (!b.invalid && b.value < b.upper) {
        const Rational tb = w * tracked_area_bound(*ring, r.poly);
        if (tb < b.value) throw InvariantViolation("region bound below the value at its centroid");
        if (tb < b.upper) b.upper = tb;
        for (const auto& v : *ring)
          if (v.kind == VisVertex::Kind::ray && on_closed_cell(v.generator(), r.poly)) {
            b.pivot = v.generator();
            break;
          }
      }
      total += b.value;
      r.upper += b.upper;
    }
    offer(q0, total);
    return r;
  };

  const auto cmp_region = [](const Region& a, const Region& b) { return a.upper < b.upper; };
  std::priority_queue<Region, std::vector<Region>, decltype(cmp_region)> queue(cmp_region);
  for (const auto& root : base_complex(h).cells) queue.push(make_region(root.polygon, relevant, nullptr, 0));

  std::set<Point> boundary_seen;
  while (!queue.empty()) {
    if (queue.top().upper <= best.value + cert.theta) break;
    if (regions >= options_.max_regions) break;
    Region r = queue.top();
    queue.pop();
    // Maxima often sit on the boundary of H, which interior points never reach.
    for (const auto& v : r.poly)
      if (!boundary_seen.count(v) && locate(v, h) == Location::boundary) {
        boundary_seen.insert(v);
        offer(v, value_at(v, false));
      }
    if (r.upper <= best.value + cert.theta) continue;

    std::size_t worst = 0;
    Rational worst_slack = -1;
    for (std::size_t k = 0; k < K; ++k) {
      const Rational s = r.cells[k].upper - r.cells[k].value;
      if (s > worst_slack) {
        worst_slack = s;
        worst = k;
      }
    }
    std::optional<Line> cut;
    const CellBound& wb = r.cells[worst];
    if (wb.invalid) {
      for (const auto e : r.crossing) {
        if (std::binary_search(affects[e].begin(), affects[e].end(), worst)) {
          cut = Line::through(events_[e].segment.a, events_[e].segment.b);
          break;
        }
      }
    }
    // Cuts through a reflex generator split the angle at that vertex; the
    // diameter cuts in between keep the regions from degenerating into slivers.
    if (!cut && wb.pivot && r.depth % 2 == 0) cut = Line::through(*wb.pivot, middle_point(r.poly));
    if (!cut) cut = bisect_cut(r.poly);
    for (int side : {-1, 1}) {
      ConvexCell child = clip_convex(r.poly, *cut, side);
      if (child.size() < 3 || sgn(ring_area(child)) <= 0) continue;
      Region c = make_region(std::move(child), r.crossing, &r.cells, r.depth + 1);
      if (c.upper > best.value + cert.theta) queue.push(std::move(c));
    }
  }

  cert.regions = regions;
  cert.upper = best.value;
  if (!queue.empty() && queue.top().upper > cert.upper) cert.upper = queue.top().upper;
  cert.point = best.point;
  cert.achieved = best.value;
  if (options_.prefer_existing) {
    const std::pair<Point, Rational>* pick = nullptr;
    for (const auto& gv : guard_values) {
      if (gv.second < cert.upper - cert.theta) continue;
      if (!pick || gv.second > pick->second) pick = &gv;
    }
    if (pick) {
      cert.point = pick->first;
      cert.achieved = pick->second;
      cert.reused_guard = true;
    }
  }
  return cert;
}

OracleCertificate max_oracle(const Polygon& polygon, const CellComplex& complex, unsigned long T,
                             const Rational& eps, const Rational& nu, const GridSpec& grid) {
  Oracle oracle(polygon);
  return oracle.maximize(complex, T, eps, nu, grid);
}

}  // namespace artgallery

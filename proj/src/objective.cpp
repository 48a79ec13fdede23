#include <algorithm>
#include <queue>

#include "artgallery/oracle.hpp"

namespace artgallery {

namespace {

bool on_ray_of(const VisVertex& v, const Point& u) {
  return v.kind == VisVertex::Kind::ray ? v.generator() == u : v.point == u;
}

bool on_line(const VisVertex& v, const Line& l) {
  return v.kind == VisVertex::Kind::ray ? v.line() == l : sgn(l.eval(v.point)) == 0;
}

std::optional<VisVertex> crossing(const VisVertex& p, const VisVertex& q, const Point& a,
                                  const Point& b) {
  VisVertex out;
  out.point = *line_intersection(p.point, q.point, a, b);
  if (is_window_edge(p, q)) {
    out.kind = VisVertex::Kind::ray;
    const Point& g = p.kind == VisVertex::Kind::ray ? p.generator() : q.generator();
    out.source = std::make_shared<const RaySource>(
        RaySource{g, normalized(Line::through(a, b)), Segment{a, b}});
    return out;
  }
  // Otherwise the edge must stay on a line that does not move with q.
  const bool fixed_edge = (p.kind == VisVertex::Kind::fixed && q.kind == VisVertex::Kind::fixed) ||
                          (p.kind == VisVertex::Kind::ray && on_line(q, p.line())) ||
                          (q.kind == VisVertex::Kind::ray && on_line(p, q.line()));
  if (!fixed_edge) return std::nullopt;
  out.kind = VisVertex::Kind::fixed;
  return out;
}

/// Extreme points of line(q, u) ∩ support for q in the region.
std::pair<Point, Point> ray_range(const VisVertex& v, std::span<const Point> region) {
  const Point& u = v.generator();
  const Point& s0 = v.support().a;
  const Point& s1 = v.support().b;
  std::vector<Point> dirs;
  for (const auto& b : region)
    if (b != u) dirs.push_back(u - b);
  const Point* lo = nullptr;
  const Point* hi = nullptr;
  for (const auto& g : dirs) {
    bool is_lo = true, is_hi = true;
    for (const auto& h : dirs) {
      const int c = sgn(cross(g, h));
      if (c < 0) is_lo = false;
      if (c > 0) is_hi = false;
    }
    if (is_lo && !lo) lo = &g;
    if (is_hi && !hi) hi = &g;
  }
  if (!lo || !hi) return {s0, s1};
  // cross(lo, X - u) >= 0 and cross(X - u, hi) >= 0 along X = s0 + t (s1 - s0).
  Rational t0(0), t1(1);
  const Point e = s1 - s0;
  const auto constrain = [&](const Rational& f0, const Rational& df) {
    const int s = sgn(df);
    if (s == 0) {
      if (sgn(f0) < 0) t1 = -1;  // empty
      return;
    }
    const Rational t = -f0 / df;
    if (s > 0) {
      if (t > t0) t0 = t;
    } else if (t < t1) {
      t1 = t;
    }
  };
  constrain(cross(*lo, s0 - u), cross(*lo, e));
  constrain(cross(s0 - u, *hi), cross(e, *hi));
  if (t0 > t1) return {s0, s1};
  return {s0 + t0 * e, s0 + t1 * e};
}

struct Interval {
  Rational lo, hi;
};

Interval affine_range(const Affine& f, std::span<const Point> region) {
  Interval r{f.at(region[0]), f.at(region[0])};
  for (std::size_t i = 1; i < region.size(); ++i) {
    const Rational v = f.at(region[i]);
    if (v < r.lo) r.lo = v;
    if (v > r.hi) r.hi = v;
  }
  return r;
}

Interval mul(const Interval& x, const Interval& y) {
  const Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

}  // namespace

bool is_window_edge(const VisVertex& a, const VisVertex& b) {
  if (a.kind == VisVertex::Kind::ray) return on_ray_of(b, a.generator());
  if (b.kind == VisVertex::Kind::ray) return on_ray_of(a, b.generator());
  return false;
}

std::optional<std::vector<VisVertex>> clip_tracked(std::span<const VisVertex> subject,
                                                   std::span<const Point> convex) {
  std::vector<VisVertex> current(subject.begin(), subject.end());
  std::vector<VisVertex> next;
  std::vector<int> side;
  const std::size_t m = convex.size();
  for (std::size_t k = 0; k < m && !current.empty(); ++k) {
    const Point& a = convex[k];
    const Point& b = convex[(k + 1) % m];
    const std::size_t n = current.size();
    side.resize(n);
    bool all_in = true;
    for (std::size_t i = 0; i < n; ++i) {
      side[i] = orient_sign(a, b, current[i].point);
      all_in = all_in && side[i] >= 0;
    }
    if (all_in) continue;
    next.clear();
    next.reserve(n + 2);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      const int sp = side[i], sq = side[j];
      if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
        auto x = crossing(current[i], current[j], a, b);
        if (!x) return std::nullopt;
        next.push_back(std::move(*x));
      }
      if (sq >= 0) next.push_back(current[j]);
    }
    std::swap(current, next);
  }
  return current;
}

Rational tracked_area_bound(std::span<const VisVertex> ring, std::span<const Point> region) {
  // Twice the area is the sum of cross(a - q, b - q) over non-window edges ab.
  // With ga, gb the generators (or the fixed points themselves), a on
  // line(q, ga) and b on line(q, gb):
  //   cross(a - q, b - q) = cross(ga - q, gb - q) + cross(ga - gb, b - gb) + cross(a - ga, b - ga).
  // The first terms sum to one affine function of q, maximized at a region
  // vertex. Writing a = lo_a + t_a * d_a with t_a in [0, 1], the rest is
  // c0 + sum_v l_v t_v + sum_e c_e t_a t_b, bounded term by term.
  // A second bound maximizes every edge term on its own; the smaller is returned.
  const std::size_t n = ring.size();
  std::vector<Point> lo(n), d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (ring[i].kind == VisVertex::Kind::ray) {
      const auto [x, y] = ray_range(ring[i], region);
      lo[i] = x;
      d[i] = y - x;
    } else {
      lo[i] = ring[i].point;
      d[i] = Point(0, 0);
    }
  }
  const auto gen = [&](std::size_t i) -> const Point& {
    return ring[i].kind == VisVertex::Kind::ray ? ring[i].generator() : ring[i].point;
  };
  Rational a0(0), ax(0), ay(0), c0(0), c3(0), separate(0);
  std::vector<Rational> l(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (is_window_edge(ring[i], ring[j])) continue;
    const Point& ga = gen(i);
    const Point& gb = gen(j);
    a0 += cross(ga, gb);
    ax += ga.y - gb.y;
    ay += gb.x - ga.x;
    c0 += cross(ga - gb, lo[j] - gb) + cross(lo[i] - ga, lo[j] - ga);
    l[j] += cross(ga - gb, d[j]) + cross(lo[i] - ga, d[j]);
    l[i] += cross(d[i], lo[j] - ga);
    const Rational c = cross(d[i], d[j]);
    if (sgn(c) > 0) c3 += c;

    std::optional<Rational> best;
    for (int si = 0; si < (sgn(d[i].x) != 0 || sgn(d[i].y) != 0 ? 2 : 1); ++si)
      for (int sj = 0; sj < (sgn(d[j].x) != 0 || sgn(d[j].y) != 0 ? 2 : 1); ++sj) {
        const Point x = si ? lo[i] + d[i] : lo[i];
        const Point y = sj ? lo[j] + d[j] : lo[j];
        for (const auto& q : region) {
          Rational v = cross(x - q, y - q);
          if (!best || v > *best) best = std::move(v);
        }
      }
    separate += *best;
  }
  std::optional<Rational> affine;
  for (const auto& q : region) {
    Rational v = a0 + ax * q.x + ay * q.y;
    if (!affine || v > *affine) affine = std::move(v);
  }
  Rational joint = (affine ? *affine : Rational(0)) + c0 + c3;
  for (const auto& v : l)
    if (sgn(v) > 0) joint += v;
  return (joint < separate ? joint : separate) / 2;
}

// ------------------------------------------------------ TriangleObjective

Rational TriangleObjective::evaluate(const Point& q) const {
  Rational sum(0);
  for (const auto& t : terms) {
    Rational v = t.coeff;
    for (const auto& f : t.num) v *= f.at(q);
    for (const auto& f : t.den) v /= f.at(q);
    sum += v;
  }
  return sum;
}

Point TriangleObjective::point_at(const Rational& l1, const Rational& l2) const {
  return l1 * triangle[0] + l2 * triangle[1] + (1 - l1 - l2) * triangle[2];
}

Rational TriangleObjective::upper_bound(std::span<const Point> region) const {
  std::vector<std::optional<Rational>> per_cell(cell_cap.size(), Rational(0));
  for (const auto& t : terms) {
    auto& acc = per_cell[t.cell];
    if (!acc) continue;
    Interval v{t.coeff, t.coeff};
    for (const auto& f : t.num) v = mul(v, affine_range(f, region));
    bool unbounded = false;
    for (const auto& f : t.den) {
      const Interval d = affine_range(f, region);
      if (sgn(d.lo) <= 0 && sgn(d.hi) >= 0) {
        unbounded = true;
        break;
      }
      v = mul(v, Interval{1 / d.hi, 1 / d.lo});
    }
    if (unbounded) {
      acc.reset();
      continue;
    }
    *acc += v.hi;
  }
  Rational sum(0);
  for (std::size_t k = 0; k < per_cell.size(); ++k)
    sum += per_cell[k] ? std::min(*per_cell[k], cell_cap[k]) : cell_cap[k];
  return sum;
}

TriangleObjective build_triangle_objective(const Polygon& polygon, const RoundedComplex& rounded,
                                           const Rational& eps, std::span<const Point> triangle) {
  if (triangle.size() != 3 || sgn(ring_area(triangle)) <= 0)
    throw std::invalid_argument("build_triangle_objective: expected a ccw triangle");
  TriangleObjective f;
  f.triangle.assign(triangle.begin(), triangle.end());
  const Point q0 = vertex_centroid(triangle);
  const VisibilityPolygon vis = visibility_polygon(polygon, q0);

  unsigned max_exp = 0;
  for (const auto& k : rounded.kept) max_exp = std::max(max_exp, k.exponent);
  const auto weights = weight_table(eps, max_exp + 1);

  for (std::size_t k = 0; k < rounded.kept.size(); ++k) {
    // Edges with no moving endpoint add up to one affine term per cell.
    Affine constant{0, 0, 0};
    const auto& kept = rounded.kept[k];
    const Rational& w = weights[kept.exponent];
    f.cell_cap.push_back(w * kept.area);
    const auto ring = clip_tracked(vis.core, kept.cell);
    if (!ring) throw std::logic_error("objective structure is not constant on the triangle");
    const std::size_t n = ring->size();
    for (std::size_t i = 0; i < n; ++i) {
      const VisVertex& a = (*ring)[i];
      const VisVertex& b = (*ring)[(i + 1) % n];
      if (is_window_edge(a, b)) continue;
      ObjectiveTerm t;
      t.cell = k;
      t.coeff = w / 2;
      const Point ca = a.kind == VisVertex::Kind::ray ? a.generator() : a.point;
      const Point cb = b.kind == VisVertex::Kind::ray ? b.generator() : b.point;
      const Affine area_part{ca.y - cb.y, cb.x - ca.x, cross(ca, cb)};
      t.num.push_back(area_part);
      for (const VisVertex* v : {&a, &b}) {
        if (v->kind != VisVertex::Kind::ray) continue;
        const Line& l = v->line();
        t.num.push_back({-l.a, -l.b, l.c});
        t.den.push_back({-l.a, -l.b, l.a * v->generator().x + l.b * v->generator().y});
      }
      if (t.den.empty()) {
        constant.a += t.coeff * area_part.a;
        constant.b += t.coeff * area_part.b;
        constant.c += t.coeff * area_part.c;
        continue;
      }
      f.terms.push_back(std::move(t));
    }
    if (sgn(constant.a) != 0 || sgn(constant.b) != 0 || sgn(constant.c) != 0) {
      ObjectiveTerm t;
      t.coeff = 1;
      t.num.push_back(constant);
      t.cell = k;
      f.terms.push_back(std::move(t));
    }
  }
  return f;
}

TriangleMax maximize_triangle(const TriangleObjective& f, const Rational& theta,
                              std::size_t max_regions) {
  if (sgn(theta) <= 0) throw std::invalid_argument("maximize_triangle: theta must be positive");
  struct Node {
    Rational upper;
    ConvexCell tri;
  };
  const auto cmp_node = [](const Node& a, const Node& b) { return a.upper < b.upper; };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp_node)> queue(cmp_node);

  const auto evaluable = [&](const Point& q) {
    for (const auto& t : f.terms)
      for (const auto& d : t.den)
        if (sgn(d.at(q)) == 0) return false;
    return true;
  };
  TriangleMax best;
  bool have = false;
  const auto offer = [&](const Point& q) {
    if (!evaluable(q)) return;
    Rational v = f.evaluate(q);
    if (!have || v > best.value || (v == best.value && q < best.point)) {
      best.point = q;
      best.value = std::move(v);
      have = true;
    }
  };
  for (const auto& v : f.triangle) offer(v);
  offer(vertex_centroid(f.triangle));
  queue.push({f.upper_bound(f.triangle), f.triangle});

  std::size_t regions = 0;
  while (!queue.empty()) {
    if (queue.top().upper <= best.value + theta || regions >= max_regions) break;
    Node node = queue.top();
    queue.pop();
    ++regions;
    // Split at the midpoint of the longest edge.
    std::size_t e = 0;
    Rational longest = -1;
    for (std::size_t i = 0; i < 3; ++i) {
      const Rational d = squared_distance(node.tri[i], node.tri[(i + 1) % 3]);
      if (d > longest) {
        longest = d;
        e = i;
      }
    }
    const Point& a = node.tri[e];
    const Point& b = node.tri[(e + 1) % 3];
    const Point& c = node.tri[(e + 2) % 3];
    const Point m = ratio(1, 2) * (a + b);
    for (ConvexCell child : {ConvexCell{a, m, c}, ConvexCell{m, b, c}}) {
      offer(vertex_centroid(child));
      offer(m);
      queue.push({f.upper_bound(child), std::move(child)});
    }
  }
  best.upper = best.value;
  if (!queue.empty() && queue.top().upper > best.upper) best.upper = queue.top().upper;
  return best;
}

}  // namespace artgallery

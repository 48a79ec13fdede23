#include "artgallery/arrangement.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace artgallery {

const VisibilityPolygon& VisibilityCache::get(const Point& q) {
  auto it = cache_.find(q);
  if (it == cache_.end()) it = cache_.emplace(q, visibility_polygon(*polygon_, q)).first;
  return it->second;
}

Rational CellComplex::total_area() const {
  Rational sum(0);
  for (const auto& c : cells) sum += c.area;
  return sum;
}

namespace {

bool strictly_inside(const Point& p, std::span<const Point> cell) {
  const std::size_t n = cell.size();
  for (std::size_t i = 0; i < n; ++i)
    if (orient_sign(cell[i], cell[(i + 1) % n], p) <= 0) return false;
  return true;
}

bool boxes_overlap(const BoundingBox& a, const Point& p, const Point& q) {
  const auto& [lx, hx] = std::minmax(p.x, q.x);
  const auto& [ly, hy] = std::minmax(p.y, q.y);
  return !(hx < a.lo.x || lx > a.hi.x || hy < a.lo.y || ly > a.hi.y);
}

bool line_crosses(const Line& line, std::span<const Point> cell) {
  bool pos = false, neg = false;
  for (const auto& v : cell) {
    const int s = sgn(line.eval(v));
    pos |= s > 0;
    neg |= s < 0;
    if (pos && neg) return true;
  }
  return false;
}

void push_if_proper(ConvexCell cell, std::vector<ConvexCell>& out) {
  if (cell.size() >= 3 && sgn(ring_area(cell)) > 0) out.push_back(std::move(cell));
}

Cell make_cell(ConvexCell polygon, std::vector<std::uint32_t> label) {
  Cell c;
  c.area = ring_area(polygon);
  c.rep = vertex_centroid(polygon);
  c.polygon = std::move(polygon);
  c.label = std::move(label);
  return c;
}

}  // namespace

bool crosses_interior(const Segment& segment, std::span<const Point> cell) {
  Rational t0(0), t1(1);
  const Point d = segment.b - segment.a;
  const std::size_t n = cell.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = cell[i];
    const Point e = cell[(i + 1) % n] - a;
    // f(t) = f0 + t * df must stay >= 0.
    const Rational f0 = cross(e, segment.a - a);
    const Rational df = cross(e, d);
    const int s = sgn(df);
    if (s == 0) {
      if (sgn(f0) <= 0) return false;
      continue;
    }
    const Rational t = -f0 / df;
    if (s > 0) {
      if (t > t0) t0 = t;
    } else if (t < t1) {
      t1 = t;
    }
    if (t0 >= t1) return false;
  }
  const Rational mid = (t0 + t1) / 2;
  return strictly_inside(segment.a + mid * d, cell);
}

void split_by_segments(const ConvexCell& cell, std::span<const Segment> segments,
                       std::vector<ConvexCell>& out) {
  std::vector<std::pair<ConvexCell, std::size_t>> stack{{cell, 0}};
  while (!stack.empty()) {
    auto [c, i] = std::move(stack.back());
    stack.pop_back();
    const BoundingBox box = bounding_box(c);
    for (; i < segments.size(); ++i) {
      const Segment& s = segments[i];
      if (!boxes_overlap(box, s.a, s.b)) continue;
      if (crosses_interior(s, c)) break;
    }
    if (i == segments.size()) {
      out.push_back(std::move(c));
      continue;
    }
    const Line line = Line::through(segments[i].a, segments[i].b);
    std::vector<ConvexCell> halves;
    push_if_proper(clip_convex(c, line, -1), halves);
    push_if_proper(clip_convex(c, line, 1), halves);
    for (auto it = halves.rbegin(); it != halves.rend(); ++it) stack.emplace_back(std::move(*it), i + 1);
  }
}

void split_by_lines(const ConvexCell& cell, std::span<const Line> lines,
                    std::vector<ConvexCell>& out) {
  std::vector<std::pair<ConvexCell, std::size_t>> stack{{cell, 0}};
  while (!stack.empty()) {
    auto [c, i] = std::move(stack.back());
    stack.pop_back();
    while (i < lines.size() && !line_crosses(lines[i], c)) ++i;
    if (i == lines.size()) {
      out.push_back(std::move(c));
      continue;
    }
    std::vector<ConvexCell> halves;
    push_if_proper(clip_convex(c, lines[i], -1), halves);
    push_if_proper(clip_convex(c, lines[i], 1), halves);
    for (auto it = halves.rbegin(); it != halves.rend(); ++it) stack.emplace_back(std::move(*it), i + 1);
  }
}

CellComplex base_complex(const Polygon& polygon) {
  const BoundingBox box = bounding_box(polygon);
  const ConvexCell frame{box.lo, {box.hi.x, box.lo.y}, box.hi, {box.lo.x, box.hi.y}};
  const auto& edges = polygon.edges();
  std::vector<ConvexCell> pieces;
  split_by_segments(frame, edges, pieces);
  CellComplex out;
  for (auto& p : pieces) {
    Cell c = make_cell(std::move(p), {});
    if (locate(c.rep, polygon) == Location::interior) out.cells.push_back(std::move(c));
  }
  return out;
}

void add_guard(CellComplex& complex, const Point& guard, VisibilityCache& cache) {
  const auto index = static_cast<std::uint32_t>(complex.guards.size());
  // A repeated position reuses the labels of its first occurrence.
  const auto previous = std::find(complex.guards.begin(), complex.guards.end(), guard);
  if (previous != complex.guards.end()) {
    const auto first = static_cast<std::uint32_t>(previous - complex.guards.begin());
    complex.guards.push_back(guard);
    for (auto& c : complex.cells)
      if (std::binary_search(c.label.begin(), c.label.end(), first)) c.label.push_back(index);
    return;
  }
  complex.guards.push_back(guard);

  const VisibilityPolygon& vis = cache.get(guard);
  const Ring ring = vis.core_ring();
  std::vector<Segment> edges;
  edges.reserve(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) edges.push_back({ring[i], ring[(i + 1) % ring.size()]});
  const BoundingBox vbox = bounding_box(ring);

  std::vector<Cell> next;
  next.reserve(complex.cells.size());
  std::vector<ConvexCell> pieces;
  for (auto& cell : complex.cells) {
    const BoundingBox cbox = bounding_box(cell.polygon);
    const bool disjoint = cbox.hi.x < vbox.lo.x || cbox.lo.x > vbox.hi.x ||
                          cbox.hi.y < vbox.lo.y || cbox.lo.y > vbox.hi.y;
    if (disjoint) {
      next.push_back(std::move(cell));
      continue;
    }
    pieces.clear();
    split_by_segments(cell.polygon, edges, pieces);
    if (pieces.size() == 1) {
      if (locate(cell.rep, ring) != Location::exterior) cell.label.push_back(index);
      next.push_back(std::move(cell));
      continue;
    }
    for (auto& p : pieces) {
      Cell c = make_cell(std::move(p), cell.label);
      if (locate(c.rep, ring) != Location::exterior) c.label.push_back(index);
      next.push_back(std::move(c));
    }
  }
  complex.cells = std::move(next);
}

CellComplex build_complex(const Polygon& polygon, std::span<const Point> guards,
                          VisibilityCache& cache) {
  CellComplex complex = base_complex(polygon);
  for (const auto& g : guards) add_guard(complex, g, cache);
  return complex;
}

CellComplex build_complex(const Polygon& polygon, std::span<const Point> guards) {
  VisibilityCache cache(polygon);
  return build_complex(polygon, guards, cache);
}

RefinedComplex refine_complex(const CellComplex& complex) {
  RefinedComplex out;
  std::set<Point> seeds;
  for (const auto& c : complex.cells) seeds.insert(c.polygon.begin(), c.polygon.end());
  out.seeds.assign(seeds.begin(), seeds.end());

  std::vector<Line> lines;
  for (std::size_t i = 0; i < out.seeds.size(); ++i)
    for (std::size_t j = i + 1; j < out.seeds.size(); ++j)
      lines.push_back(normalized(Line::through(out.seeds[i], out.seeds[j])));
  const auto key = [](const Line& l) { return std::tie(l.a, l.b, l.c); };
  std::sort(lines.begin(), lines.end(), [&](const Line& x, const Line& y) { return key(x) < key(y); });
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());

  for (std::size_t k = 0; k < complex.cells.size(); ++k) {
    split_by_lines(complex.cells[k].polygon, lines, out.cells);
    out.parent.resize(out.cells.size(), k);
  }
  return out;
}

std::vector<ConvexCell> triangulate(std::span<const Point> cell) {
  std::vector<ConvexCell> out;
  const Ring ring = simplify_ring(cell);
  if (ring.size() < 3 || sgn(ring_area(ring)) <= 0) return out;
  const auto start =
      static_cast<std::size_t>(std::min_element(ring.begin(), ring.end()) - ring.begin());
  const std::size_t n = ring.size();
  for (std::size_t k = 1; k + 1 < n; ++k)
    out.push_back({ring[start], ring[(start + k) % n], ring[(start + k + 1) % n]});
  return out;
}

std::vector<std::vector<std::uint32_t>> subsystem_ranges(const Polygon& polygon,
                                                         std::span<const Point> points) {
  const CellComplex complex = build_complex(polygon, points);
  std::set<std::vector<std::uint32_t>> traces;
  for (const auto& c : complex.cells) {
    auto label = c.label;
    std::sort(label.begin(), label.end());
    traces.insert(std::move(label));
  }
  return {traces.begin(), traces.end()};
}

}  // namespace artgallery

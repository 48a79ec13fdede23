#include "artgallery/harness.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace artgallery {

// -------------------------------------------------------------- generators

Instance make_convex(int m) {
  if (m < 3) throw std::invalid_argument("convex(m) needs m >= 3");
  Instance out;
  out.name = "convex(" + std::to_string(m) + ")";
  out.opt = OptBracket{1, 1, {}, {}, true, true};
  if (m == 4) {
    out.polygon = Polygon({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {});
    return out;
  }
  // Rational points of the circle: t = tan(theta/2) rounded to 2^-10.
  Ring ring;
  for (int i = 0; i < m; ++i) {
    if (2 * i == m) {
      ring.push_back({0, 2});
      continue;
    }
    const double theta = 2 * std::numbers::pi * i / m;
    const Rational t(ratio(std::lround(std::tan(theta / 2) * 1024), 1024));
    const Rational d = 1 + t * t;
    ring.push_back({2 + 2 * (1 - t * t) / d, 2 + 4 * t / d});
  }
  out.polygon = Polygon(std::move(ring), {});
  return out;
}

Instance make_lshape() {
  Instance out;
  out.name = "lshape";
  out.polygon = Polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, {});
  out.opt = OptBracket{1, 1, {}, {}, true, true};
  return out;
}

Instance make_comb(int k) {
  if (k < 1) throw std::invalid_argument("comb(k) needs k >= 1");
  Instance out;
  out.name = "comb(" + std::to_string(k) + ")";
  const long w = 2L * k - 1;
  Ring ring{{0, 0}, {w, 0}};
  for (long i = k - 1; i >= 0; --i) {
    ring.push_back({2 * i + 1, 3});
    ring.push_back({2 * i, 3});
    if (i > 0) {
      ring.push_back({2 * i, 1});
      ring.push_back({2 * i - 1, 1});
    }
  }
  out.polygon = Polygon(std::move(ring), {});
  const auto kk = static_cast<unsigned long>(k);
  out.opt = OptBracket{kk, kk, {}, {}, true, true};
  return out;
}

Instance make_orthogonal(int m, int holes, std::uint64_t seed) {
  if (m < 4 || m % 2 != 0) throw std::invalid_argument("orthogonal(m, ...) needs an even m >= 4");
  const int columns = (m - 2) / 2;
  if (holes < 0 || holes > columns / 2)
    throw std::invalid_argument("orthogonal(m, holes, ...) allows at most (m-2)/4 holes");
  // mt19937_64 output is fixed by the standard; distributions are not.
  std::mt19937_64 rng(seed);
  const auto pick = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  std::vector<long> x{0}, h;
  for (int j = 0; j < columns; ++j) {
    x.push_back(x.back() + pick(1, 3));
    long v = pick(2, 6);
    while (!h.empty() && v == h.back()) v = pick(2, 6);
    h.push_back(v);
  }
  const long width = x.back();
  Ring ring{{0, 0}, {width, 0}};
  for (int j = columns - 1; j >= 0; --j) {
    ring.push_back({x[j + 1], h[j]});
    ring.push_back({x[j], h[j]});
  }
  std::vector<Ring> hole_rings;
  for (int j = 0; j < holes; ++j) {
    const Rational cx = Rational(width * (j + 1)) / (holes + 1);
    const Rational y0 = ratio(pick(1, 3), 4);
    const Rational half = ratio(1, 2);
    hole_rings.push_back({{cx - half, y0}, {cx - half, y0 + 1}, {cx + half, y0 + 1}, {cx + half, y0}});
  }
  Instance out;
  out.name = "orthogonal(" + std::to_string(m) + "," + std::to_string(holes) + "," +
             std::to_string(seed) + ")";
  out.polygon = Polygon(std::move(ring), std::move(hole_rings));
  return out;
}

Instance generate(std::string_view spec) {
  const auto open = spec.find('(');
  const std::string_view kind = spec.substr(0, open);
  std::vector<long long> args;
  if (open != std::string_view::npos) {
    if (spec.back() != ')') throw std::invalid_argument("malformed instance spec");
    std::string_view rest = spec.substr(open + 1, spec.size() - open - 2);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string_view tok = rest.substr(0, comma);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      long long v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw std::invalid_argument("malformed instance argument");
      args.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  const auto need = [&](std::size_t n) {
    if (args.size() != n) throw std::invalid_argument("wrong number of instance arguments");
  };
  if (kind == "convex") {
    need(1);
    return make_convex(static_cast<int>(args[0]));
  }
  if (kind == "lshape") {
    need(0);
    return make_lshape();
  }
  if (kind == "comb") {
    need(1);
    return make_comb(static_cast<int>(args[0]));
  }
  if (kind == "orthogonal") {
    need(3);
    if (args[2] < 0) throw std::invalid_argument("seed must be non-negative");
    return make_orthogonal(static_cast<int>(args[0]), static_cast<int>(args[1]),
                           static_cast<std::uint64_t>(args[2]));
  }
  throw std::invalid_argument("unknown instance kind: " + std::string(kind));
}

// ------------------------------------------------------------ verification

bool sees_cell(const Polygon& polygon, const Point& guard, std::span<const Point> cell) {
  for (const auto& v : cell)
    if (!sees(polygon, guard, v)) return false;
  // With the fan sides inside H, the fan is inside H unless the boundary of
  // H reaches into one of its triangles.
  const std::size_t n = cell.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = cell[i];
    const Point& b = cell[(i + 1) % n];
    const int s = orient_sign(guard, a, b);
    if (s == 0) continue;
    const std::vector<Point> tri = s > 0 ? std::vector<Point>{guard, a, b}
                                         : std::vector<Point>{guard, b, a};
    const BoundingBox box = bounding_box(tri);
    for (const auto& e : polygon.edges()) {
      if (std::max(e.a.x, e.b.x) <= box.lo.x || std::min(e.a.x, e.b.x) >= box.hi.x ||
          std::max(e.a.y, e.b.y) <= box.lo.y || std::min(e.a.y, e.b.y) >= box.hi.y)
        continue;
      if (crosses_interior(e, tri)) return false;
    }
  }
  return true;
}

namespace {

void check_guards(const Polygon& polygon, std::span<const Point> guards) {
  for (const auto& g : guards)
    if (locate(g, polygon) == Location::exterior)
      throw std::invalid_argument("guard outside the polygon: " + to_string(g));
}

}  // namespace

Rational verify(const Polygon& polygon, std::span<const Point> guards) {
  check_guards(polygon, guards);
  if (guards.empty()) return Rational(0);
  const CellComplex c = build_complex(polygon, guards);
  Rational seen(0);
  for (const auto& cell : c.cells)
    if (!cell.label.empty()) seen += cell.area;
  return seen / polygon.area();
}

std::vector<ConvexCell> uncovered_cells(const Polygon& polygon, std::span<const Point> guards) {
  check_guards(polygon, guards);
  const CellComplex c = build_complex(polygon, guards);
  std::vector<ConvexCell> out;
  for (const auto& cell : c.cells)
    if (cell.label.empty()) out.push_back(cell.polygon);
  return out;
}

// ------------------------------------------------------------ opt bracket

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
std::size_t count_and(const Bits& a, const Bits& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] & b[i]);
  return n;
}
std::size_t count(const Bits& a) {
  std::size_t n = 0;
  for (const auto w : a) n += std::popcount(w);
  return n;
}

/// True when no point of H sees both a and b, given their visibility
/// boundaries. Closed regions meet iff a vertex of one lies in the other or
/// two boundary edges meet.
bool regions_disjoint(const Polygon& polygon, const Point& a, const Ring& va, const Point& b,
                      const Ring& vb) {
  const BoundingBox ba = bounding_box(va), bb = bounding_box(vb);
  if (ba.hi.x < bb.lo.x || bb.hi.x < ba.lo.x || ba.hi.y < bb.lo.y || bb.hi.y < ba.lo.y)
    return true;
  for (const auto& p : va)
    if (sees(polygon, b, p)) return false;
  for (const auto& p : vb)
    if (sees(polygon, a, p)) return false;
  for (std::size_t i = 0; i < va.size(); ++i) {
    const Segment s{va[i], va[(i + 1) % va.size()]};
    for (std::size_t j = 0; j < vb.size(); ++j) {
      const Segment t{vb[j], vb[(j + 1) % vb.size()]};
      if (segment_intersect(s, t).kind != SegmentIntersection::Kind::empty) return false;
    }
  }
  return true;
}

/// Maximum clique by branch and bound with a greedy-colouring bound.
struct CliqueSearch {
  const std::vector<Bits>& adj;
  std::size_t budget;
  std::size_t nodes = 0;
  std::vector<std::size_t> best, cur;
  bool exhausted = true;

  void expand(std::vector<std::size_t> cand) {
    if (++nodes > budget) {
      exhausted = false;
      return;
    }
    if (cand.empty()) {
      if (cur.size() > best.size()) best = cur;
      return;
    }
    // Colour classes give an upper bound on the clique size within cand.
    std::vector<std::size_t> order, bound;
    std::vector<std::vector<std::size_t>> classes;
    for (const auto v : cand) {
      std::size_t k = 0;
      while (k < classes.size() &&
             std::any_of(classes[k].begin(), classes[k].end(),
                         [&](std::size_t u) { return test_bit(adj[v], u); }))
        ++k;
      if (k == classes.size()) classes.emplace_back();
      classes[k].push_back(v);
    }
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (const auto v : classes[k]) {
        order.push_back(v);
        bound.push_back(k + 1);
      }
    while (!order.empty()) {
      if (cur.size() + bound.back() <= best.size() || !exhausted) return;
      const std::size_t v = order.back();
      order.pop_back();
      bound.pop_back();
      std::vector<std::size_t> next;
      for (const auto u : order)
        if (test_bit(adj[v], u)) next.push_back(u);
      cur.push_back(v);
      expand(std::move(next));
      cur.pop_back();
    }
  }
};

/// Minimum set cover by branch and bound.
struct CoverSearch {
  const std::vector<Bits>& covers;       // per candidate, over elements
  const std::vector<std::vector<std::size_t>>& hitters;  // per element
  std::size_t elements;
  std::size_t stop_at;                   // a known lower bound
  std::size_t budget;
  std::size_t nodes = 0;
  std::vector<std::size_t> best, cur;
  bool exhausted = true;

  void expand(const Bits& covered) {
    if (best.size() <= stop_at) return;
    if (++nodes > budget) {
      exhausted = false;
      return;
    }
    const std::size_t left = elements - count(covered);
    if (left == 0) {
      if (cur.size() < best.size()) best = cur;
      return;
    }
    std::size_t most = 0;
    for (const auto& c : covers) most = std::max(most, count(c) - count_and(c, covered));
    if (most == 0) return;
    if (cur.size() + (left + most - 1) / most >= best.size()) return;
    std::size_t pick = elements, fewest = SIZE_MAX;
    for (std::size_t e = 0; e < elements; ++e) {
      if (test_bit(covered, e)) continue;
      if (hitters[e].size() < fewest) {
        fewest = hitters[e].size();
        pick = e;
      }
    }
    std::vector<std::size_t> options = hitters[pick];
    std::stable_sort(options.begin(), options.end(), [&](std::size_t a, std::size_t b) {
      return count(covers[a]) - count_and(covers[a], covered) >
             count(covers[b]) - count_and(covers[b], covered);
    });
    for (const auto g : options) {
      if (!exhausted || best.size() <= stop_at) return;
      Bits next = covered;
      for (std::size_t i = 0; i < next.size(); ++i) next[i] |= covers[g][i];
      cur.push_back(g);
      expand(next);
      cur.pop_back();
    }
  }
};

}  // namespace

OptBracket opt_bracket(const Polygon& polygon, std::size_t cell_budget, std::size_t node_budget) {
  OptBracket out;
  const std::vector<Point> vertices = polygon.vertices();
  const CellComplex arr = build_complex(polygon, vertices);
  if (arr.cells.size() > cell_budget) return out;
  const std::size_t cells = arr.cells.size();

  // Witnesses: the polygon vertices and one representative per
  // inclusion-minimal vertex label, since a point seeing few vertices tends
  // to see little. Witnesses with disjoint
  // visibility regions need distinct guards.
  std::vector<std::size_t> minimal;
  {
    std::map<std::vector<std::uint32_t>, std::size_t> by_label;
    for (std::size_t i = 0; i < cells; ++i) by_label.emplace(arr.cells[i].label, i);
    for (const auto& [label, i] : by_label) {
      bool is_min = true;
      for (const auto& [other, j] : by_label) {
        if (j == i || other.size() >= label.size()) continue;
        if (std::includes(label.begin(), label.end(), other.begin(), other.end())) {
          is_min = false;
          break;
        }
      }
      if (is_min) minimal.push_back(i);
    }
    std::sort(minimal.begin(), minimal.end());
  }
  std::vector<Point> wit;
  for (const auto i : minimal) wit.push_back(arr.cells[i].rep);
  for (const auto& v : vertices) wit.push_back(v);
  const std::size_t w = wit.size();
  std::vector<Ring> regions;
  for (const auto& p : wit) regions.push_back(visibility_polygon(polygon, p).boundary);
  std::vector<Bits> apart(w, Bits((w + 63) / 64, 0));
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = i + 1; j < w; ++j)
      if (regions_disjoint(polygon, wit[i], regions[i], wit[j], regions[j])) {
        set_bit(apart[i], j);
        set_bit(apart[j], i);
      }
  CliqueSearch clique{apart, node_budget, 0, {}, {}, true};
  {
    std::vector<std::size_t> all(w);
    for (std::size_t i = 0; i < w; ++i) all[i] = i;
    clique.expand(std::move(all));
  }
  if (!clique.best.empty()) {
    out.lower = clique.best.size();
    for (const auto i : clique.best) out.witnesses.push_back(wit[i]);
  }
  out.lower_exhausted = clique.exhausted;

  // Cover: candidates are the vertices and the cell representatives; a
  // candidate covers a cell only when it sees all of it.
  std::vector<Point> candidates = vertices;
  for (const auto& c : arr.cells) candidates.push_back(c.rep);
  std::vector<Bits> covers(candidates.size(), Bits((cells + 63) / 64, 0));
  std::vector<std::vector<std::size_t>> hitters(cells);
  for (std::size_t e = 0; e < cells; ++e) {
    const Cell& cell = arr.cells[e];
    for (const auto g : cell.label) {
      set_bit(covers[g], e);
      hitters[e].push_back(g);
    }
    for (std::size_t g = vertices.size(); g < candidates.size(); ++g)
      if (sees_cell(polygon, candidates[g], cell.polygon)) {
        set_bit(covers[g], e);
        hitters[e].push_back(g);
      }
    if (hitters[e].empty()) throw InvariantViolation("cell that no candidate covers");
  }

  // Greedy start, then exact search down to the witness bound.
  std::vector<std::size_t> greedy;
  {
    Bits covered((cells + 63) / 64, 0);
    std::size_t done = 0;
    while (done < cells) {
      std::size_t pick = 0, gain = 0;
      for (std::size_t g = 0; g < candidates.size(); ++g) {
        const std::size_t k = count(covers[g]) - count_and(covers[g], covered);
        if (k > gain) {
          gain = k;
          pick = g;
        }
      }
      greedy.push_back(pick);
      for (std::size_t i = 0; i < covered.size(); ++i) covered[i] |= covers[pick][i];
      done = count(covered);
    }
  }
  CoverSearch search{covers, hitters, cells, out.lower.value_or(1), node_budget, 0, {}, {}, true};
  search.best = greedy;
  search.expand(Bits((cells + 63) / 64, 0));
  out.upper = search.best.size();
  for (const auto g : search.best) out.cover.push_back(candidates[g]);
  out.upper_exhausted = search.exhausted;
  return out;
}

// --------------------------------------------------------------- rendering

namespace {

std::string fmt(const Rational& r) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", r.get_d());
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string path_of(std::span<const Point> ring) {
  std::string d;
  for (std::size_t i = 0; i < ring.size(); ++i)
    d += (i == 0 ? "M" : " L") + fmt(ring[i].x) + "," + fmt(ring[i].y);
  return d + " Z";
}

}  // namespace

std::string render_svg(const Polygon& polygon, std::span<const Point> guards) {
  check_guards(polygon, guards);
  const BoundingBox box = bounding_box(polygon);
  const Rational w = box.hi.x - box.lo.x, h = box.hi.y - box.lo.y;
  const Rational pad = (w > h ? w : h) / 20;
  const Rational stroke = (w > h ? w : h) / 200;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(box.lo.x - pad) << " "
     << fmt(-box.hi.y - pad) << " " << fmt(w + 2 * pad) << " " << fmt(h + 2 * pad) << "\">\n";
  os << "<defs><pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"" << fmt(4 * stroke)
     << "\" height=\"" << fmt(4 * stroke) << "\"><path d=\"M0,0 L" << fmt(4 * stroke) << ","
     << fmt(4 * stroke) << "\" stroke=\"#c0392b\" stroke-width=\"" << fmt(stroke / 2)
     << "\"/></pattern></defs>\n";
  os << "<g transform=\"scale(1,-1)\">\n";
  if (!guards.empty()) {
    const CellComplex c = build_complex(polygon, guards);
    for (const auto& cell : c.cells) {
      os << "<path class=\"" << (cell.label.empty() ? "uncovered" : "covered") << "\" d=\""
         << path_of(cell.polygon) << "\" fill=\""
         << (cell.label.empty() ? "url(#hatch)" : "#9ecae1") << "\" stroke=\"none\"/>\n";
    }
  } else {
    for (const auto& cell : base_complex(polygon).cells)
      os << "<path class=\"uncovered\" d=\"" << path_of(cell.polygon)
         << "\" fill=\"url(#hatch)\" stroke=\"none\"/>\n";
  }
  polygon.for_each_ring([&](const Ring& r) {
    os << "<path class=\"boundary\" d=\"" << path_of(r) << "\" fill=\"none\" stroke=\"#222\""
       << " stroke-width=\"" << fmt(stroke) << "\"/>\n";
  });
  for (const auto& g : guards)
    os << "<circle class=\"guard\" cx=\"" << fmt(g.x) << "\" cy=\"" << fmt(g.y) << "\" r=\""
       << fmt(3 * stroke) << "\" fill=\"#e6550d\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace artgallery

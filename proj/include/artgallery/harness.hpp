#pragma once

// Instance generators, Opt bracketing, exact verification and rendering.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artgallery/arrangement.hpp"

namespace artgallery {

struct OptBracket {
  std::optional<unsigned long> lower;  // pairwise mutually invisible witnesses
  std::optional<unsigned long> upper;  // size of an explicit full cover
  std::vector<Point> witnesses;
  std::vector<Point> cover;
  bool lower_exhausted = false;        // witness search finished within budget
  bool upper_exhausted = false;        // cover search finished within budget
};

struct Instance {
  std::string name;
  Polygon polygon;
  std::optional<OptBracket> opt;  // expected bracket, when known
};

/// Regular-ish convex m-gon with vertices on a circle of radius 2 about
/// (2, 2); convex(4) is the 4 x 4 square.
Instance make_convex(int m);
/// The 2 x 2 square minus its upper right unit square.
Instance make_lshape();
/// Corridor [0, 2k-1] x [0, 1] with k unit-wide teeth of height 2 at x = 2i.
Instance make_comb(int k);
/// Histogram polygon with m vertices (m even) and up to (m-2)/4 square holes
/// in its base strip. Deterministic in the seed.
Instance make_orthogonal(int m, int holes, std::uint64_t seed);

/// Parses "convex(m)", "lshape", "comb(k)" or "orthogonal(m,holes,seed)".
Instance generate(std::string_view spec);

/// Bounds on the full-coverage guard number from the arrangement of vertex
/// visibility polygons. Both sides are unknown when the arrangement has more
/// than `cell_budget` cells. `node_budget` caps each exhaustive search; when
/// it runs out the best bound found so far is reported.
OptBracket opt_bracket(const Polygon& polygon, std::size_t cell_budget = 5000,
                       std::size_t node_budget = 2'000'000);

/// True iff the guard sees every point of the convex cell.
bool sees_cell(const Polygon& polygon, const Point& guard, std::span<const Point> cell);

/// Exact fraction of area(H) seen by the guards. Throws std::invalid_argument
/// for a guard outside H.
Rational verify(const Polygon& polygon, std::span<const Point> guards);

/// Cells of the guards' arrangement that no guard sees.
std::vector<ConvexCell> uncovered_cells(const Polygon& polygon, std::span<const Point> guards);

/// SVG drawing: covered cells shaded, uncovered cells hatched, guards marked.
std::string render_svg(const Polygon& polygon, std::span<const Point> guards);

}  // namespace artgallery

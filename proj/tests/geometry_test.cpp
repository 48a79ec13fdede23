#include <gtest/gtest.h>

#include <random>

#include "artgallery/geometry.hpp"

using namespace artgallery;

namespace {

Polygon square4() { return Polygon({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {}); }
Polygon lshape() { return Polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, {}); }
Point pt(const char* x, const char* y) { return {parse_rational(x), parse_rational(y)}; }

}  // namespace

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), ratio(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("1.25"), ratio(5, 4));
  EXPECT_EQ(parse_rational("-0.5"), ratio(-1, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_EQ(to_string(parse_rational("-3/9")), "-1/3");
}

TEST(Rational, PowersAndLogs) {
  EXPECT_EQ(pow(ratio(1, 2), 3), ratio(1, 8));
  EXPECT_EQ(pow2(-3), ratio(1, 8));
  EXPECT_EQ(floor_log2(ratio(3, 512)), -8);
  EXPECT_EQ(floor_log2(ratio(1, 128)), -7);
  EXPECT_EQ(floor_log2(Rational(1)), 0);
  EXPECT_EQ(floor(ratio(-1, 2)), -1);
  EXPECT_EQ(ceil(ratio(1, 2)), 1);
  EXPECT_NEAR(ln(Rational(10)), std::log(10.0), 1e-12);
}

TEST(Orientation, WorkedExamples) {
  EXPECT_EQ(orientation({0, 0}, {1, 0}, {0, 1}), Orientation::left);
  EXPECT_EQ(orientation({0, 0}, {1, 1}, {2, 2}), Orientation::collinear);
  EXPECT_EQ(orientation({0, 0}, {0, 1}, {1, 0}), Orientation::right);
}

TEST(SegmentIntersect, WorkedExamples) {
  auto r = segment_intersect({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}});
  ASSERT_EQ(r.kind, SegmentIntersection::Kind::point);
  EXPECT_EQ(r.point, Point(1, 1));

  r = segment_intersect({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}});
  EXPECT_EQ(r.kind, SegmentIntersection::Kind::empty);

  r = segment_intersect({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}});
  ASSERT_EQ(r.kind, SegmentIntersection::Kind::overlap);
  EXPECT_EQ(r.overlap.a, Point(1, 0));
  EXPECT_EQ(r.overlap.b, Point(2, 0));
}

TEST(SegmentIntersect, TouchingEndpointsAndParallel) {
  auto r = segment_intersect({{0, 0}, {1, 1}}, {{1, 1}, {2, 0}});
  ASSERT_EQ(r.kind, SegmentIntersection::Kind::point);
  EXPECT_EQ(r.point, Point(1, 1));
  r = segment_intersect({{0, 0}, {1, 0}}, {{1, 0}, {2, 0}});
  ASSERT_EQ(r.kind, SegmentIntersection::Kind::point);
  EXPECT_EQ(r.point, Point(1, 0));
  r = segment_intersect({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}});
  EXPECT_EQ(r.kind, SegmentIntersection::Kind::empty);
}

// Oracle: a crossing point found exactly must lie on both segments, and a
// reported empty result must agree with a dense parametric scan.
TEST(SegmentIntersect, RandomAgreesWithOnSegment) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int it = 0; it < 2000; ++it) {
    Segment s1{{d(rng), d(rng)}, {d(rng), d(rng)}};
    Segment s2{{d(rng), d(rng)}, {d(rng), d(rng)}};
    if (s1.a == s1.b || s2.a == s2.b) continue;
    const auto r = segment_intersect(s1, s2);
    if (r.kind == SegmentIntersection::Kind::point) {
      EXPECT_TRUE(on_segment(r.point, s1.a, s1.b));
      EXPECT_TRUE(on_segment(r.point, s2.a, s2.b));
    } else if (r.kind == SegmentIntersection::Kind::overlap) {
      for (const auto& p : {r.overlap.a, r.overlap.b}) {
        EXPECT_TRUE(on_segment(p, s1.a, s1.b));
        EXPECT_TRUE(on_segment(p, s2.a, s2.b));
      }
    } else {
      for (int k = 0; k <= 64; ++k) {
        const Rational t = ratio(k, 64);
        EXPECT_FALSE(on_segment(s1.a + t * (s1.b - s1.a), s2.a, s2.b));
      }
    }
  }
}

TEST(RingArea, WorkedExamples) {
  EXPECT_EQ(ring_area(Ring{{0, 0}, {4, 0}, {4, 4}, {0, 4}}), 16);
  EXPECT_EQ(ring_area(Ring{{0, 0}, {1, 0}, {0, 1}}), ratio(1, 2));
  EXPECT_EQ(lshape().area(), 3);
  EXPECT_EQ(ring_area(Ring{{0, 0}, {0, 4}, {4, 4}, {4, 0}}), -16);
}

TEST(Locate, WorkedExamples) {
  EXPECT_EQ(locate(Point(2, 2), square4()), Location::interior);
  EXPECT_EQ(locate(Point(0, 2), square4()), Location::boundary);
  EXPECT_EQ(locate(pt("3/2", "3/2"), lshape()), Location::exterior);
  EXPECT_EQ(locate(Point(1, 1), lshape()), Location::boundary);
  EXPECT_EQ(locate(Point(5, 2), square4()), Location::exterior);
}

TEST(Locate, HolesAreExterior) {
  Polygon h({{0, 0}, {6, 0}, {6, 6}, {0, 6}}, {{{2, 2}, {4, 2}, {4, 4}, {2, 4}}});
  EXPECT_EQ(locate(Point(3, 3), h), Location::exterior);
  EXPECT_EQ(locate(Point(2, 3), h), Location::boundary);
  EXPECT_EQ(locate(Point(1, 3), h), Location::interior);
  EXPECT_EQ(h.area(), 32);
  EXPECT_EQ(h.vertex_count(), 8u);
  EXPECT_EQ(h.reflex_vertices().size(), 4u);
}

TEST(Diameter, WorkedExamples) {
  EXPECT_EQ(diameter_bound(square4()), 8);
  EXPECT_EQ(diameter_bound(Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {})), 2);
  EXPECT_EQ(diameter_bound(lshape()), 4);
}

TEST(PolygonValidation, RejectsBadInput) {
  EXPECT_THROW(Polygon({{0, 0}, {1, 0}}, {}), std::invalid_argument);
  EXPECT_THROW(Polygon({{0, 0}, {2, 2}, {2, 0}, {0, 2}}, {}), std::invalid_argument);
  EXPECT_THROW(Polygon({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{{3, 3}, {5, 3}, {5, 5}, {3, 5}}}),
               std::invalid_argument);
  // Clockwise input is normalized.
  Polygon p({{0, 0}, {0, 4}, {4, 4}, {4, 0}}, {});
  EXPECT_EQ(p.area(), 16);
  EXPECT_GT(ring_area(p.outer()), 0);
}

TEST(ConvexHelpers, ClipAndHull) {
  const ConvexCell sq{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  const auto half = clip_convex(sq, Line::through({2, 0}, {2, 4}), 1);
  EXPECT_EQ(ring_area(half), 8);
  const auto other = clip_convex(sq, Line::through({2, 0}, {2, 4}), -1);
  EXPECT_EQ(ring_area(other), 8);

  const Ring tri{{1, 1}, {6, 1}, {1, 6}};
  EXPECT_EQ(ring_area(clip_by_convex(tri, sq)), ratio(17, 2));

  const auto hull = convex_hull({{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}});
  EXPECT_EQ(hull.size(), 4u);
  EXPECT_TRUE(is_convex_ccw(hull));
  EXPECT_EQ(ring_area(hull), 4);
}

// Oracle: clipping a random triangle by a box, compared with a fine
// point-count estimate of the intersection area.
TEST(ConvexHelpers, ClipAreaMatchesSampling) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-2, 6);
  const ConvexCell box{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  for (int it = 0; it < 20; ++it) {
    Ring tri{{d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)}};
    if (sgn(ring_area(tri)) == 0) continue;
    if (sgn(ring_area(tri)) < 0) std::swap(tri[1], tri[2]);
    const double exact = ring_area(clip_by_convex(tri, box)).get_d();
    const int n = 200;
    int inside = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Point p{ratio(8 * i + 4, 2 * n), ratio(8 * j + 4, 2 * n)};
        if (locate(p, tri) != Location::exterior) ++inside;
      }
    EXPECT_NEAR(exact, 16.0 * inside / (n * n), 0.25);
  }
}

#include "artgallery/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace artgallery {

// ------------------------------------------------------------------ greedy

unsigned long greedy_cap(unsigned long opt, const Rational& delta, const Rational& nu) {
  const double v = static_cast<double>(opt) * -ln(delta) / (1 - nu.get_d());
  return static_cast<unsigned long>(std::ceil(v));
}

GreedyResult greedy_solve(const Polygon& polygon, const Rational& delta, const Rational& nu,
                          std::optional<unsigned long> opt_upper, OracleOptions options) {
  if (sgn(delta) <= 0 || delta >= 1) throw std::invalid_argument("delta must lie in (0, 1)");
  if (sgn(nu) <= 0 || nu >= 1) throw std::invalid_argument("nu must lie in (0, 1)");
  // With T = 1 every unseen cell has weight 1 and every seen cell is inactive,
  // so the weighted oracle maximizes the uncovered visible area.
  SolveParams params;
  params.eps = ratio(1, 2);
  params.delta = delta;
  params.nu = nu;
  params.T = 1;

  GreedyResult out;
  out.cap = greedy_cap(opt_upper.value_or(polygon.vertex_count()), delta, nu);
  const auto sink = [&](const IterationTrace& it) {
    out.residual.push_back(it.active_area);
    if (it.t + 1 > out.cap) throw InvariantViolation("greedy iteration cap exceeded");
  };
  // prefer_existing is pointless here: an existing guard sees no active cell.
  SolveResult r = solve(polygon, params, sink, options);
  out.residual.push_back(r.final_active_area);
  out.iterations = r.trace.size();
  std::set<Point> seen;
  for (const auto& p : r.fractional.support)
    if (seen.insert(p).second) out.guards.push_back(p);
  return out;
}

// ---------------------------------------------------------------- sampling

unsigned long SampleParams::sample_size() const {
  const double kd = static_cast<double>(k);
  const double d = delta.get_d();
  const double r = std::ceil(12 * kd * std::log(kd / sigma.get_d()) / (d * d));
  return r < 1 ? 1 : static_cast<unsigned long>(r);
}

SampleParams make_sample_params(const Rational& delta, const Rational& sigma, std::uint64_t seed,
                                unsigned long k) {
  if (sgn(delta) <= 0 || delta >= 1) throw std::invalid_argument("delta must lie in (0, 1)");
  if (sgn(sigma) <= 0 || sigma >= 1) throw std::invalid_argument("sigma must lie in (0, 1)");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  SampleParams p;
  p.delta = delta;
  p.sigma = sigma;
  p.seed = seed;
  p.k = k;
  return p;
}

std::vector<Point> draw_samples(const Polygon& polygon, std::uint64_t seed, unsigned long r) {
  const BoundingBox box = bounding_box(polygon);
  const Rational w = box.hi.x - box.lo.x, h = box.hi.y - box.lo.y;
  const Rational unit = pow2(-62);
  std::mt19937_64 rng(seed);
  const auto coord = [&]() -> Rational {
    const std::uint64_t u = rng() >> 2;
    return Rational(Integer(static_cast<unsigned long>(u))) * unit;
  };
  std::vector<Point> out;
  out.reserve(r);
  const unsigned long limit = 1000 * r + 1000;
  for (unsigned long tries = 0; out.size() < r; ++tries) {
    if (tries > limit) throw InvariantViolation("rejection sampling did not terminate");
    const Rational u = coord();
    const Rational v = coord();
    Point p{box.lo.x + w * u, box.lo.y + h * v};
    if (locate(p, polygon) == Location::interior) out.push_back(std::move(p));
  }
  return out;
}

namespace {

struct ApproxRing {
  std::vector<ApproxPoint> pts;
  double lox = 0, hix = 0, loy = 0, hiy = 0;
};

ApproxRing approx_ring(const Ring& ring) {
  ApproxRing out;
  for (const auto& p : ring) out.pts.push_back(approx(p));
  out.lox = out.loy = INFINITY;
  out.hix = out.hiy = -INFINITY;
  for (const auto& p : out.pts) {
    out.lox = std::min(out.lox, p.x);
    out.hix = std::max(out.hix, p.x);
    out.loy = std::min(out.loy, p.y);
    out.hiy = std::max(out.hiy, p.y);
  }
  return out;
}

bool close(double a, double b) {
  return std::fabs(a - b) <= 1e-13 * std::max({std::fabs(a), std::fabs(b), 1e-300});
}

/// 1 inside, 0 outside, 2 undecided. Points on the boundary are undecided.
int approx_contains(const ApproxRing& ring, const ApproxPoint& q) {
  const double mx = 1e-12 * (std::fabs(ring.hix) + std::fabs(ring.lox) + 1e-300);
  const double my = 1e-12 * (std::fabs(ring.hiy) + std::fabs(ring.loy) + 1e-300);
  if (q.x < ring.lox - mx || q.x > ring.hix + mx || q.y < ring.loy - my || q.y > ring.hiy + my)
    return 0;
  const std::size_t n = ring.pts.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const ApproxPoint& a = ring.pts[i];
    const ApproxPoint& b = ring.pts[(i + 1) % n];
    if (close(a.y, q.y) || close(b.y, q.y)) return 2;
    if ((a.y > q.y) == (b.y > q.y)) continue;
    const int s = approx_cross_sign(a, b, a, q);
    if (s == 2) return 2;
    // Upward edge with q on its left, or downward edge with q on its right.
    if ((b.y > a.y) == (s > 0)) inside = !inside;
  }
  return inside ? 1 : 0;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> visibility_sets(const Polygon& polygon,
                                                        std::span<const Point> guards,
                                                        std::span<const Point> points) {
  std::vector<ApproxPoint> ap;
  ap.reserve(points.size());
  for (const auto& p : points) ap.push_back(approx(p));
  std::vector<std::vector<std::uint32_t>> out(points.size());
  for (std::uint32_t g = 0; g < guards.size(); ++g) {
    const ApproxRing ring = approx_ring(visibility_polygon(polygon, guards[g]).boundary);
    for (std::size_t i = 0; i < points.size(); ++i) {
      int s = approx_contains(ring, ap[i]);
      if (s == 2) s = sees(polygon, guards[g], points[i]) ? 1 : 0;
      if (s == 1) out[i].push_back(g);
    }
  }
  return out;
}

namespace {

/// Greedy hitting of the elements in `open` (indices into sets).
std::vector<std::uint32_t> greedy_hit(const std::vector<std::vector<std::uint32_t>>& sets,
                                      std::vector<std::size_t> open, std::size_t candidates) {
  std::vector<std::vector<std::size_t>> members(candidates);
  std::vector<std::size_t> count(candidates, 0);
  for (const auto q : open)
    for (const auto c : sets[q]) {
      members[c].push_back(q);
      ++count[c];
    }
  std::vector<char> done(sets.size(), 0);
  std::vector<std::uint32_t> chosen;
  std::size_t left = open.size();
  while (left > 0) {
    std::uint32_t pick = 0;
    for (std::uint32_t c = 1; c < candidates; ++c)
      if (count[c] > count[pick]) pick = c;
    if (count[pick] == 0) throw InvariantViolation("element with no hitting candidate");
    chosen.push_back(pick);
    for (const auto q : members[pick]) {
      if (done[q]) continue;
      done[q] = 1;
      --left;
      for (const auto c : sets[q]) --count[c];
    }
  }
  return chosen;
}

}  // namespace

HittingResult doubling_hitting_set(const std::vector<std::vector<std::uint32_t>>& sets,
                                   std::size_t candidates) {
  HittingResult out;
  for (const auto& s : sets)
    if (s.empty()) throw std::invalid_argument("element that no candidate hits");
  if (sets.empty()) return out;
  for (unsigned long c = 1;; c *= 2) {
    // Weights are powers of two; doubles hold them exactly for this range.
    std::vector<double> w(candidates, 1.0);
    const double rounds = 4.0 * static_cast<double>(c) *
                              std::log2(std::max(2.0, static_cast<double>(candidates) / c)) +
                          1;
    for (unsigned long round = 0; round < rounds; ++round) {
      ++out.iterations;
      double total = 0;
      for (const double x : w) total += x;
      const double threshold = total / (2.0 * static_cast<double>(c));
      std::vector<std::size_t> heavy;
      for (std::size_t q = 0; q < sets.size(); ++q) {
        double s = 0;
        for (const auto j : sets[q]) s += w[j];
        if (s >= threshold) heavy.push_back(q);
      }
      std::vector<std::uint32_t> net = greedy_hit(sets, std::move(heavy), candidates);
      std::sort(net.begin(), net.end());
      std::optional<std::size_t> missed;
      for (std::size_t q = 0; q < sets.size() && !missed; ++q) {
        const bool hit = std::any_of(sets[q].begin(), sets[q].end(), [&](std::uint32_t j) {
          return std::binary_search(net.begin(), net.end(), j);
        });
        if (!hit) missed = q;
      }
      if (!missed) {
        out.chosen = std::move(net);
        out.size_guess = c;
        return out;
      }
      for (const auto j : sets[*missed]) w[j] *= 2;
    }
    if (c >= candidates) {
      // Every element is hittable, so the greedy cover always exists.
      std::vector<std::size_t> all(sets.size());
      for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
      out.chosen = greedy_hit(sets, std::move(all), candidates);
      std::sort(out.chosen.begin(), out.chosen.end());
      out.size_guess = c;
      return out;
    }
  }
}

SampleResult sample_solve(const Polygon& polygon, const SampleParams& params) {
  SampleResult out;
  out.k = params.k;
  out.samples = draw_samples(polygon, params.seed, params.sample_size());

  std::vector<Point> candidates = polygon.vertices();
  {
    const std::size_t m = std::min(params.arrangement_samples, out.samples.size());
    const CellComplex c =
        build_complex(polygon, std::span<const Point>(out.samples.data(), m));
    for (const auto& cell : c.cells) candidates.push_back(cell.rep);
    std::set<Point> seen;
    std::erase_if(candidates, [&](const Point& p) { return !seen.insert(p).second; });
  }
  out.candidates = candidates.size();

  const auto sets = visibility_sets(polygon, candidates, out.samples);
  out.hitting = doubling_hitting_set(sets, candidates.size());
  for (const auto j : out.hitting.chosen) out.guards.push_back(candidates[j]);
  return out;
}

SampleResult sample_search(const Polygon& polygon, const Rational& delta, const Rational& sigma,
                           std::uint64_t seed) {
  const unsigned long n = polygon.vertex_count();
  for (unsigned long k = 1;; k *= 2) {
    SampleResult r = sample_solve(polygon, make_sample_params(delta, sigma, seed, k));
    const double bound = 2.0 * k * std::ceil(std::log2(2.0 * k));
    if (static_cast<double>(r.guards.size()) <= bound || k >= n) return r;
  }
}

}  // namespace artgallery

#pragma once

// Comparison algorithms: greedy residual-area guarding and random sampling
// followed by a discrete hitting-set phase.

#include <cstdint>
#include <optional>
#include <vector>

#include "artgallery/mwu_solver.hpp"

namespace artgallery {

// ------------------------------------------------------------------ greedy

struct GreedyResult {
  std::vector<Point> guards;
  std::vector<Rational> residual;  // uncovered area before each step, then the final one
  unsigned long iterations = 0;
  unsigned long cap = 0;           // ceil(opt * ln(1/delta) / (1 - nu))
};

/// ceil(opt * ln(1/delta) / (1 - nu)).
unsigned long greedy_cap(unsigned long opt, const Rational& delta, const Rational& nu);

/// Repeatedly adds the point maximizing the (approximately) uncovered visible
/// area until less than delta * area(H) is uncovered. Exceeding the cap for
/// `opt_upper` (vertex count when unset) is an InvariantViolation.
GreedyResult greedy_solve(const Polygon& polygon, const Rational& delta, const Rational& nu,
                          std::optional<unsigned long> opt_upper = std::nullopt,
                          OracleOptions options = {});

// ---------------------------------------------------------------- sampling

struct SampleParams {
  Rational delta;
  Rational sigma;
  std::uint64_t seed = 0;
  unsigned long k = 1;
  /// Samples whose visibility arrangement contributes candidate guards.
  std::size_t arrangement_samples = 16;

  /// r = ceil(12 k ln(k / sigma) / delta^2), at least 1.
  unsigned long sample_size() const;
};

/// Validates delta, sigma in (0, 1) and k >= 1.
SampleParams make_sample_params(const Rational& delta, const Rational& sigma, std::uint64_t seed,
                                unsigned long k);

/// r points of H drawn uniformly by rejection from the bounding box, with
/// coordinates on a 2^-62 lattice of the box. Deterministic in the seed.
std::vector<Point> draw_samples(const Polygon& polygon, std::uint64_t seed, unsigned long r);

struct HittingResult {
  std::vector<std::uint32_t> chosen;  // candidate indices
  unsigned long size_guess = 0;       // c for which weight doubling succeeded
  unsigned long iterations = 0;       // total doubling rounds over all guesses
};

/// Discrete hitting set by weight doubling. `sets[q]` lists the candidates
/// that hit element q (sorted). Every element must be hittable.
HittingResult doubling_hitting_set(const std::vector<std::vector<std::uint32_t>>& sets,
                                   std::size_t candidates);

struct SampleResult {
  std::vector<Point> guards;
  std::vector<Point> samples;
  std::size_t candidates = 0;
  unsigned long k = 0;
  HittingResult hitting;
};

/// Samples Q, then guards all of Q with candidates drawn from the polygon
/// vertices and the cell representatives of the visibility arrangement of a
/// prefix of Q.
SampleResult sample_solve(const Polygon& polygon, const SampleParams& params);

/// Doubles k from 1 until the discrete phase succeeds with at most
/// 2k * ceil(log2(2k)) guards, or k exceeds the vertex count.
SampleResult sample_search(const Polygon& polygon, const Rational& delta, const Rational& sigma,
                           std::uint64_t seed);

/// Which of `points` each guard sees: result[i] lists the guards seeing
/// points[i]. Floating-point screening with exact fallback.
std::vector<std::vector<std::uint32_t>> visibility_sets(const Polygon& polygon,
                                                        std::span<const Point> guards,
                                                        std::span<const Point> points);

}  // namespace artgallery

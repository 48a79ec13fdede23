#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "artgallery/oracle.hpp"

namespace artgallery {

struct SolveParams {
  Rational eps;
  Rational delta;
  Rational nu;
  unsigned long T = 1;
  /// When set, more than t_max(opt_upper) iterations is an internal error.
  std::optional<unsigned long> opt_upper;
};

/// T = ceil(ln(1/delta) / eps^2). Throws std::invalid_argument unless
/// 0 < eps <= 0.68 and delta, nu lie in (0, 1).
SolveParams make_params(const Rational& eps, const Rational& delta, const Rational& nu);

/// Iteration bound opt/(eps(1-nu)) * (T ln(1/(1-eps)) + ln(1/delta)).
double t_max(double opt, const SolveParams& params);

struct FractionalSolution {
  std::vector<Point> support;  // with multiplicity, each of weight 1/T
  unsigned long T = 1;

  Rational mass() const { return Rational(static_cast<unsigned long>(support.size())) / T; }
};

struct IterationTrace {
  unsigned long t = 0;
  Point point;
  Rational active_area;    // area(H_t) before the step
  Rational active_weight;  // w_t(H_t) before the step
  std::size_t cells = 0;
  OracleCertificate certificate;
  Rational dropped_bound;   // nu/(2(1-nu/2)) * U
};

struct SolveResult {
  FractionalSolution fractional;
  std::vector<IterationTrace> trace;
  CellComplex complex;  // final complex over the support
  GridSpec grid;
  Rational final_active_area;
};

/// area(H_t): total area of cells seen by fewer than T guards.
Rational active_area(const CellComplex& complex, unsigned long T);

/// w_t(H_t) = sum over active cells of (1-eps)^{|label|} * area.
Rational weight_of_active(const CellComplex& complex, unsigned long T, const Rational& eps);

using TraceSink = std::function<void(const IterationTrace&)>;

/// Repeatedly adds the oracle's point while area(H_t) >= delta * area(H).
SolveResult solve(const Polygon& polygon, const SolveParams& params, const TraceSink& sink = {},
                  OracleOptions options = {});

}  // namespace artgallery

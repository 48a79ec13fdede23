#include "artgallery/mwu_solver.hpp"

#include <cmath>

namespace artgallery {

SolveParams make_params(const Rational& eps, const Rational& delta, const Rational& nu) {
  if (sgn(eps) <= 0 || eps > ratio(68, 100))
    throw std::invalid_argument("eps must lie in (0, 0.68]");
  if (sgn(delta) <= 0 || delta >= 1) throw std::invalid_argument("delta must lie in (0, 1)");
  if (sgn(nu) <= 0 || nu >= 1) throw std::invalid_argument("nu must lie in (0, 1)");
  SolveParams p;
  p.eps = eps;
  p.delta = delta;
  p.nu = nu;
  const double e = eps.get_d();
  const double t = std::ceil(-ln(delta) / (e * e));
  p.T = t < 1 ? 1 : static_cast<unsigned long>(t);
  return p;
}

double t_max(double opt, const SolveParams& params) {
  const double e = params.eps.get_d();
  const double nu = params.nu.get_d();
  return opt / (e * (1 - nu)) *
         (static_cast<double>(params.T) * -std::log1p(-e) - ln(params.delta));
}

Rational active_area(const CellComplex& complex, unsigned long T) {
  Rational sum(0);
  for (const auto& c : complex.cells)
    if (c.label.size() < T) sum += c.area;
  return sum;
}

Rational weight_of_active(const CellComplex& complex, unsigned long T, const Rational& eps) {
  const auto w = weight_table(eps, T);
  Rational sum(0);
  for (const auto& c : complex.cells)
    if (c.label.size() < T) sum += w[c.label.size()] * c.area;
  return sum;
}

namespace {

/// n (h+1) (t+1)^2 with t the iteration bound for Opt <= n.
Rational default_r_max(const Polygon& polygon, const SolveParams& params) {
  const double n = static_cast<double>(polygon.vertex_count());
  const double tbar = t_max(n, params);
  const double r = n * static_cast<double>(polygon.hole_count() + 1) * (tbar + 1) * (tbar + 1);
  return Rational(ceil(Rational(r)));
}

}  // namespace

SolveResult solve(const Polygon& polygon, const SolveParams& params, const TraceSink& sink,
                  OracleOptions options) {
  if (params.T < 1) throw std::invalid_argument("T must be at least 1");
  SolveResult out;
  Oracle oracle(polygon, options);
  out.complex = base_complex(polygon);
  Rational r_max = default_r_max(polygon, params);
  const auto regrid = [&] {
    return grid_spec(polygon, params.eps, params.delta, params.nu, params.T, r_max);
  };
  out.grid = regrid();

  std::optional<unsigned long> cap;
  if (params.opt_upper)
    cap = static_cast<unsigned long>(std::ceil(t_max(static_cast<double>(*params.opt_upper), params)));

  const Rational total = polygon.area();
  const Rational drop_factor = params.nu / (2 * (1 - params.nu / 2));
  unsigned long t = 0;
  for (;;) {
    const Rational active = active_area(out.complex, params.T);
    if (active < params.delta * total) {
      out.final_active_area = active;
      break;
    }
    if (cap && t >= *cap) throw InvariantViolation("iteration count exceeded t_max");
    const Rational measured(static_cast<unsigned long>(out.complex.cells.size()));
    if (measured > r_max) {
      r_max = measured;
      out.grid = regrid();
    }

    IterationTrace it;
    it.t = t;
    it.active_area = active;
    it.active_weight = weight_of_active(out.complex, params.T, params.eps);
    it.cells = out.complex.cells.size();
    it.certificate = oracle.maximize(out.complex, params.T, params.eps, params.nu, out.grid);
    it.dropped_bound = drop_factor * it.certificate.upper;
    it.point = it.certificate.point;
    if (it.certificate.dropped_area > it.dropped_bound)
      throw InvariantViolation("rounding dropped more area than the bound allows");

    add_guard(out.complex, it.point, oracle.visibility());
    out.fractional.support.push_back(it.point);
    if (sink) sink(it);
    out.trace.push_back(std::move(it));
    ++t;
  }
  out.fractional.T = params.T;
  return out;
}

}  // namespace artgallery

#include "artgallery/reports.hpp"

#include <chrono>
#include <sstream>

#include "artgallery/epsnet.hpp"

namespace artgallery {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<unsigned long> opt_upper(const Instance& instance) {
  if (instance.opt && instance.opt->upper) return instance.opt->upper;
  return std::nullopt;
}

}  // namespace

Json trace_to_json(const IterationTrace& it) {
  Json j;
  j["t"] = it.t;
  j["point"] = point_to_json(it.point);
  j["cells"] = it.cells;
  j["active_area"] = to_string(it.active_area);
  j["active_weight"] = to_string(it.active_weight);
  j["achieved"] = to_string(it.certificate.achieved);
  j["upper"] = to_string(it.certificate.upper);
  j["theta"] = to_string(it.certificate.theta);
  j["dropped_area"] = to_string(it.certificate.dropped_area);
  j["regions"] = it.certificate.regions;
  j["reused_guard"] = it.certificate.reused_guard;
  return j;
}

SolveReport mwu_report(const Instance& instance, const SolveParams& params,
                       const TraceSink& sink) {
  SolveParams p = params;
  if (!p.opt_upper) p.opt_upper = opt_upper(instance);
  std::ostringstream certs;
  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult r = solve(instance.polygon, p, [&](const IterationTrace& it) {
    certs << to_string(it.point) << ' ' << to_string(it.certificate.achieved) << ' '
          << to_string(it.certificate.upper) << '\n';
    if (sink) sink(it);
  });
  const NetResult net = extract_net(r.complex, r.fractional);
  SolveReport rep;
  rep.algorithm = "mwu";
  rep.params = {{"eps", to_string(p.eps)}, {"delta", to_string(p.delta)},
                {"nu", to_string(p.nu)}, {"T", p.T}};
  rep.guards = net.net;
  rep.coverage = verify(instance.polygon, net.net);
  rep.iterations = r.trace.size();
  rep.wall_seconds = seconds_since(t0);
  rep.certificates_digest = digest(certs.str());
  rep.extra["support_size"] = r.fractional.support.size();
  rep.extra["fractional_mass"] = to_string(r.fractional.mass());
  rep.extra["heavy_cells"] = net.heavy_cells;
  rep.extra["heavy_ranges"] = net.heavy_ranges;
  rep.extra["grid_exponent"] = r.grid.exponent;
  return rep;
}

SolveReport greedy_report(const Instance& instance, const Rational& delta, const Rational& nu) {
  const auto t0 = std::chrono::steady_clock::now();
  const GreedyResult g = greedy_solve(instance.polygon, delta, nu, opt_upper(instance));
  SolveReport rep;
  rep.algorithm = "greedy";
  rep.params = {{"delta", to_string(delta)}, {"nu", to_string(nu)}};
  rep.guards = g.guards;
  rep.coverage = verify(instance.polygon, g.guards);
  rep.iterations = g.iterations;
  rep.wall_seconds = seconds_since(t0);
  rep.extra["iteration_cap"] = g.cap;
  return rep;
}

SolveReport sample_report(const Instance& instance, const Rational& delta, const Rational& sigma,
                          std::uint64_t seed, unsigned long k) {
  const auto t0 = std::chrono::steady_clock::now();
  const SampleResult s =
      k > 0 ? sample_solve(instance.polygon, make_sample_params(delta, sigma, seed, k))
            : sample_search(instance.polygon, delta, sigma, seed);
  SolveReport rep;
  rep.algorithm = "sample";
  rep.params = {{"delta", to_string(delta)}, {"sigma", to_string(sigma)}, {"seed", seed},
                {"k", s.k}};
  rep.guards = s.guards;
  rep.coverage = verify(instance.polygon, s.guards);
  rep.iterations = s.hitting.iterations;
  rep.wall_seconds = seconds_since(t0);
  rep.extra["samples"] = s.samples.size();
  rep.extra["candidates"] = s.candidates;
  return rep;
}

}  // namespace artgallery

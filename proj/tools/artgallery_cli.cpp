// artgallery: command-line front end.
//
//   artgallery gen comb(4) --out comb4.json
//   artgallery solve comb4.json --eps 1/2 --delta 1/10 --nu 1/2 --trace trace.jsonl
//   artgallery verify comb4.json report.json
//
// Exit status: 0 on success, 2 for bad input, 3 when an internal invariant fails.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "artgallery/reports.hpp"

using namespace artgallery;

namespace {

struct Options {
  std::string instance;
  std::string report;
  std::string out;
  std::string trace;
  std::string eps = "1/2";
  std::string delta = "1/10";
  std::string nu = "1/2";
  std::string sigma = "1/10";
  std::uint64_t seed = 0;
  unsigned long k = 0;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

/// A JSON file, or a generator spec such as comb(4).
Instance load_instance(const std::string& arg) {
  if (std::filesystem::exists(arg)) return instance_from_json(read_json(arg));
  return generate(arg);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::invalid_argument("cannot write " + o.out);
  f << text;
}

int run_gen(const Options& o) {
  emit(o, instance_to_json(generate(o.instance)).dump(2) + "\n");
  return 0;
}

int run_solve(const Options& o) {
  const Instance in = load_instance(o.instance);
  const SolveParams p =
      make_params(parse_rational(o.eps), parse_rational(o.delta), parse_rational(o.nu));
  std::ofstream trace;
  if (!o.trace.empty()) {
    trace.open(o.trace);
    if (!trace) throw std::invalid_argument("cannot write " + o.trace);
  }
  const SolveReport rep = mwu_report(in, p, [&](const IterationTrace& it) {
    if (trace) trace << trace_to_json(it).dump() << '\n';
  });
  emit(o, report_to_json(rep).dump(2) + "\n");
  return 0;
}

int run_greedy(const Options& o) {
  const Instance in = load_instance(o.instance);
  const SolveReport rep = greedy_report(in, parse_rational(o.delta), parse_rational(o.nu));
  emit(o, report_to_json(rep).dump(2) + "\n");
  return 0;
}

int run_sample(const Options& o) {
  const Instance in = load_instance(o.instance);
  const SolveReport rep =
      sample_report(in, parse_rational(o.delta), parse_rational(o.sigma), o.seed, o.k);
  emit(o, report_to_json(rep).dump(2) + "\n");
  return 0;
}

int run_opt(const Options& o) {
  const Instance in = load_instance(o.instance);
  Json j;
  j["name"] = in.name;
  j["opt"] = bracket_to_json(opt_bracket(in.polygon));
  emit(o, j.dump(2) + "\n");
  return 0;
}

int run_verify(const Options& o) {
  const Instance in = load_instance(o.instance);
  const SolveReport rep = report_from_json(read_json(o.report));
  const Rational c = verify(in.polygon, rep.guards);
  Json j;
  j["coverage"] = to_string(c);
  j["reported"] = to_string(rep.coverage);
  j["matches"] = c == rep.coverage;
  emit(o, j.dump(2) + "\n");
  return c == rep.coverage ? 0 : 3;
}

int run_render(const Options& o) {
  const Instance in = load_instance(o.instance);
  std::vector<Point> guards;
  if (!o.report.empty()) guards = report_from_json(read_json(o.report)).guards;
  emit(o, render_svg(in.polygon, guards));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-rational art gallery guarding"};
  app.require_subcommand(1);
  Options o;

  const auto instance_arg = [&](CLI::App* sub) {
    sub->add_option("instance", o.instance, "Instance JSON file or generator spec")->required();
    sub->add_option("--out", o.out, "Write output here instead of stdout");
  };
  auto* gen = app.add_subcommand("gen", "Generate convex(m), lshape, comb(k) or orthogonal(m,holes,seed)");
  instance_arg(gen);
  auto* solve_cmd = app.add_subcommand("solve", "Multiplicative-weights solver plus net rounding");
  instance_arg(solve_cmd);
  solve_cmd->add_option("--eps", o.eps, "Weight decay, in (0, 0.68]");
  solve_cmd->add_option("--delta", o.delta, "Allowed uncovered fraction");
  solve_cmd->add_option("--nu", o.nu, "Oracle slack");
  solve_cmd->add_option("--trace", o.trace, "Per-iteration JSON lines");
  auto* greedy = app.add_subcommand("greedy", "Greedy residual-area baseline");
  instance_arg(greedy);
  greedy->add_option("--delta", o.delta);
  greedy->add_option("--nu", o.nu);
  auto* sample = app.add_subcommand("sample", "Random sampling plus discrete hitting set");
  instance_arg(sample);
  sample->add_option("--delta", o.delta);
  sample->add_option("--sigma", o.sigma, "Failure probability");
  sample->add_option("--seed", o.seed);
  sample->add_option("--k", o.k, "Guard-count scale; searched by doubling when omitted");
  auto* opt = app.add_subcommand("opt", "Bracket the optimal guard count");
  instance_arg(opt);
  auto* verify_cmd = app.add_subcommand("verify", "Recompute a report's exact coverage");
  instance_arg(verify_cmd);
  verify_cmd->add_option("report", o.report, "Report JSON")->required();
  auto* render = app.add_subcommand("render", "SVG drawing of an instance and a report's guards");
  instance_arg(render);
  render->add_option("report", o.report, "Report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) return run_gen(o);
    if (*solve_cmd) return run_solve(o);
    if (*greedy) return run_greedy(o);
    if (*sample) return run_sample(o);
    if (*opt) return run_opt(o);
    if (*verify_cmd) return run_verify(o);
    if (*render) return run_render(o);
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

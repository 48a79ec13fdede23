#pragma once

// Runs an algorithm on an instance and packages the result with its exactly
// verified coverage.

#include "artgallery/baselines.hpp"
#include "artgallery/io.hpp"

namespace artgallery {

/// MWU solve followed by net extraction. The instance's Opt upper bound, if
/// any, caps the iteration count.
SolveReport mwu_report(const Instance& instance, const SolveParams& params,
                       const TraceSink& sink = {});

SolveReport greedy_report(const Instance& instance, const Rational& delta, const Rational& nu);

/// k = 0 searches k by doubling.
SolveReport sample_report(const Instance& instance, const Rational& delta, const Rational& sigma,
                          std::uint64_t seed, unsigned long k);

/// One JSON object per iteration, all rationals as strings.
Json trace_to_json(const IterationTrace& it);

}  // namespace artgallery

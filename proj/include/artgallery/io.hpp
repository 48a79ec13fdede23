#pragma once

// JSON encoding of instances and solve reports. Rationals are strings "p/q".

#include <json.hpp>
#include <string>

#include "artgallery/harness.hpp"

namespace artgallery {

using Json = nlohmann::ordered_json;

Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

Json instance_to_json(const Instance& instance);
/// Throws std::invalid_argument on malformed input or an invalid polygon.
Instance instance_from_json(const Json& j);

Json bracket_to_json(const OptBracket& b);

struct SolveReport {
  std::string algorithm;
  Json params = Json::object();
  std::vector<Point> guards;
  Rational coverage;
  unsigned long iterations = 0;
  double wall_seconds = 0;
  std::string certificates_digest;  // hex, empty when there are none
  Json extra = Json::object();
};

Json report_to_json(const SolveReport& r);
SolveReport report_from_json(const Json& j);

/// Hex digest of a canonical text rendering of a certificate list.
std::string digest(const std::string& text);

}  // namespace artgallery

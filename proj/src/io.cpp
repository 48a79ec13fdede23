#include "artgallery/io.hpp"

#include <cstdio>
#include <functional>

namespace artgallery {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw std::invalid_argument("coordinate must be a \"p/q\" string or an integer");
}

Json ring_to_json(const Ring& r) {
  Json a = Json::array();
  for (const auto& p : r) a.push_back(point_to_json(p));
  return a;
}

Ring ring_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("ring must be an array of points");
  Ring r;
  for (const auto& p : j) r.push_back(point_from_json(p));
  return r;
}

}  // namespace

Json point_to_json(const Point& p) { return Json::array({to_string(p.x), to_string(p.y)}); }

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("point must be [x, y]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

Json instance_to_json(const Instance& instance) {
  Json j;
  j["name"] = instance.name;
  j["outer"] = ring_to_json(instance.polygon.outer());
  Json holes = Json::array();
  for (const auto& h : instance.polygon.holes()) holes.push_back(ring_to_json(h));
  j["holes"] = holes;
  if (instance.opt) j["opt"] = bracket_to_json(*instance.opt);
  return j;
}

Instance instance_from_json(const Json& j) {
  try {
    Instance in;
    in.name = j.value("name", std::string("unnamed"));
    std::vector<Ring> holes;
    if (j.contains("holes"))
      for (const auto& h : j.at("holes")) holes.push_back(ring_from_json(h));
    in.polygon = Polygon(ring_from_json(j.at("outer")), std::move(holes));
    if (j.contains("opt")) {
      const Json& o = j.at("opt");
      OptBracket b;
      if (o.contains("lower") && !o.at("lower").is_null()) b.lower = o.at("lower").get<unsigned long>();
      if (o.contains("upper") && !o.at("upper").is_null()) b.upper = o.at("upper").get<unsigned long>();
      in.opt = b;
    }
    return in;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance: ") + e.what());
  }
}

Json bracket_to_json(const OptBracket& b) {
  Json j;
  j["lower"] = b.lower ? Json(*b.lower) : Json(nullptr);
  j["upper"] = b.upper ? Json(*b.upper) : Json(nullptr);
  if (!b.witnesses.empty()) {
    Json w = Json::array();
    for (const auto& p : b.witnesses) w.push_back(point_to_json(p));
    j["witnesses"] = w;
  }
  if (!b.cover.empty()) {
    Json c = Json::array();
    for (const auto& p : b.cover) c.push_back(point_to_json(p));
    j["cover"] = c;
  }
  return j;
}

Json report_to_json(const SolveReport& r) {
  Json j;
  j["algorithm"] = r.algorithm;
  j["params"] = r.params;
  Json g = Json::array();
  for (const auto& p : r.guards) g.push_back(point_to_json(p));
  j["guards"] = g;
  j["guard_count"] = r.guards.size();
  j["coverage"] = to_string(r.coverage);
  j["iterations"] = r.iterations;
  j["wall_seconds"] = r.wall_seconds;
  j["certificates_digest"] = r.certificates_digest;
  for (const auto& [k, v] : r.extra.items()) j[k] = v;
  return j;
}

SolveReport report_from_json(const Json& j) {
  try {
    SolveReport r;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.params = j.value("params", Json::object());
    for (const auto& p : j.at("guards")) r.guards.push_back(point_from_json(p));
    r.coverage = parse_rational(j.at("coverage").get<std::string>());
    r.iterations = j.value("iterations", 0ul);
    r.wall_seconds = j.value("wall_seconds", 0.0);
    r.certificates_digest = j.value("certificates_digest", std::string());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

std::string digest(const std::string& text) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016zx", std::hash<std::string>{}(text));
  return buf;
}

}  // namespace artgallery

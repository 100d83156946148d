#include "holo/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "holo/errors.hpp"

namespace holo {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorKind::parse, std::string("invalid JSON: ") + e.what());
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) raise(ErrorKind::parse, "\"" + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) raise(ErrorKind::parse, "\"" + key + "\" must be finite");
  return x;
}

CoordVector coordinates(const json& obj, const std::string& what) {
  if (!obj.is_object()) raise(ErrorKind::parse, what + " must be a JSON object");
  CoordVector out{};
  for (const auto& [key, value] : obj.items()) {
    const auto c = parse_coordinate(key);
    if (!c) {
      raise(ErrorKind::parse, "unknown coordinate \"" + key + "\" in " + what +
                                  "; expected one of " + coordinate_names());
    }
    out[c->flat()] = number(value, key);
  }
  return out;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& what) {
  if (!obj.is_object()) raise(ErrorKind::parse, what + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) raise(ErrorKind::parse, "unexpected key \"" + key + "\" in " + what);
  }
}

int steps_field(const json& doc) {
  if (!doc.contains("steps_per_segment")) return 1000;
  const auto& v = doc["steps_per_segment"];
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    raise(ErrorKind::parse, "\"steps_per_segment\" must be a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

const json& segment_list(const json& doc) {
  if (!doc.contains("segments") || !doc["segments"].is_array()) {
    raise(ErrorKind::parse, "loop needs a \"segments\" array");
  }
  return doc["segments"];
}

std::pair<double, double> theta_phi(const json& obj, const std::string& what) {
  only_keys(obj, {"theta", "phi"}, what);
  return {obj.contains("theta") ? number(obj["theta"], "theta") : 0.0,
          obj.contains("phi") ? number(obj["phi"], "phi") : 0.0};
}

json point_object(const CoordVector& v) {
  json out = json::object();
  for (auto c : kAllCoordinates) out[name(c)] = v[c.flat()];
  return out;
}

}  // namespace

GrassmannianPoint parse_point(const std::string& text) {
  return {coordinates(parse_json(text), "point")};
}

Loop parse_loop(const std::string& text) {
  const json doc = parse_json(text);
  only_keys(doc, {"base", "segments", "steps_per_segment"}, "loop");
  Loop loop;
  if (doc.contains("base")) loop.base.coords = coordinates(doc["base"], "loop base");
  for (const auto& seg : segment_list(doc)) loop.segments.push_back(coordinates(seg, "segment"));
  loop.steps_per_segment = steps_field(doc);
  return loop;
}

TwoLevelLoop parse_two_level_loop(const std::string& text) {
  const json doc = parse_json(text);
  only_keys(doc, {"base", "segments", "steps_per_segment"}, "two-level loop");
  TwoLevelLoop loop;
  if (doc.contains("base")) std::tie(loop.theta0, loop.phi0) = theta_phi(doc["base"], "loop base");
  for (const auto& seg : segment_list(doc)) loop.segments.push_back(theta_phi(seg, "segment"));
  loop.steps_per_segment = steps_field(doc);
  return loop;
}

std::string to_json(const GrassmannianPoint& p) { return point_object(p.coords).dump(); }

std::string to_json(const Loop& loop) {
  json segs = json::array();
  for (const auto& s : loop.segments) {
    json obj = json::object();
    for (auto c : kAllCoordinates) {
      if (s[c.flat()] != 0.0) obj[name(c)] = s[c.flat()];
    }
    segs.push_back(obj);
  }
  return json{{"base", point_object(loop.base.coords)},
              {"segments", segs},
              {"steps_per_segment", loop.steps_per_segment}}
      .dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::parse, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace holo

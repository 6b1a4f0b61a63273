#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lawnsearch/discretize.hpp"
#include "lawnsearch/geometry.hpp"
#include "lawnsearch/schedule.hpp"
#include "lawnsearch/sim.hpp"
#include "lawnsearch/tours.hpp"

namespace lawnsearch {

using Json = nlohmann::json;

/// Malformed input file. `field()` names the offending JSON path.
class InputError : public std::runtime_error {
 public:
  InputError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline Point parse_point(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(field, "expected [x, y] with numeric coordinates");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Ring parse_ring(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field, "expected an array of [x, y] points");
  Ring ring;
  for (std::size_t i = 0; i < j.size(); ++i) ring.push_back(parse_point(j[i], field + "[" + std::to_string(i) + "]"));
  return ring;
}

inline Json point_json(Point p) { return Json::array({p.x, p.y}); }

inline Json ring_json(const Ring& ring) {
  Json arr = Json::array();
  for (Point p : ring) arr.push_back(point_json(p));
  return arr;
}

}  // namespace detail

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source, std::string("invalid JSON (") + e.what() + ")");
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path, "cannot write file");
  out << text;
}

/// {"outer": [[x,y],...], "holes": [[[x,y],...],...], "start": [x,y]}
inline PolygonalRegion region_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("region", "expected a JSON object");
  if (!j.contains("outer")) throw InputError("outer", "missing field");
  if (!j.contains("start")) throw InputError("start", "missing field");
  Ring outer = detail::parse_ring(j["outer"], "outer");
  std::vector<Ring> holes;
  if (j.contains("holes")) {
    if (!j["holes"].is_array()) throw InputError("holes", "expected an array of rings");
    for (std::size_t h = 0; h < j["holes"].size(); ++h) {
      holes.push_back(detail::parse_ring(j["holes"][h], "holes[" + std::to_string(h) + "]"));
    }
  }
  const Point start = detail::parse_point(j["start"], "start");
  try {
    return make_region(std::move(outer), std::move(holes), start);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw InputError(msg.substr(0, msg.find(':')), msg.substr(msg.find(':') + 2));
  }
}

inline Json region_to_json(const PolygonalRegion& region) {
  Json holes = Json::array();
  for (const auto& h : region.holes) holes.push_back(detail::ring_json(h));
  return {{"outer", detail::ring_json(region.outer)}, {"holes", holes}, {"start", detail::point_json(region.start)}};
}

inline PolygonalRegion load_region(const std::string& path) {
  return region_from_json(parse_json_text(read_text_file(path), path));
}

inline const char* to_string(GridKind k) { return k == GridKind::square ? "square" : "hexagonal"; }

inline const char* to_string(Motion m) {
  switch (m) {
    case Motion::rectilinear: return "rectilinear";
    case Motion::arbitrary: return "arbitrary";
    case Motion::triangular: return "triangular";
  }
  return "rectilinear";
}

/// {"kind":…, "centers":[[x,y],…], "rewards":[…], "edges":[[i,j,len],…]}
inline Json grid_to_json(const PixelGrid& grid, const DualGraph& graph) {
  Json centers = Json::array();
  for (Point c : grid.centers) centers.push_back(detail::point_json(c));
  Json edges = Json::array();
  for (const Edge& e : graph.edges()) edges.push_back(Json::array({e.from, e.to, e.length}));
  return {{"kind", to_string(grid.kind)},      {"motion", to_string(graph.motion())},
          {"start_index", grid.start_index},   {"origin_shift", detail::point_json(grid.origin_shift)},
          {"centers", centers},                {"rewards", grid.rewards},
          {"edges", edges}};
}

/// {"waypoints":[…], "cumulative_length":[…], "legs":[…], "kind":…, "node_count":…}
inline Json route_to_json(const Route& route, GridKind kind, std::size_t node_count) {
  return {{"waypoints", route.waypoints},
          {"cumulative_length", route.cumulative_length},
          {"legs", route.leg_starts},
          {"kind", to_string(kind)},
          {"node_count", node_count}};
}

struct RouteFile {
  Route route;
  std::string kind;
  std::size_t node_count = 0;
};

inline RouteFile route_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("route", "expected a JSON object");
  for (const char* key : {"waypoints", "cumulative_length"}) {
    if (!j.contains(key) || !j[key].is_array()) throw InputError(key, "missing or not an array");
  }
  RouteFile file;
  try {
    file.route.waypoints = j["waypoints"].get<std::vector<NodeId>>();
    file.route.cumulative_length = j["cumulative_length"].get<std::vector<double>>();
    if (j.contains("legs")) file.route.leg_starts = j["legs"].get<std::vector<std::size_t>>();
  } catch (const Json::exception& e) {
    throw InputError("route", std::string("bad element type (") + e.what() + ")");
  }
  if (file.route.waypoints.size() != file.route.cumulative_length.size()) {
    throw InputError("cumulative_length", "length differs from waypoints");
  }
  file.kind = j.value("kind", "square");
  file.node_count = j.value("node_count", std::size_t{0});
  return file;
}

inline RouteFile load_route(const std::string& path) {
  return route_from_json(parse_json_text(read_text_file(path), path));
}

/// {"legs":[{"budget":…, "quota":…, "tour":[…]}], "route":[…], "expected_T":…}
inline Json plan_to_json(const SearchPlan& plan, const DetectionTime& expected) {
  Json legs = Json::array();
  for (const auto& leg : plan.legs) {
    legs.push_back({{"budget", leg.budget},
                    {"quota", leg.quota},
                    {"tour", leg.tour.nodes},
                    {"length", leg.tour.length},
                    {"slack", leg.slack}});
  }
  return {{"legs", legs},
          {"route", plan.route.waypoints},
          {"expected_T", expected.finite() ? Json(expected.value) : Json(nullptr)},
          {"measured_c", plan.measured_c},
          {"scale", plan.scale}};
}

inline Json report_to_json(const std::string& name, const SimulationReport& r, bool with_timing) {
  return {{"name", name},
          {"trials", r.trials},
          {"mean", r.mean},
          {"std", r.std},
          {"undetected", r.undetected},
          {"wall_time_seconds", with_timing ? r.wall_time : 0.0},
          {"seed", r.seed}};
}

}  // namespace lawnsearch

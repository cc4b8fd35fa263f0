// Copyright 2026 The hwplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hwplan/core/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hwplan/core/frenet.hpp"

namespace hwplan::core
{

namespace
{

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

const Json & member(const Json & obj, const std::string & key, const std::string & path)
{
  if (!obj.is_object()) {
    throw InputError("schema: '" + path + "' must be an object");
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw InputError("schema: missing field '" + (path.empty() ? key : path + "." + key) + "'");
  }
  return *it;
}

double number(const Json & value, const std::string & path)
{
  if (!value.is_number()) {
    throw InputError("schema: field '" + path + "' must be a number");
  }
  return value.get<double>();
}

double number_field(const Json & obj, const std::string & key, const std::string & path)
{
  return number(member(obj, key, path), path.empty() ? key : path + "." + key);
}

const Json & array_field(const Json & obj, const std::string & key, const std::string & path)
{
  const Json & value = member(obj, key, path);
  if (!value.is_array()) {
    throw InputError("schema: field '" + (path.empty() ? key : path + "." + key) + "' must be an array");
  }
  return value;
}

Json parse_document(const std::string & text, const std::string & what)
{
  try {
    return Json::parse(text);
  } catch (const Json::parse_error & e) {
    throw InputError(what + ": parse error: " + e.what());
  }
}

RoadModel parse_road(const Json & doc)
{
  const Json & road_doc = member(doc, "road", "");
  RoadModel road;
  const Json & line = array_field(road_doc, "reference_line", "road");
  for (std::size_t k = 0; k < line.size(); ++k) {
    const std::string path = "road.reference_line[" + std::to_string(k) + "]";
    if (!line[k].is_array() || line[k].size() != 2) {
      throw InputError("schema: field '" + path + "' must be an [x, y] pair");
    }
    road.reference_line.push_back({number(line[k][0], path), number(line[k][1], path)});
  }
  road.l_road_lb = number_field(road_doc, "l_lb", "road");
  road.l_road_ub = number_field(road_doc, "l_ub", "road");
  const Json & centers = array_field(road_doc, "lane_centers", "road");
  for (std::size_t k = 0; k < centers.size(); ++k) {
    road.lane_centerlines.push_back(number(centers[k], "road.lane_centers[" + std::to_string(k) + "]"));
  }
  road.lane_width = number_field(road_doc, "lane_width", "road");
  return road;
}

VehicleState parse_ev(const Json & doc)
{
  const Json & ev_doc = member(doc, "ev", "");
  VehicleState ev;
  ev.s = number_field(ev_doc, "s", "ev");
  ev.l = number_field(ev_doc, "l", "ev");
  ev.v = number_field(ev_doc, "v", "ev");
  ev.a = number_field(ev_doc, "a", "ev");
  ev.heading = number_field(ev_doc, "heading", "ev");
  ev.dims.width = number_field(ev_doc, "width", "ev");
  ev.dims.length = number_field(ev_doc, "length", "ev");
  return ev;
}

SvTrack parse_sv(const Json & sv_doc, std::size_t index, double dt)
{
  const std::string path = "svs[" + std::to_string(index) + "]";
  SvTrack track;
  const Json & id = member(sv_doc, "id", path);
  if (id.is_string()) {
    track.id = id.get<std::string>();
  } else if (id.is_number_integer()) {
    track.id = std::to_string(id.get<long long>());
  } else {
    throw InputError("schema: field '" + path + ".id' must be a string or integer");
  }
  track.dims.width = number_field(sv_doc, "width", path);
  track.dims.length = number_field(sv_doc, "length", path);
  const Json & poses = array_field(sv_doc, "poses", path);
  for (std::size_t k = 0; k < poses.size(); ++k) {
    const std::string pose_path = path + ".poses[" + std::to_string(k) + "]";
    const Json & row = poses[k];
    if (!row.is_array() || (row.size() != 4 && row.size() != 5)) {
      throw InputError("schema: field '" + pose_path + "' must be [s, l, heading, v] or [s, l, heading, v, t]");
    }
    if (row.size() == 5) {
      const double t = number(row[4], pose_path);
      if (std::abs(t - static_cast<double>(k) * dt) > 1e-9) {
        throw InputError(
          "pose spacing mismatch: " + pose_path + " has t = " + std::to_string(t) +
          ", expected " + std::to_string(static_cast<double>(k) * dt));
      }
    }
    track.poses.push_back(
      {number(row[0], pose_path), number(row[1], pose_path), number(row[2], pose_path),
       number(row[3], pose_path)});
  }
  return track;
}

void check(bool ok, const std::string & message)
{
  if (!ok) {
    throw InputError(message);
  }
}

}  // namespace

void validate_scenario(const Scenario & scenario, const PlannerConfig & config)
{
  const RoadModel & road = scenario.road;
  check(road.reference_line.size() >= 2, "reference line needs at least two points");
  const auto arc = cumulative_arc_length(road.reference_line);
  for (std::size_t k = 1; k < arc.size(); ++k) {
    check(arc[k] > arc[k - 1], "reference line arc length must be strictly increasing");
  }
  check(road.l_road_lb < road.l_road_ub, "road bounds inverted");
  for (double c : road.lane_centerlines) {
    check(c > road.l_road_lb && c < road.l_road_ub, "lane centerline outside road bounds");
  }
  check(road.lane_width > 0.0, "lane width must be positive");

  check(scenario.dt_sample > 0.0, "dt must be positive");
  check(
    scenario.duration + 1e-9 >= config.num_steps * config.dt,
    "duration shorter than the planning horizon");

  const VehicleState & ev = scenario.ev_initial;
  check(ev.dims.valid(), "ev dimensions must be positive");
  check(ev.v >= 0.0, "ev speed must be non-negative");
  check(std::abs(ev.heading) <= config.phi_max, "ev heading exceeds phi_max");
  check(ev.l >= road.l_road_lb && ev.l <= road.l_road_ub, "ev outside road bounds");

  for (const SvTrack & sv : scenario.sv_tracks) {
    check(!sv.poses.empty(), "sv '" + sv.id + "': poses must be non-empty");
    check(sv.dims.valid(), "sv '" + sv.id + "': dimensions must be positive");
    for (const SvPose & pose : sv.poses) {
      check(pose.v >= 0.0, "sv '" + sv.id + "': speed must be non-negative");
    }
    const SvPose & first = sv.poses.front();
    check(
      first.l >= road.l_road_lb && first.l <= road.l_road_ub,
      "sv '" + sv.id + "' outside road bounds at t=0");
  }
}

Scenario load_scenario(const std::string & text, const PlannerConfig & config)
{
  const Json doc = parse_document(text, "scenario");
  check(doc.is_object(), "schema: scenario document must be an object");
  Scenario scenario;
  scenario.road = parse_road(doc);
  scenario.ev_initial = parse_ev(doc);
  scenario.dt_sample = number_field(doc, "dt", "");
  scenario.duration = number_field(doc, "duration", "");
  const Json & svs = array_field(doc, "svs", "");
  for (std::size_t k = 0; k < svs.size(); ++k) {
    scenario.sv_tracks.push_back(parse_sv(svs[k], k, scenario.dt_sample));
  }
  validate_scenario(scenario, config);
  return scenario;
}

std::string serialize_scenario(const Scenario & scenario)
{
  OrderedJson doc;
  OrderedJson road;
  OrderedJson line = OrderedJson::array();
  for (const Point2 & p : scenario.road.reference_line) {
    line.push_back({p.x, p.y});
  }
  road["reference_line"] = line;
  road["l_lb"] = scenario.road.l_road_lb;
  road["l_ub"] = scenario.road.l_road_ub;
  road["lane_centers"] = scenario.road.lane_centerlines;
  road["lane_width"] = scenario.road.lane_width;
  doc["road"] = road;

  const VehicleState & ev = scenario.ev_initial;
  doc["ev"] = OrderedJson{
    {"s", ev.s}, {"l", ev.l}, {"v", ev.v}, {"a", ev.a}, {"heading", ev.heading},
    {"width", ev.dims.width}, {"length", ev.dims.length}};

  OrderedJson svs = OrderedJson::array();
  for (const SvTrack & sv : scenario.sv_tracks) {
    OrderedJson poses = OrderedJson::array();
    for (const SvPose & p : sv.poses) {
      poses.push_back({p.s, p.l, p.heading, p.v});
    }
    svs.push_back(OrderedJson{
      {"id", sv.id}, {"width", sv.dims.width}, {"length", sv.dims.length}, {"poses", poses}});
  }
  doc["svs"] = svs;
  doc["dt"] = scenario.dt_sample;
  doc["duration"] = scenario.duration;
  return doc.dump(1) + "\n";
}

PlannerConfig load_config(const std::string & text, PlannerConfig base)
{
  const Json doc = parse_document(text, "config");
  check(doc.is_object(), "schema: config document must be an object");
  for (const auto & [key, value] : doc.items()) {
    if (key == "N") {
      check(value.is_number_integer(), "schema: field 'N' must be an integer");
      base.num_steps = value.get<int>();
    } else if (key == "lambda") {
      check(value.is_number_integer(), "schema: field 'lambda' must be an integer");
      base.num_segments = value.get<int>();
    } else if (key == "k_min_steps") {
      check(value.is_number_integer(), "schema: field 'k_min_steps' must be an integer");
      base.k_min_steps = value.get<int>();
    } else if (key == "qp_max_iter") {
      check(value.is_number_integer(), "schema: field 'qp_max_iter' must be an integer");
      base.qp_max_iter = value.get<int>();
    } else if (key == "weights") {
      check(value.is_array() && value.size() == 6, "schema: field 'weights' must hold 6 numbers");
      for (std::size_t k = 0; k < 6; ++k) {
        base.weights[k] = number(value[k], "weights[" + std::to_string(k) + "]");
      }
    } else if (key == "mode") {
      check(value.is_string(), "schema: field 'mode' must be \"bnb\" or \"convex\"");
      const auto mode = value.get<std::string>();
      if (mode == "bnb") {
        base.mode = SolveMode::kBranchAndBound;
      } else if (mode == "convex") {
        base.mode = SolveMode::kConvexEquivalent;
      } else {
        throw InputError("schema: field 'mode' must be \"bnb\" or \"convex\"");
      }
    } else {
      double * target = nullptr;
      if (key == "dt") target = &base.dt;
      else if (key == "dt_replan") target = &base.dt_replan;
      else if (key == "l_mar") target = &base.l_mar;
      else if (key == "l_buf") target = &base.l_buf;
      else if (key == "w_cell") target = &base.w_cell;
      else if (key == "l1_min") target = &base.l1_min;
      else if (key == "l1_max") target = &base.l1_max;
      else if (key == "l2_min") target = &base.l2_min;
      else if (key == "l2_max") target = &base.l2_max;
      else if (key == "l3_min") target = &base.l3_min;
      else if (key == "l3_max") target = &base.l3_max;
      else if (key == "phi_max") target = &base.phi_max;
      else if (key == "v_max") target = &base.v_max;
      else if (key == "qp_tol") target = &base.qp_tol;
      else if (key == "min_step_ds") target = &base.min_step_ds;
      if (target == nullptr) {
        throw InputError("schema: unknown config field '" + key + "'");
      }
      *target = number(value, key);
    }
  }
  base.validate();
  return base;
}

std::string read_text_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace hwplan::core

#include "parest/rbd/model_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "parest/exceptions.hpp"

namespace parest {

using nlohmann::json;

namespace {

Eigen::Vector3d read_vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw ParseError(what + ": expected an array of 3 numbers");
  return Eigen::Vector3d(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

JointType joint_type_from(const std::string& name) {
  if (name == "revolute") return JointType::Revolute;
  if (name == "prismatic") return JointType::Prismatic;
  if (name == "planar") return JointType::PlanarFloating;
  throw ParseError("unknown joint type '" + name + "' (expected revolute, prismatic or planar)");
}

std::string joint_type_name(JointType type) {
  switch (type) {
    case JointType::Revolute:
      return "revolute";
    case JointType::Prismatic:
      return "prismatic";
    case JointType::PlanarFloating:
      return "planar";
  }
  return "revolute";
}

}  // namespace

void RobotModel::validate() const {
  int roots = 0;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const Body& b = bodies[i];
    if (b.parent < 0) {
      ++roots;
    } else if (b.parent >= static_cast<int>(i)) {
      throw ParseError("body " + std::to_string(i) + ": parent index must be smaller than the body index");
    }
    if (b.joint.type != JointType::PlanarFloating && b.joint.axis.norm() < 1e-12) {
      throw ParseError("body " + std::to_string(i) + ": joint axis must be nonzero");
    }
    if (!b.inertia.vector().allFinite()) {
      throw NonFiniteData("body " + std::to_string(i) + ": non-finite inertial parameters");
    }
  }
  if (roots != 1) throw ParseError("model must have exactly one root body, found " + std::to_string(roots));
  for (const ContactFrame& c : contact_frames) {
    if (c.body < 0 || c.body >= static_cast<int>(bodies.size())) {
      throw ParseError("contact frame references unknown body " + std::to_string(c.body));
    }
  }
}

RobotModel parse_robot_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: invalid JSON: ") + e.what());
  }

  RobotModel model;
  model.name = j.value("name", "");
  if (j.contains("gravity")) model.gravity = read_vec3(j.at("gravity"), "gravity");

  if (!j.contains("bodies") || !j.at("bodies").is_array()) throw ParseError("model: missing 'bodies' array");
  for (const json& jb : j.at("bodies")) {
    Body body;
    body.name = jb.value("name", "body" + std::to_string(model.bodies.size()));
    body.parent = jb.value("parent", -1);
    const json& jj = jb.at("joint");
    body.joint.type = joint_type_from(jj.at("type").get<std::string>());
    if (jj.contains("axis")) body.joint.axis = read_vec3(jj.at("axis"), "joint axis");
    if (jb.contains("placement")) {
      const json& jp = jb.at("placement");
      if (jp.contains("translation")) body.placement.p = read_vec3(jp.at("translation"), "placement translation");
      if (jp.contains("rotation")) {
        const json& jr = jp.at("rotation");
        if (!jr.is_array() || jr.size() != 9) throw ParseError("placement rotation: expected 9 numbers (row major)");
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) body.placement.R(r, c) = jr[3 * r + c].get<double>();
      }
    }
    const json& ji = jb.at("inertia");
    if (!ji.is_array() || ji.size() != 10) throw ParseError("body inertia: expected 10 numbers");
    Vector10d theta;
    for (int k = 0; k < 10; ++k) theta(k) = ji[k].get<double>();
    body.inertia = InertialVector(theta);
    body.actuated = jb.value("actuated", body.joint.type != JointType::PlanarFloating);
    model.bodies.push_back(body);
  }

  if (j.contains("contacts")) {
    for (const json& jc : j.at("contacts")) {
      ContactFrame frame;
      frame.body = jc.at("body").get<int>();
      frame.offset = read_vec3(jc.at("offset"), "contact offset");
      frame.name = jc.value("name", "contact" + std::to_string(model.contact_frames.size()));
      model.contact_frames.push_back(frame);
    }
  }
  model.validate();
  return model;
}

RobotModel load_robot_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_robot_model(buffer.str());
}

std::string robot_model_to_json(const RobotModel& model) {
  json j;
  if (!model.name.empty()) j["name"] = model.name;
  j["gravity"] = {model.gravity(0), model.gravity(1), model.gravity(2)};
  j["bodies"] = json::array();
  for (const Body& b : model.bodies) {
    json jb;
    jb["name"] = b.name;
    jb["parent"] = b.parent;
    jb["joint"] = {{"type", joint_type_name(b.joint.type)},
                   {"axis", {b.joint.axis(0), b.joint.axis(1), b.joint.axis(2)}}};
    json jp;
    jp["translation"] = {b.placement.p(0), b.placement.p(1), b.placement.p(2)};
    std::vector<double> rot(9);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) rot[3 * r + c] = b.placement.R(r, c);
    jp["rotation"] = rot;
    jb["placement"] = jp;
    std::vector<double> theta(10);
    for (int k = 0; k < 10; ++k) theta[k] = b.inertia.vector()(k);
    jb["inertia"] = theta;
    jb["actuated"] = b.actuated;
    j["bodies"].push_back(jb);
  }
  j["contacts"] = json::array();
  for (const ContactFrame& c : model.contact_frames) {
    j["contacts"].push_back({{"body", c.body}, {"offset", {c.offset(0), c.offset(1), c.offset(2)}}, {"name", c.name}});
  }
  return j.dump(2);
}

void save_robot_model(const RobotModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write model file '" + path + "'");
  out << robot_model_to_json(model) << "\n";
}

}  // namespace parest

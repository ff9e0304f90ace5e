#ifndef PAREST_RBD_MODEL_IO_HPP_
#define PAREST_RBD_MODEL_IO_HPP_

#include <string>

#include "parest/rbd/model.hpp"

namespace parest {

/// Loads a robot model from the JSON schema documented in the README:
/// {bodies: [{parent, joint: {type, axis}, placement, inertia: [10]}],
///  gravity, contacts: [{body, offset}]}.
RobotModel load_robot_model(const std::string& path);
RobotModel parse_robot_model(const std::string& json_text);
std::string robot_model_to_json(const RobotModel& model);
void save_robot_model(const RobotModel& model, const std::string& path);

}  // namespace parest

#endif  // PAREST_RBD_MODEL_IO_HPP_

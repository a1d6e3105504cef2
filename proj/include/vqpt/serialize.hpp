#pragma once

// JSON forms used for fixtures and checkpoints:
//   StateVector / UnitaryMatrix : {"dim": D, "re": [...], "im": [...]}, row-major
//   AnsatzSpec                  : {"n": n, "d": d, "variant": "PT_VQC" | "U_VQSVD"}
//   ParamVector                 : [theta_0, theta_1, ...]

#include <nlohmann/json.hpp>

#include "vqpt/ansatz.hpp"
#include "vqpt/qcore.hpp"

namespace vqpt {

nlohmann::json to_json(const StateVector& s);
nlohmann::json to_json(const UnitaryMatrix& u);
nlohmann::json to_json(const AnsatzSpec& spec);
nlohmann::json to_json(const ParamVector& theta);

StateVector state_from_json(const nlohmann::json& j);
UnitaryMatrix unitary_from_json(const nlohmann::json& j);
AnsatzSpec ansatz_spec_from_json(const nlohmann::json& j);
ParamVector params_from_json(const nlohmann::json& j);

} // namespace vqpt

#pragma once

#include <json.hpp>

#include "ncalg/fraction.hpp"

namespace ncalg {

// Bit-exact JSON round trips. Rationals travel as exact decimal strings,
// term lists in the canonical sorted order, so export is deterministic.
nlohmann::json to_json(const MultiPoly& p);
nlohmann::json to_json(const RatFunc& f);
nlohmann::json to_json(const NormalForm& a);
nlohmann::json to_json(const RatNormalForm& a);
nlohmann::json to_json(const LeftFraction& f);

MultiPoly multipoly_from_json(const nlohmann::json& j);
RatFunc ratfunc_from_json(const nlohmann::json& j);
NormalForm normal_form_from_json(const nlohmann::json& j);
RatNormalForm rat_normal_form_from_json(const nlohmann::json& j);
// Rebuilds the localization context from the stored g and lift.
LeftFraction fraction_from_json(const nlohmann::json& j);

}  // namespace ncalg

#pragma once

#include <string>

#include "json.hpp"
#include "macc/channel.hpp"
#include "macc/joint.hpp"

namespace macc {

// Channel-spec file: {"nx1":, "nx2":, "ny":, "ny1":, "p": [[[[...]]]]} with
// p indexed [x1][x2][y][y1]; optional "labels" mapping axis name to a string
// array of matching length.  Missing axes, ragged arrays, and
// non-stochastic tensors are rejected (never renormalized).
MaccChannel parse_channel_json(const nlohmann::json& doc, int max_alphabet = kDefaultAlphabetCap);
MaccChannel load_channel_json(const std::string& path, int max_alphabet = kDefaultAlphabetCap);
nlohmann::json channel_to_json(const MaccChannel& ch);

/// Policy file: {"pU": [...], "pVgivenU": [[...]], "pX1givenU": [[...]],
/// "pX2givenV": [[...]]}.
AuxInputPolicy parse_aux_policy_json(const nlohmann::json& doc);
AuxInputPolicy load_aux_policy_json(const std::string& path);

}  // namespace macc

#pragma once

#include <string>

#include <json.hpp>

#include "treevar/classifier.hpp"
#include "treevar/density.hpp"
#include "treevar/oracle.hpp"
#include "treevar/orbits.hpp"

namespace treevar {

// JSON records emitted by `--json`. Keys come out sorted, so dumps are stable.

nlohmann::json to_json(const Verdict& verdict);
nlohmann::json to_json(const StabReport& report);
nlohmann::json to_json(const OrbitReport& report);
nlohmann::json classification_json(const LabeledTree& tree, const OrbitClass& cls, const SparsenessCheck& check);

/// Human rendering of the same records: one `key: value` line per scalar
/// field, decide traces one rule per line.
std::string render_human(const nlohmann::json& record);

}  // namespace treevar

#include "treevar/report.hpp"

#include <sstream>

namespace treevar {

using nlohmann::json;

json to_json(const Verdict& verdict) {
  json trace = json::array();
  for (const auto& step : verdict.trace) {
    trace.push_back({{"rule_id", step.rule_id},
                     {"citation", step.citation},
                     {"before", describe(step.before)},
                     {"after", step.after ? json(describe(*step.after)) : json(nullptr)},
                     {"detail", step.detail}});
  }
  return {{"status", to_string(verdict.status)}, {"trace", trace}, {"reduced", describe(verdict.reduced)}};
}

json to_json(const StabReport& report) {
  return {{"prime", report.prime},
          {"trials", report.trials},
          {"system_rank", report.system_rank},
          {"variety_dim", report.variety_dim},
          {"lie_stab_dim", report.lie_stab_dim},
          {"pgl_stab_dim", report.pgl_stab_dim},
          {"certified_dense", report.certified_dense},
          {"trial_ranks", report.trial_ranks}};
}

json to_json(const OrbitReport& report) {
  return {{"q", report.q},
          {"point_count", report.point_count},
          {"orbit_count", report.limits_hit ? json(nullptr) : json(report.orbit_count)},
          {"limits_hit", report.limits_hit},
          {"enumerated", report.enumerated}};
}

json classification_json(const LabeledTree& tree, const OrbitClass& cls, const SparsenessCheck& check) {
  return {{"kind", to_string(cls.kind)},
          {"case_label", cls.case_label ? json(*cls.case_label) : json(nullptr)},
          {"witness", cls.witness},
          {"trivially_sparse", check.trivially_sparse},
          {"vertex", check.violating_vertex ? json(tree.name(*check.violating_vertex)) : json(nullptr)},
          {"lhs", check.lhs},
          {"rhs", check.rhs}};
}

namespace {

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

}  // namespace

std::string render_human(const json& record) {
  std::ostringstream os;
  if (record.contains("status")) os << "status: " << scalar(record["status"]) << '\n';
  for (const auto& [key, value] : record.items()) {
    if (key == "trace" || key == "status") continue;
    os << key << ": " << scalar(value) << '\n';
  }
  if (record.contains("trace") && record["trace"].empty()) {
    os << "trace: -\n";
  } else if (record.contains("trace")) {
    os << "trace:\n";
    for (const auto& step : record["trace"]) {
      os << "  " << step["rule_id"].get<std::string>() << "  " << step["before"].get<std::string>();
      if (!step["after"].is_null()) os << " => " << step["after"].get<std::string>();
      os << "  [" << step["citation"].get<std::string>() << "]";
      if (!step["detail"].get<std::string>().empty()) os << "  " << step["detail"].get<std::string>();
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace treevar

#include "qclab/primitives/report.hpp"

#include "qclab/core/error.hpp"

namespace qclab {

Json TrialRecord::to_json() const {
  Json j = {{"trial", trial}, {"seed", seed}, {"mode", mode}, {"outcome", outcome}, {"bot", bot}};
  j["recovered_key"] = recovered_key ? Json(*recovered_key) : Json(nullptr);
  j["td_to_target"] = td_to_target ? Json(*td_to_target) : Json(nullptr);
  if (arm) j["arm"] = *arm;
  return j;
}

void GameReport::check_against(double reference, const std::string& rel, std::string source,
                               double sigmas) {
  bound = reference;
  relation = rel;
  bound_source = std::move(source);
  slack_sigmas = sigmas;
  if (rel == ">=") {
    pass = estimate >= bound - sigmas * sigma;
  } else if (rel == "<=") {
    pass = estimate <= bound + sigmas * sigma;
  } else {
    throw InvalidArgument("unknown bound relation '" + rel + "'");
  }
}

Json GameReport::to_json(bool include_log) const {
  Json j = {{"game", game},
            {"access_mode", access_mode},
            {"scoring", scoring},
            {"trials", trials},
            {"estimate", estimate},
            {"sigma", sigma},
            {"ci95_halfwidth", ci95_halfwidth},
            {"bound", bound},
            {"bound_source", bound_source},
            {"relation", relation},
            {"slack_sigmas", slack_sigmas},
            {"pass", pass},
            {"bot_count", bot_count},
            {"failures", failures}};
  j["wins"] = wins ? Json(*wins) : Json(nullptr);
  auto arm_json = [](const ArmStats& a) {
    return Json{{"trials", a.trials}, {"ones", a.ones}, {"rate", a.rate}};
  };
  if (arm0) j["arm0"] = arm_json(*arm0);
  if (arm1) j["arm1"] = arm_json(*arm1);
  if (include_log) {
    Json entries = Json::array();
    for (const auto& r : log) entries.push_back(r.to_json());
    j["log"] = std::move(entries);
  }
  return j;
}

}  // namespace qclab

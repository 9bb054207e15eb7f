#include "hgsparse/report.hpp"

#include "json.hpp"

namespace hgsparse {

std::string schedule_name(Schedule s) {
    switch (s) {
        case Schedule::chaining: return "chaining";
        case Schedule::dudley: return "dudley";
        case Schedule::explicit_rho: return "explicit";
    }
    return "unknown";
}

std::string report_json(const CertReport& report, const std::optional<QualityStats>& quality,
                        const SamplingPlan* plan, const SizeInfo& sizes) {
    nlohmann::json j;
    j["overall"] = report.overall();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks)
        j["checks"].push_back({{"name", c.name},
                               {"pass", c.pass},
                               {"worst_slack", c.worst_slack},
                               {"detail", c.detail}});
    if (quality) {
        j["quality"] = {{"max_rel_err_random", quality->max_rel_err_random},
                        {"max_rel_err_cuts", quality->max_rel_err_cuts
                                                 ? nlohmann::json(*quality->max_rel_err_cuts)
                                                 : nlohmann::json(nullptr)},
                        {"directions_tested", quality->directions_tested},
                        {"epsilon_target", quality->epsilon_target}};
    }
    if (plan) {
        j["plan"] = {{"rho", plan->rho},
                     {"schedule", schedule_name(plan->schedule)},
                     {"epsilon", plan->epsilon},
                     {"constant", plan->constant},
                     {"seed", plan->seed}};
    }
    j["sizes"] = {{"n", sizes.n},
                  {"m", sizes.m},
                  {"k", sizes.k},
                  {"kept", sizes.kept},
                  {"expected_kept", sizes.expected_kept}};
    return j.dump(2) + "\n";
}

}  // namespace hgsparse

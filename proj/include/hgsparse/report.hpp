#pragma once

#include <optional>
#include <string>

#include "hgsparse/certify.hpp"
#include "hgsparse/sampler.hpp"

namespace hgsparse {

struct SizeInfo {
    Index n = 0;
    Index m = 0;
    Index k = 0;
    Index kept = 0;
    double expected_kept = 0.0;
};

// JSON text with keys overall, checks[], quality{}, plan{}, sizes{}.
// quality and plan sections appear when the corresponding data is present.
std::string report_json(const CertReport& report, const std::optional<QualityStats>& quality,
                        const SamplingPlan* plan, const SizeInfo& sizes);

std::string schedule_name(Schedule s);

}  // namespace hgsparse

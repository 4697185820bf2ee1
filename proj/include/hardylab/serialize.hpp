#pragma once

// JSON views of the result types.

#include <span>

#include <json.hpp>

#include "hardylab/duality.hpp"
#include "hardylab/extremal.hpp"
#include "hardylab/fuzz.hpp"
#include "hardylab/quadrature.hpp"
#include "hardylab/verify.hpp"

namespace hardylab {

nlohmann::json to_json(const QuadResult& r);

/// {p, ratio, ratio_err, lower, upper, verdict_lower, verdict_upper, budget}
nlohmann::json to_json(const VerificationReport& r);

/// {max_pointwise_gap_monot1, max_pointwise_gap_monot2, norm_gaps, verdict}
nlohmann::json to_json(const EquivalenceReport& r);

nlohmann::json to_json(const SweepRecord& r);
nlohmann::json to_json(std::span<const SweepRecord> records);

nlohmann::json to_json(const FuzzSummary& s);

}  // namespace hardylab

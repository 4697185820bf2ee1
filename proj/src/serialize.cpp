#include "hardylab/serialize.hpp"

#include <string>

namespace hardylab {

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json sandwich_json(const Sandwich& s) {
  return {{"lo", optional_number(s.lo)}, {"hi", optional_number(s.hi)}};
}

}  // namespace

nlohmann::json to_json(const QuadResult& r) {
  return {{"value", r.value}, {"err", r.err}, {"converged", r.converged}};
}

nlohmann::json to_json(const VerificationReport& r) {
  return {{"p", r.p},
          {"ratio", r.ratio},
          {"ratio_err", r.ratio_err},
          {"lower", r.bounds.lower},
          {"upper", r.bounds.upper},
          {"verdict_lower", std::string(to_string(r.verdict_lower))},
          {"verdict_upper", std::string(to_string(r.verdict_upper))},
          {"budget", r.error_budget}};
}

nlohmann::json to_json(const EquivalenceReport& r) {
  return {{"max_pointwise_gap_monot1", r.max_pointwise_gap_monot1},
          {"max_pointwise_gap_monot2", r.max_pointwise_gap_monot2},
          {"norm_gaps",
           {{"hardy", r.norm_gap_hardy},
            {"dual", r.norm_gap_dual},
            {"budget_hardy", r.norm_budget_hardy},
            {"budget_dual", r.norm_budget_dual}}},
          {"verdict", std::string(to_string(r.verdict))},
          {"mollified", r.mollified}};
}

nlohmann::json to_json(const SweepRecord& r) {
  nlohmann::json j = {{"eps", r.eps}, {"converged", r.converged}};
  if (!r.converged) {
    j["error"] = r.error;
    return j;
  }
  j["norm_H"] = r.norm_H.value;
  j["norm_H_err"] = r.norm_H.err;
  j["norm_Hstar"] = r.norm_Hstar.value;
  j["norm_Hstar_err"] = r.norm_Hstar.err;
  j["ratio"] = r.ratio;
  j["ratio_err"] = r.ratio_err;
  j["sandwich_H_pow"] = sandwich_json(r.bounds.hardy);
  j["sandwich_Hstar_pow"] = sandwich_json(r.bounds.dual);
  j["sandwich_ratio"] = sandwich_json(r.ratio_bounds);
  j["hardy_inside"] = r.hardy_inside;
  j["dual_inside"] = r.dual_inside;
  return j;
}

nlohmann::json to_json(std::span<const SweepRecord> records) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : records) j.push_back(to_json(r));
  return j;
}

nlohmann::json to_json(const FuzzSummary& s) {
  nlohmann::json j = {{"checks", s.checks},
                      {"pass", s.pass},
                      {"fail", s.fail},
                      {"inconclusive", s.inconclusive},
                      {"errors", s.errors}};
  j["first_failing_seed"] = s.first_failing_seed ? nlohmann::json(*s.first_failing_seed)
                                                 : nlohmann::json(nullptr);
  j["first_inconclusive_seed"] = s.first_inconclusive_seed
                                     ? nlohmann::json(*s.first_inconclusive_seed)
                                     : nlohmann::json(nullptr);
  return j;
}

}  // namespace hardylab

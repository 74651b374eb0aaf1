// JSON renderings of the probe report and the conformance suite results.
#pragma once

#include "json.hpp"

#include "infnan/conformance.hpp"
#include "infnan/probe.hpp"

namespace infnan {

inline nlohmann::json to_json(const ProbeReport& r) {
    return nlohmann::json{
        {"complex_abs_safe", r.complex_abs_safe},
        {"complex_div_safe", r.complex_div_safe},
        {"complex_mul_semantics", to_string(r.complex_mul_semantics)},
        {"minmax_propagates_nan", r.minmax_propagates_nan},
        {"subnormals_supported", r.subnormals_supported},
        {"notes", r.notes},
    };
}

inline nlohmann::json to_json(const SuiteResult& res) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : res.records)
        records.push_back({{"id", r.id},
                           {"status", r.status},
                           {"expected", r.expected},
                           {"got", r.got}});
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : res.failures)
        failures.push_back(
            {{"id", f.id}, {"expected", f.expected}, {"got", f.got}});
    return nlohmann::json{{"total", res.total},
                          {"passed", res.passed},
                          {"failed", res.failed},
                          {"skipped", res.skipped},
                          {"failures", failures},
                          {"records", records}};
}

} // namespace infnan

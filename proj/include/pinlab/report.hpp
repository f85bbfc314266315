#pragma once

// JSON reports (schema "report_v1"). Keys keep insertion order and doubles
// are written as the shortest string that reads back to the same value, so a
// report is a pure function of its inputs.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pinlab/corpus.hpp"
#include "pinlab/eval.hpp"

namespace pinlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "report_v1";

Json to_json(const ScenarioResult& result);

/// {"count": N, "fnv1a64": "<16 hex digits>"}
Json corpus_fingerprint_json(const Corpus& corpus);

Json sensitivity_entry_json(std::uint64_t tau, const ScenarioResult& result);

/// Two-space indented dump with a trailing newline.
std::string dump_report(const Json& report);

}  // namespace pinlab

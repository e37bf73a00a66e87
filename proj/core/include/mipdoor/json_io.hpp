#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "mipdoor/bnb.hpp"
#include "mipdoor/metrics.hpp"
#include "mipdoor/oracle.hpp"
#include "mipdoor/priority_solve.hpp"
#include "mipdoor/search.hpp"

namespace mipdoor {

// Infinite values are written as null and read back as infinity.

void to_json(nlohmann::json& j, const Backdoor& b);
void from_json(const nlohmann::json& j, Backdoor& b);
void to_json(nlohmann::json& j, const PseudocostObservation& obs);
void to_json(nlohmann::json& j, const EvalResult& r);
void to_json(nlohmann::json& j, const SolveReport& r);
void from_json(const nlohmann::json& j, SolveReport& r);
void to_json(nlohmann::json& j, const OracleReport& r);
void to_json(nlohmann::json& j, const MetricsRow& r);
void from_json(const nlohmann::json& j, MetricsRow& r);
void to_json(nlohmann::json& j, const Comparison& c);

/// One trace record; wall-clock time is left out so that traces of
/// deterministic runs are byte-identical (see timing_json).
nlohmann::json record_json(const TraceRecord& r, const std::string& method);
/// One JSON object per line, one line per improving candidate.
std::string trace_jsonl(const SearchTrace& trace);
/// Run summary without wall-clock fields.
nlohmann::json summary_json(const SearchTrace& trace);
/// Wall-clock fields: total time and per-record t_s.
nlohmann::json timing_json(const SearchTrace& trace);

/// Priority file: a JSON array of variable indices in rank order.
Backdoor read_priority_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace mipdoor

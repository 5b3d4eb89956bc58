#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "convsim/population.hpp"
#include "convsim/sweep.hpp"

#include <json.hpp>

namespace convsim {

// Doubles are serialized with the shortest representation that parses back to
// the identical value, so every emitted number is diff-stable and exact.
std::string format_double(double v);

std::string hex_u64(std::uint64_t v);

nlohmann::json snapshot_to_json(const Snapshot& snap);
Snapshot snapshot_from_json(const nlohmann::json& j);

nlohmann::json run_record_to_json(const RunRecord& rec);
RunRecord run_record_from_json(const nlohmann::json& j);

// snapshots.jsonl / records.jsonl hold one JSON object per line.
void append_jsonl(std::ostream& out, const nlohmann::json& j);

// table.tsv: one row per grid point, fixed column set.
void write_sweep_table(std::ostream& out, const SweepTable& table);

// edges.tsv: final-state directed ties (from, to, weight, probability); the
// probability column is the epsilon-inclusive visit probability.
void write_edge_list(std::ostream& out, const Snapshot& snap);

const char* to_string(UpdateMode mode);
const char* to_string(StrategyInit init);
UpdateMode update_mode_from_string(const std::string& s);
StrategyInit strategy_init_from_string(const std::string& s);

}  // namespace convsim

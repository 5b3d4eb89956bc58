#pragma once

#include <optional>
#include <string>

#include "convsim/analysis.hpp"
#include "convsim/config.hpp"
#include "convsim/sweep.hpp"

#include <json.hpp>

namespace convsim {

inline constexpr const char* kToolName = "convsim";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunSetup {
  SimConfig config;
  ClassifierThresholds thresholds;
};

// Exactly one of `run` / `sweep` is set.
struct LoadedSetup {
  std::optional<RunSetup> run;
  std::optional<SweepSpec> sweep;
};

// Strict parsers: every key must be known, every field must satisfy its type
// invariant, and error messages name the offending key or rule.
RunSetup run_setup_from_json(const nlohmann::json& j);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

nlohmann::json run_setup_to_json(const RunSetup& setup);
nlohmann::json sweep_spec_to_json(const SweepSpec& spec);

// Loads a config file; also accepts a previously written manifest (the
// embedded resolved config is used), so a run can be reproduced from its
// output directory alone.
LoadedSetup load_config_file(const std::string& path);
LoadedSetup setup_from_json(const nlohmann::json& j);

// Manifest: resolved config, tool version, config digest, and timestamp.
nlohmann::json make_manifest(const std::string& kind, const nlohmann::json& config_json);

std::uint64_t config_digest(const nlohmann::json& config_json);

}  // namespace convsim

#pragma once
#include <optional>
#include <string>

#include "json.hpp"

#include "core/channel.hpp"
#include "core/model.hpp"

namespace fhaci {

// Strict parsers: every field must be known and well-typed; unknown fields
// are config errors naming the offending JSON path.  Semantic validation
// (ranges, cross-field rules) is delegated to the structs' validate().
SystemConfig parse_system_config(const nlohmann::json& j,
                                 const std::string& path = "system");
WaveformParams parse_waveform(const nlohmann::json& j,
                              const std::string& path = "waveform");
EvalOptions parse_eval_options(const nlohmann::json& j,
                               const std::string& path = "evaluation");

struct FileConfig {
  SystemConfig system;
  std::optional<WaveformParams> waveform;
  std::optional<EvalOptions> evaluation;
};

// Loads {"system": {...}, "waveform": {...}?, "evaluation": {...}?}.
FileConfig load_config_file(const std::string& path);
FileConfig parse_config(const nlohmann::json& j);

// Round-trip echoes used by config introspection and run manifests.
nlohmann::json system_to_json(const SystemConfig& cfg);
nlohmann::json waveform_to_json(const WaveformParams& wf);
nlohmann::json eval_options_to_json(const EvalOptions& opt);

}  // namespace fhaci

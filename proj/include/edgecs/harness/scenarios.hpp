#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "edgecs/harness/config.hpp"
#include "edgecs/harness/metrics.hpp"

namespace edgecs::harness {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitAssertion = 2 };

struct ScenarioResult {
    int exit_code = kExitOk;
    std::vector<MetricsRecord> records;
    nlohmann::json summary;
    std::vector<std::string> failures;
};

// Runs one scenario and writes metrics.csv, manifest.json and any
// scenario-specific exports into cfg.output_dir (when write_outputs).
ScenarioResult run_scenario(const ExperimentConfig& cfg, bool write_outputs = true);

nlohmann::json make_manifest(const ExperimentConfig& cfg, const ScenarioResult& result);

}  // namespace edgecs::harness

// Copyright 2026 The qnnbench Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// Command front end: flat key=value config parsing with fail-closed
/// unknown-key handling, and the four verbs (train, compare, sweep-shots,
/// sweep-dephasing) writing deterministic CSV/JSON outputs.

#pragma once

#include <string>
#include <vector>

#include "qnn/bench.hpp"

namespace qnn {

struct CliCommand {
    std::string verb;           // train | compare | sweep-shots | sweep-dephasing
    std::string config_path;    // empty: defaults plus overrides
    std::string output_dir = "out";
    std::vector<std::string> overrides;   // key=value, applied after the file
    std::vector<double> sweep_values;     // empty: per-verb defaults
};

/// Applies one "key=value" assignment to the config. Unknown keys and
/// malformed values throw std::invalid_argument naming the key.
void apply_config_line(ExperimentConfig& cfg, const std::string& line);

/// Reads a flat key=value file ('#' comments), applies overrides on top,
/// validates, and returns the config.
ExperimentConfig parse_config(const std::string& path, const std::vector<std::string>& overrides);

/// Config from defaults / file / overrides as the command specifies.
ExperimentConfig resolve_config(const CliCommand& cmd);

/// Runs one verb, writing history.csv / sweep.csv, summary.json and
/// meta.json into cmd.output_dir. Returns 0 on success, 2 when a run
/// aborted numerically (partial outputs are marked in summary.json).
int run_command(const CliCommand& cmd);

/// history.csv rows: seed,optimizer,step,loss (17 significant digits).
void write_history_csv(const std::string& path, const std::vector<RunRecord>& records);

/// sweep.csv rows: value,final_loss_mean,final_loss_std.
void write_sweep_csv(const std::string& path, const SweepSummary& summary);

}  // namespace qnn

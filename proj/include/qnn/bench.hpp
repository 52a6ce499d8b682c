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

/// Teacher-student benchmark harness. A deep random teacher generates
/// exact probabilistic targets on uniform inputs; a shallower student is
/// trained against them with GD, Adam, or the algebraic correction, under
/// finite-shot sampling and optional per-layer dephasing. Everything is
/// deterministic in (config, master_seed): substreams are derived with
/// mix_seed so reruns produce bitwise-identical records.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnn/estimator.hpp"
#include "qnn/model.hpp"
#include "qnn/optimizers.hpp"
#include "qnn/sampling.hpp"

namespace qnn {

enum class OptimizerKind { Gd, Adam, Algebraic };

std::string to_label(OptimizerKind kind);
std::string to_label(LossKind kind);
std::string to_label(AlgebraicMode mode);

struct ExperimentConfig {
    int n_qubits = 2;
    int teacher_depth = 6;
    int student_depth = 3;
    int n_points = 16;
    int steps = 50;
    Shots shots = Shots::finite(1000);
    double lambda = 0.2;
    double eta = 0.1;
    LossKind loss_kind = LossKind::Mse;
    double p_deph = 0.0;
    int ensemble_size = 10;
    std::uint64_t master_seed = 1;
    double init_sigma = 1.0;
    OptimizerKind optimizer = OptimizerKind::Algebraic;
    AlgebraicMode algebraic_mode = AlgebraicMode::Probability;
};

/// Throws std::invalid_argument naming the offending field. Warns (stderr)
/// when teacher_depth <= student_depth, which departs from the benchmark
/// protocol but is permitted.
void validate_config(const ExperimentConfig& cfg);

/// Canonical key=value serialization (fixed key order, 17 significant
/// digits); the basis for config echoes and the config hash.
std::string config_to_text(const ExperimentConfig& cfg);

/// FNV-1a hash of config_to_text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

/// One row of a benchmark run. `loss` is finite and >= 0 except for the
/// single diagnostic record a numeric abort leaves behind (NaN).
struct RunRecord {
    std::uint64_t seed = 0;
    std::string optimizer;
    int step = 0;
    double loss = 0.0;
    double wall_time = 0.0;  // seconds since run start; never serialized
    std::string config_hash;
};

struct SweepSummary {
    std::string sweep_variable;  // "shots" | "p_deph"
    std::vector<double> values;
    std::vector<double> final_loss_mean;
    std::vector<double> final_loss_std;
    std::optional<double> loglog_slope;  // shot sweeps only
};

struct Dataset {
    std::vector<InputPoint> xs;
    Eigen::VectorXd targets;
};

/// Draws a teacher with theta ~ N(0, init_sigma^2) and N inputs uniform on
/// [-pi, pi]^n, then evaluates exact noiseless teacher probabilities as
/// targets. Deterministic in (cfg, seed).
Dataset make_teacher_dataset(const ExperimentConfig& cfg, std::uint64_t seed);

/// Trains one student (theta0 ~ N(0, init_sigma^2) from `seed`) on the
/// given dataset. Records the pre-update loss at steps 0..T-1 and the loss
/// at the final parameters as step T, all in the configured sampling mode.
/// A non-finite loss or a numeric failure inside an update aborts the run,
/// leaving a NaN diagnostic record as the last row. `shots_drawn_out`, when
/// non-null, receives the total simulated measurement shots.
std::vector<RunRecord> train(const ExperimentConfig& cfg, std::uint64_t seed, const Dataset& data,
                             std::uint64_t* shots_drawn_out = nullptr);

/// Convenience overload: builds the dataset from cfg.master_seed.
std::vector<RunRecord> train(const ExperimentConfig& cfg, std::uint64_t seed);

/// Trains ensemble members with seeds master_seed + 0 .. + ensemble_size-1
/// on the shared master_seed dataset; returns concatenated records. Member
/// aborts are recorded, not fatal.
std::vector<RunRecord> run_ensemble(const ExperimentConfig& cfg);

/// Final-loss mean/std versus shot count, MSE loss, plus the fitted
/// log-log slope of mean final loss against S.
SweepSummary sweep_shots(const ExperimentConfig& cfg, const std::vector<std::int64_t>& shot_values);

/// Final-loss mean/std versus dephasing rate; shots forced to EXACT.
SweepSummary sweep_dephasing(const ExperimentConfig& cfg, const std::vector<double>& p_values);

/// Ensemble mean of the loss at one step (records from run_ensemble).
double mean_loss_at_step(const std::vector<RunRecord>& records, int step);

/// Per-seed loss at the last recorded step of each member.
std::vector<double> final_losses(const std::vector<RunRecord>& records);

/// Mean and population standard deviation.
std::pair<double, double> mean_std(const std::vector<double>& values);

}  // namespace qnn

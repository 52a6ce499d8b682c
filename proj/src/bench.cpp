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

#include "qnn/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace qnn {

namespace {

// Substream purposes; combined with a seed via mix_seed so dataset
// generation, student init, and shot sampling never share draws.
constexpr std::uint64_t kTagDataset = 0x01;
constexpr std::uint64_t kTagStudentInit = 0x02;
constexpr std::uint64_t kTagSampling = 0x03;

std::string format_g17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

Eigen::VectorXd draw_normal(std::mt19937_64& engine, Eigen::Index n, double sigma) {
    std::normal_distribution<double> normal(0.0, sigma);
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = normal(engine);
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_label(OptimizerKind kind) {
    switch (kind) {
        case OptimizerKind::Gd: return "gd";
        case OptimizerKind::Adam: return "adam";
        case OptimizerKind::Algebraic: return "algebraic";
    }
    throw std::invalid_argument("unknown optimizer kind");
}

std::string to_label(LossKind kind) { return kind == LossKind::Mse ? "mse" : "bce"; }

std::string to_label(AlgebraicMode mode) {
    return mode == AlgebraicMode::Probability ? "probability" : "logit";
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n_qubits < 1 || cfg.n_qubits > 30)
        throw std::invalid_argument("n_qubits must be in [1, 30]");
    if (cfg.teacher_depth < 0) throw std::invalid_argument("teacher_depth must be >= 0");
    if (cfg.student_depth < 1) throw std::invalid_argument("student_depth must be >= 1");
    if (cfg.n_points < 1) throw std::invalid_argument("n_points must be >= 1");
    if (cfg.steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (!(cfg.lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    if (!(cfg.p_deph >= 0.0 && cfg.p_deph <= 1.0))
        throw std::invalid_argument("p_deph must lie in [0, 1]");
    if (cfg.ensemble_size < 1) throw std::invalid_argument("ensemble_size must be >= 1");
    if (!(cfg.init_sigma >= 0.0)) throw std::invalid_argument("init_sigma must be >= 0");
    if (cfg.teacher_depth <= cfg.student_depth)
        std::cerr << "warning: teacher_depth <= student_depth departs from the "
                     "teacher-student protocol\n";
}

std::string config_to_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "n_qubits=" << cfg.n_qubits << '\n'
        << "teacher_depth=" << cfg.teacher_depth << '\n'
        << "student_depth=" << cfg.student_depth << '\n'
        << "n_points=" << cfg.n_points << '\n'
        << "steps=" << cfg.steps << '\n'
        << "shots=" << (cfg.shots.is_exact() ? std::string("exact") : std::to_string(cfg.shots.count()))
        << '\n'
        << "lambda=" << format_g17(cfg.lambda) << '\n'
        << "eta=" << format_g17(cfg.eta) << '\n'
        << "loss_kind=" << to_label(cfg.loss_kind) << '\n'
        << "p_deph=" << format_g17(cfg.p_deph) << '\n'
        << "ensemble_size=" << cfg.ensemble_size << '\n'
        << "master_seed=" << cfg.master_seed << '\n'
        << "init_sigma=" << format_g17(cfg.init_sigma) << '\n'
        << "optimizer=" << to_label(cfg.optimizer) << '\n'
        << "algebraic_mode=" << to_label(cfg.algebraic_mode) << '\n';
    return out.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
    // FNV-1a, 64 bit
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : config_to_text(cfg)) {
        h ^= c;
        h *= 0x00000100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Dataset make_teacher_dataset(const ExperimentConfig& cfg, std::uint64_t seed) {
    validate_config(cfg);
    std::mt19937_64 engine(mix_seed(seed, kTagDataset));

    CircuitModel teacher;
    teacher.n_qubits = cfg.n_qubits;
    teacher.depth = cfg.teacher_depth;
    teacher.p_deph = 0.0;
    teacher.theta = draw_normal(engine, param_count(teacher), cfg.init_sigma);

    std::uniform_real_distribution<double> uniform(-std::numbers::pi, std::numbers::pi);
    Dataset data;
    data.xs.reserve(static_cast<std::size_t>(cfg.n_points));
    data.targets.resize(cfg.n_points);
    for (int i = 0; i < cfg.n_points; ++i) {
        InputPoint x;
        x.features.resize(cfg.n_qubits);
        for (int q = 0; q < cfg.n_qubits; ++q) x.features[q] = uniform(engine);
        data.targets[i] = forward_exact(teacher, x);
        data.xs.push_back(std::move(x));
    }
    return data;
}

std::vector<RunRecord> train(const ExperimentConfig& cfg, std::uint64_t seed, const Dataset& data,
                             std::uint64_t* shots_drawn_out) {
    if (static_cast<int>(data.xs.size()) != cfg.n_points ||
        data.targets.size() != cfg.n_points)
        throw std::invalid_argument("dataset size does not match n_points");

    CircuitModel student;
    student.n_qubits = cfg.n_qubits;
    student.depth = cfg.student_depth;
    student.p_deph = cfg.p_deph;
    {
        std::mt19937_64 engine(mix_seed(seed, kTagStudentInit));
        student.theta = draw_normal(engine, param_count(student), cfg.init_sigma);
    }
    SampleStream stream(mix_seed(seed, kTagSampling));

    const std::string label = to_label(cfg.optimizer);
    const std::string hash = config_hash(cfg);
    const auto start = std::chrono::steady_clock::now();
    const Eigen::VectorXd& y = data.targets;

    auto predictions = [&]() {
        Eigen::VectorXd out(cfg.n_points);
        for (int i = 0; i < cfg.n_points; ++i)
            out[i] = cfg.shots.is_exact()
                         ? forward_exact(student, data.xs[i])
                         : forward_sampled(student, data.xs[i], cfg.shots.count(), stream);
        return out;
    };

    AdamState adam = AdamState::init(param_count(student), cfg.eta);
    std::vector<RunRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.steps) + 1);

    for (int step = 0; step <= cfg.steps; ++step) {
        double loss_value;
        try {
            const Eigen::VectorXd y_hat = predictions();
            loss_value = loss(cfg.loss_kind, y, y_hat);
            records.push_back({seed, label, step, loss_value, seconds_since(start), hash});
            if (!std::isfinite(loss_value) || step == cfg.steps) break;

            const JacobianMatrix jac = jacobian(student, data.xs, cfg.shots, stream);
            switch (cfg.optimizer) {
                case OptimizerKind::Gd:
                    student.theta = gd_step(
                        student.theta,
                        (jac.transpose() * loss_gradient_wrt_p(cfg.loss_kind, y, y_hat)).eval(),
                        GdConfig{cfg.eta});
                    break;
                case OptimizerKind::Adam:
                    student.theta = adam_step(
                        adam, student.theta,
                        jac.transpose() * loss_gradient_wrt_p(cfg.loss_kind, y, y_hat));
                    break;
                case OptimizerKind::Algebraic:
                    student.theta =
                        algebraic_step(student.theta, jac, residual(y, y_hat),
                                       AlgebraicConfig{cfg.lambda, cfg.algebraic_mode}, &y_hat);
                    break;
            }
        } catch (const std::domain_error&) {
            // Numeric failure inside a step: leave a diagnostic row behind.
            records.push_back({seed, label, step, std::numeric_limits<double>::quiet_NaN(),
                               seconds_since(start), hash});
            break;
        }
    }
    if (shots_drawn_out != nullptr) *shots_drawn_out = stream.shots_drawn;
    return records;
}

std::vector<RunRecord> train(const ExperimentConfig& cfg, std::uint64_t seed) {
    return train(cfg, seed, make_teacher_dataset(cfg, cfg.master_seed));
}

std::vector<RunRecord> run_ensemble(const ExperimentConfig& cfg) {
    const Dataset data = make_teacher_dataset(cfg, cfg.master_seed);
    std::vector<RunRecord> all;
    all.reserve(static_cast<std::size_t>(cfg.ensemble_size) * (cfg.steps + 1));
    for (int member = 0; member < cfg.ensemble_size; ++member) {
        auto records = train(cfg, cfg.master_seed + static_cast<std::uint64_t>(member), data);
        all.insert(all.end(), std::make_move_iterator(records.begin()),
                   std::make_move_iterator(records.end()));
    }
    return all;
}

std::vector<double> final_losses(const std::vector<RunRecord>& records) {
    // Records are concatenated per member; the last row of each seed's block
    // is its final (or diagnostic) loss.
    std::vector<double> finals;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const bool last_of_member =
            i + 1 == records.size() || records[i + 1].step <= records[i].step;
        if (last_of_member) finals.push_back(records[i].loss);
    }
    return finals;
}

double mean_loss_at_step(const std::vector<RunRecord>& records, int step) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : records)
        if (r.step == step) {
            sum += r.loss;
            ++count;
        }
    if (count == 0) throw std::invalid_argument("no records at requested step");
    return sum / static_cast<double>(count);
}

std::pair<double, double> mean_std(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("mean_std of empty vector");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    return {mean, std::sqrt(var)};
}

SweepSummary sweep_shots(const ExperimentConfig& cfg,
                         const std::vector<std::int64_t>& shot_values) {
    if (shot_values.empty()) throw std::invalid_argument("shot_values must be non-empty");
    SweepSummary summary;
    summary.sweep_variable = "shots";
    for (std::int64_t s : shot_values) {
        ExperimentConfig point = cfg;
        point.shots = Shots::finite(s);
        point.loss_kind = LossKind::Mse;
        const auto [mean, sd] = mean_std(final_losses(run_ensemble(point)));
        summary.values.push_back(static_cast<double>(s));
        summary.final_loss_mean.push_back(mean);
        summary.final_loss_std.push_back(sd);
    }
    // Least-squares slope of log(mean final loss) against log(S).
    const auto n = static_cast<double>(summary.values.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < summary.values.size(); ++i) {
        const double x = std::log(summary.values[i]);
        const double y = std::log(summary.final_loss_mean[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    summary.loglog_slope = denom == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                        : (n * sxy - sx * sy) / denom;
    return summary;
}

SweepSummary sweep_dephasing(const ExperimentConfig& cfg, const std::vector<double>& p_values) {
    if (p_values.empty()) throw std::invalid_argument("p_values must be non-empty");
    SweepSummary summary;
    summary.sweep_variable = "p_deph";
    for (double p : p_values) {
        ExperimentConfig point = cfg;
        point.shots = Shots::exact();
        point.p_deph = p;
        const auto [mean, sd] = mean_std(final_losses(run_ensemble(point)));
        summary.values.push_back(p);
        summary.final_loss_mean.push_back(mean);
        summary.final_loss_std.push_back(sd);
    }
    return summary;
}

}  // namespace qnn

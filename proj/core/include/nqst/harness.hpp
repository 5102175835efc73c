// Copyright 2026 The nqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NQST_HARNESS_HPP
#define NQST_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nqst/analysis.hpp"
#include "nqst/mle.hpp"
#include "nqst/train.hpp"

namespace nqst {

inline constexpr const char *kVersion = "0.1.0";
inline constexpr const char *kRngScheme = "xoshiro256**/splitmix64 v1";

struct ModelSweepOptions {
    int n_hidden = 4;
    double learning_rate = 1e-3;
    int epochs = 10000;
};

/// Sweep over (method, shot budget, repetition). Each run derives its own
/// seed from (base_seed, method, S, rep), so results are independent of
/// dispatch order and worker count.
struct SweepPlan {
    std::string hamiltonian_path;
    std::vector<Method> methods;
    std::vector<uint64_t> shot_grid;  // strictly increasing, positive
    int repetitions = 20;
    uint64_t base_seed = 1;
    int workers = 1;
    ModelSweepOptions rbm;
    ModelSweepOptions rnn;
    FixedPointConfig mle;

    void validate() const;  // throws std::invalid_argument
};

SweepPlan parse_plan(const std::string &json_text);
SweepPlan load_plan(const std::string &path);

struct MethodFit {
    Method method = Method::shadows;
    PowerLawFit epsilon_fit;
    std::optional<PowerLawFit> delta_fit;
    std::vector<ScalingPoint> epsilon_points;
    std::vector<ScalingPoint> delta_points;
};

struct RunManifest {
    SweepPlan plan;
    std::vector<ScalingRecord> records;
    std::vector<std::string> errors;  // per-run failure messages, runs skipped
    std::vector<MethodFit> fits;
    double wall_time_seconds = 0.0;
    std::string version = kVersion;
    std::string rng_scheme = kRngScheme;
};

RunManifest run_sweep(const SweepPlan &plan);

void save_manifest(const RunManifest &manifest, const std::string &path);

/// 2D (S, quality) histogram counts in CSV:
/// method,quality,shots,bin_low,bin_high,count. Bins are log-spaced over the
/// observed range of each (method, quality) group.
void emit_histograms(const RunManifest &manifest, int bins, const std::string &path);

/// Runs the fixed-point iteration starting from a model checkpoint on its
/// training dataset; CSV columns iter,loss,epsilon,delta,step_norm plus a
/// loss-floor reference column (converged loss from the exact-target start).
void emit_trajectory_comparison(const std::string &hamiltonian_path,
                                const std::string &model_path, const std::string &data_path,
                                const std::string &out_path);

}  // namespace nqst

#endif

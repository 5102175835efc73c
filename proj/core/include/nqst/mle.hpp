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

#ifndef NQST_MLE_HPP
#define NQST_MLE_HPP

#include <vector>

#include "nqst/sampler.hpp"
#include "nqst/train.hpp"

namespace nqst {

struct FixedPointConfig {
    int max_iterations = 10000;
    double convergence_tol = 1e-10;  // on the phase-aligned state change
};

struct TrajectoryPoint {
    int iteration = 0;
    double loss = 0.0;
    double epsilon = 0.0;    // NaN when no Hamiltonian context given
    double delta = 0.0;      // NaN when no exact state given
    double step_norm = 0.0;  // 0 for the initial record
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
};

/// Optional context for per-iteration energy-error / infidelity logging.
struct MleContext {
    const PauliHamiltonian *hamiltonian = nullptr;
    const GroundstateResult *exact = nullptr;
};

struct IterateResult {
    StateVector state;
    Trajectory trajectory;
    bool converged = false;
    double final_loss = 0.0;
};

/// One application of the data-imposition map:
///   T(|phi>) = (1/|D|) sum_k sum_sigma n_{k,sigma} R_k|sigma> / <phi|R_k|sigma>.
/// Returns a raw (unnormalized) vector. Throws when an observed outcome has
/// |<phi|R_k|sigma>| below 1e-300, naming the basis and outcome.
StateVector apply_T(const StateVector &state, const Dataset &data);

/// Smoothed fixed-point iteration: phi <- (phi + T(phi)) / |phi + T(phi)|,
/// with global-phase alignment before the convergence test. Non-convergence
/// is reported via the flag, not an exception.
IterateResult iterate(const StateVector &start, const Dataset &data, const FixedPointConfig &cfg,
                      const MleContext &ctx = {});

/// Converged loss when starting from the exact target state; the reference
/// floor for trajectory plots.
double loss_minimum_estimate(const StateVector &exact_target, const Dataset &data,
                             const FixedPointConfig &cfg = {});

}  // namespace nqst

#endif

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

#ifndef NQST_TRAIN_HPP
#define NQST_TRAIN_HPP

#include <functional>
#include <optional>
#include <vector>

#include "nqst/model.hpp"
#include "nqst/sampler.hpp"

namespace nqst {

struct TrainConfig {
    double learning_rate = 1e-3;
    int epochs = 1;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    uint64_t seed = 0;
    int checkpoint_every = 0;  // 0 disables the observer
};

struct LossReport {
    double loss = 0.0;                   // nats, averaged over all outcomes
    std::vector<double> per_basis_loss;  // normalized per basis weight
    int epoch = 0;
    bool diverged = false;  // an observed outcome got amplitude below the floor
    std::size_t diverged_basis = 0;
    uint32_t diverged_outcome = 0;
};

/// Loss plus the backward vector needed by WavefunctionModel::loss_gradient.
struct LossBackward {
    LossReport report;
    Eigen::VectorXcd backward;  // B_tau; see model.hpp
};

/// Multi-basis negative log-likelihood of the dataset under the state:
///   -(1/|D|) sum_k sum_sigma n_{k,sigma} log |<sigma|R_k^dagger|phi>|^2.
/// Squared amplitudes are clamped at 1e-300; a clamped observed outcome marks
/// the report as diverged (loss +inf) instead of producing a NaN.
LossReport loss(const StateVector &phi, const Dataset &data);

/// Loss and backward vector in one pass (shares the per-basis rotations).
LossBackward loss_backward(const StateVector &phi, const Dataset &data);

/// Full gradient of the loss with respect to the model's flat real parameters.
/// Throws on an empty dataset.
Eigen::VectorXd gradient(const WavefunctionModel &model, const Dataset &data);

struct FitResult {
    std::vector<double> loss_history;  // one entry per epoch
    bool aborted = false;              // non-finite loss; model holds the last good step
    int completed_epochs = 0;
};

/// Per-checkpoint observer: (epoch, loss, model after the step).
using FitObserver = std::function<void(int, double, const WavefunctionModel &)>;

/// Full-batch Adam over the histogram sufficient statistics, one step per
/// epoch. Deterministic given the initial model and config.
FitResult fit(WavefunctionModel &model, const Dataset &data, const TrainConfig &cfg,
              const FitObserver &observer = nullptr);

}  // namespace nqst

#endif

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

#include "nqst/train.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nqst {

namespace {

constexpr double kAmplitudeFloor = 1e-300;

void check_nonempty(const Dataset &data) {
    if (data.bases.empty() || data.total_weight <= 0.0) {
        throw std::invalid_argument("dataset is empty");
    }
}

}  // namespace

LossReport loss(const StateVector &phi, const Dataset &data) {
    return loss_backward(phi, data).report;
}

LossBackward loss_backward(const StateVector &phi, const Dataset &data) {
    check_nonempty(data);
    if (phi.n_qubits != data.n_qubits) {
        throw std::invalid_argument("state and dataset qubit counts differ");
    }
    const int64_t dim = phi.amps.size();
    const double inv_total = 1.0 / data.total_weight;

    LossBackward result;
    result.backward = Eigen::VectorXcd::Zero(dim);
    double total_loss = 0.0;

    for (std::size_t k = 0; k < data.bases.size(); ++k) {
        const auto &hist = data.histograms[k];
        if (hist.empty()) {
            result.report.per_basis_loss.push_back(0.0);
            continue;
        }
        const StateVector rotated = rotate_to_basis(data.bases[k], phi);

        double basis_loss = 0.0;
        double basis_weight = 0.0;
        Eigen::VectorXcd weight_vec = Eigen::VectorXcd::Zero(dim);
        for (const auto &[outcome, count] : hist) {
            const cplx amp = rotated.amps[outcome];
            double prob = std::norm(amp);
            if (prob < kAmplitudeFloor) {
                prob = kAmplitudeFloor;
                if (!result.report.diverged) {
                    result.report.diverged = true;
                    result.report.diverged_basis = k;
                    result.report.diverged_outcome = outcome;
                }
                weight_vec[outcome] = 0.0;  // gradient is meaningless past the floor
            } else {
                weight_vec[outcome] = count * inv_total / amp;
            }
            basis_loss -= count * std::log(prob);
            basis_weight += count;
        }
        total_loss += basis_loss;
        result.report.per_basis_loss.push_back(basis_loss / basis_weight);

        // B += conj(R_k) w, via conj(R_k w*) using the forward rotation.
        StateVector w = StateVector::from_amplitudes(phi.n_qubits, weight_vec.conjugate());
        result.backward += rotate_from_basis(data.bases[k], w).amps.conjugate();
    }

    result.report.loss = result.report.diverged ? std::numeric_limits<double>::infinity()
                                                : total_loss * inv_total;
    return result;
}

Eigen::VectorXd gradient(const WavefunctionModel &model, const Dataset &data) {
    check_nonempty(data);
    const StateVector phi = model.to_statevector();
    LossBackward lb = loss_backward(phi, data);
    if (lb.report.diverged) {
        throw std::runtime_error(
            "model assigns vanishing probability to observed outcome " +
            outcome_string(lb.report.diverged_outcome, data.n_qubits) + " in basis " +
            std::to_string(lb.report.diverged_basis));
    }
    return model.loss_gradient(phi, lb.backward);
}

FitResult fit(WavefunctionModel &model, const Dataset &data, const TrainConfig &cfg,
              const FitObserver &observer) {
    if (cfg.learning_rate <= 0.0 || cfg.epochs < 1) {
        throw std::invalid_argument("invalid training config");
    }
    check_nonempty(data);

    const int np = model.parameter_count();
    Eigen::VectorXd params = model.parameters();
    Eigen::VectorXd m1 = Eigen::VectorXd::Zero(np);
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(np);

    FitResult result;
    result.loss_history.reserve(static_cast<std::size_t>(cfg.epochs));

    Eigen::VectorXd last_good = params;
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const StateVector phi = model.to_statevector();
        LossBackward lb = loss_backward(phi, data);
        if (lb.report.diverged || !std::isfinite(lb.report.loss)) {
            model.set_parameters(last_good);
            result.aborted = true;
            break;
        }
        result.loss_history.push_back(lb.report.loss);
        last_good = params;

        const Eigen::VectorXd grad = model.loss_gradient(phi, lb.backward);
        m1 = cfg.adam_beta1 * m1 + (1.0 - cfg.adam_beta1) * grad;
        m2 = cfg.adam_beta2 * m2 + (1.0 - cfg.adam_beta2) * grad.cwiseProduct(grad);
        const double bias1 = 1.0 - std::pow(cfg.adam_beta1, epoch);
        const double bias2 = 1.0 - std::pow(cfg.adam_beta2, epoch);
        for (int i = 0; i < np; ++i) {
            const double mhat = m1[i] / bias1;
            const double vhat = m2[i] / bias2;
            params[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam_epsilon);
        }
        model.set_parameters(params);
        result.completed_epochs = epoch;

        if (observer && cfg.checkpoint_every > 0 &&
            (epoch % cfg.checkpoint_every == 0 || epoch == cfg.epochs)) {
            observer(epoch, lb.report.loss, model);
        }
    }
    return result;
}

}  // namespace nqst

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

#include "nqst/mle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nqst {

namespace {

constexpr double kOverlapFloor = 1e-300;

TrajectoryPoint make_point(int iteration, double loss_value, double step_norm,
                           const StateVector &state, const MleContext &ctx) {
    TrajectoryPoint pt;
    pt.iteration = iteration;
    pt.loss = loss_value;
    pt.step_norm = step_norm;
    pt.epsilon = std::numeric_limits<double>::quiet_NaN();
    pt.delta = std::numeric_limits<double>::quiet_NaN();
    if (ctx.hamiltonian != nullptr && ctx.exact != nullptr) {
        pt.epsilon = expectation(*ctx.hamiltonian, state) - ctx.exact->energy;
        pt.delta = 1.0 - fidelity(state, ctx.exact->state);
    }
    return pt;
}

}  // namespace

StateVector apply_T(const StateVector &state, const Dataset &data) {
    if (state.n_qubits != data.n_qubits) {
        throw std::invalid_argument("state and dataset qubit counts differ");
    }
    if (data.bases.empty() || data.total_weight <= 0.0) {
        throw std::invalid_argument("dataset is empty");
    }
    const int64_t dim = state.amps.size();
    const double inv_total = 1.0 / data.total_weight;

    Eigen::VectorXcd accum = Eigen::VectorXcd::Zero(dim);
    for (std::size_t k = 0; k < data.bases.size(); ++k) {
        const auto &hist = data.histograms[k];
        if (hist.empty()) {
            continue;
        }
        // <phi|R_k|sigma> = conj(<sigma|R_k^dagger|phi>).
        const StateVector rotated = rotate_to_basis(data.bases[k], state);
        Eigen::VectorXcd weighted = Eigen::VectorXcd::Zero(dim);
        for (const auto &[outcome, count] : hist) {
            const cplx amp = rotated.amps[outcome];
            if (std::abs(amp) < kOverlapFloor) {
                throw std::runtime_error("vanishing overlap with observed outcome " +
                                         outcome_string(outcome, data.n_qubits) + " in basis " +
                                         std::to_string(k));
            }
            weighted[outcome] = count * inv_total / std::conj(amp);
        }
        StateVector w = StateVector::from_amplitudes(state.n_qubits, std::move(weighted));
        accum += rotate_from_basis(data.bases[k], w).amps;
    }
    return StateVector::from_amplitudes(state.n_qubits, std::move(accum));
}

IterateResult iterate(const StateVector &start, const Dataset &data, const FixedPointConfig &cfg,
                      const MleContext &ctx) {
    if (cfg.convergence_tol <= 0.0) {
        throw std::invalid_argument("convergence tolerance must be positive");
    }
    StateVector phi = start;
    phi.amps /= phi.amps.norm();

    IterateResult result;
    result.trajectory.points.push_back(make_point(0, loss(phi, data).loss, 0.0, phi, ctx));

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        const StateVector mapped = apply_T(phi, data);
        Eigen::VectorXcd next = phi.amps + mapped.amps;
        next /= next.norm();

        // Align the global phase to the previous iterate before differencing.
        const cplx overlap = next.dot(phi.amps);
        if (std::abs(overlap) > 0.0) {
            next *= overlap / std::abs(overlap);
        }
        const double step_norm = (next - phi.amps).norm();
        phi.amps = std::move(next);

        const double loss_value = loss(phi, data).loss;
        result.trajectory.points.push_back(make_point(it, loss_value, step_norm, phi, ctx));
        if (step_norm < cfg.convergence_tol) {
            result.converged = true;
            break;
        }
    }

    result.final_loss = result.trajectory.points.back().loss;
    result.state = std::move(phi);
    return result;
}

double loss_minimum_estimate(const StateVector &exact_target, const Dataset &data,
                             const FixedPointConfig &cfg) {
    return iterate(exact_target, data, cfg).final_loss;
}

}  // namespace nqst

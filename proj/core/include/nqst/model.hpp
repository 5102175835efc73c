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

#ifndef NQST_MODEL_HPP
#define NQST_MODEL_HPP

#include <memory>
#include <string>

#include <Eigen/Dense>

#include "nqst/statevec.hpp"

namespace nqst {

/// Uniform contract for an evaluable wavefunction with trainable real
/// parameters. The training loop only needs the enumerated statevector and a
/// chain-rule hook: given the normalized amplitudes phi and the backward
/// vector B with dL/dlambda_i = -2 Re sum_tau B_tau dphi_tau/dlambda_i,
/// loss_gradient returns the flat real gradient.
class WavefunctionModel {
  public:
    virtual ~WavefunctionModel() = default;

    virtual int n_qubits() const = 0;
    virtual int parameter_count() const = 0;
    virtual Eigen::VectorXd parameters() const = 0;
    virtual void set_parameters(const Eigen::VectorXd &flat) = 0;

    virtual StateVector to_statevector() const = 0;
    virtual Eigen::VectorXd loss_gradient(const StateVector &phi,
                                          const Eigen::VectorXcd &backward) const = 0;

    virtual std::string type_name() const = 0;
    virtual std::unique_ptr<WavefunctionModel> clone() const = 0;
};

/// Checkpoint JSON round-trip; dispatches on the "type" field (rbm | rnn).
void save_model(const WavefunctionModel &model, const std::string &path);
std::unique_ptr<WavefunctionModel> load_model(const std::string &path);

}  // namespace nqst

#endif

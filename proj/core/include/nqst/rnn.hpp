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

#ifndef NQST_RNN_HPP
#define NQST_RNN_HPP

#include <cstdint>
#include <vector>

#include "nqst/model.hpp"

namespace nqst {

/// Autoregressive recurrent wavefunction, normalized by construction. Bits
/// enter the tanh recurrence as scalars (no one-hot encoding); the recurrence
/// starts from a zero hidden state and a zero previous bit. Each site emits a
/// Bernoulli conditional through a logistic output and an unbounded affine
/// phase (no squashing on the phase head).
class RnnModel final : public WavefunctionModel {
  public:
    RnnModel(int n_sites, int n_hidden);

    /// Uniform [-1/sqrt(Nh), 1/sqrt(Nh)] weights, zero offsets.
    static RnnModel random_init(int n_sites, int n_hidden, uint64_t seed);

    /// Real parameter count Nh^2 + 5 Nh + 3.
    static int param_count(int n_hidden);

    int n_hidden() const {
        return static_cast<int>(input_weight.size());
    }

    /// Hidden states h_1..h_N for one basis state.
    std::vector<Eigen::VectorXd> hidden_states(uint32_t sigma) const;

    /// log of the (already normalized) amplitude:
    /// sum_j [ 2 pi i theta_j + (1/2) log p_j ].
    cplx log_amplitude(uint32_t sigma) const;

    /// Exact sequential sampling from |amplitude|^2.
    std::vector<uint32_t> autoregressive_sample(uint64_t count, uint64_t seed) const;

    // WavefunctionModel interface.
    int n_qubits() const override {
        return n_sites_;
    }
    int parameter_count() const override;
    Eigen::VectorXd parameters() const override;
    void set_parameters(const Eigen::VectorXd &flat) override;
    StateVector to_statevector() const override;
    Eigen::VectorXd loss_gradient(const StateVector &phi,
                                  const Eigen::VectorXcd &backward) const override;
    std::string type_name() const override {
        return "rnn";
    }
    std::unique_ptr<WavefunctionModel> clone() const override;

    Eigen::MatrixXd recurrence;      // M, Nh x Nh
    Eigen::VectorXd input_weight;    // p
    Eigen::VectorXd recurrence_bias; // q
    Eigen::VectorXd phase_gate;      // u (multiplies the observed bit)
    Eigen::VectorXd phase_weight;    // v
    Eigen::VectorXd output_weight;   // w
    double phase_gate_offset = 0.0;  // a
    double phase_offset = 0.0;       // b
    double output_offset = 0.0;      // c

  private:
    int n_sites_;
};

}  // namespace nqst

#endif

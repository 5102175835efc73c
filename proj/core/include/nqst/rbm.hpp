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

#ifndef NQST_RBM_HPP
#define NQST_RBM_HPP

#include <cstdint>

#include "nqst/model.hpp"

namespace nqst {

/// Restricted Boltzmann machine wavefunction with complex parameters and
/// {0,1} visible units. Amplitudes use the marginalized product form
///   exp(b.sigma) * prod_j (1 + exp((W sigma + c)_j)),
/// normalized by exact enumeration of the squared norm.
class RbmModel final : public WavefunctionModel {
  public:
    RbmModel(int n_visible, int n_hidden);

    /// Independent complex Gaussian entries, stddev 0.01 per real component.
    static RbmModel random_init(int n_visible, int n_hidden, uint64_t seed);

    /// Real parameter count 2(N*Nh + N + Nh).
    static int param_count(int n_visible, int n_hidden);

    int n_hidden() const {
        return static_cast<int>(hidden_bias.size());
    }

    /// log of the unnormalized amplitude for one basis state.
    cplx unnormalized_log_amplitude(uint32_t sigma) const;

    /// log of the squared normalization, by exhaustive enumeration with
    /// log-sum-exp stabilization.
    double log_partition() const;

    // WavefunctionModel interface.
    int n_qubits() const override {
        return n_visible_;
    }
    int parameter_count() const override;
    Eigen::VectorXd parameters() const override;
    void set_parameters(const Eigen::VectorXd &flat) override;
    StateVector to_statevector() const override;
    Eigen::VectorXd loss_gradient(const StateVector &phi,
                                  const Eigen::VectorXcd &backward) const override;
    std::string type_name() const override {
        return "rbm";
    }
    std::unique_ptr<WavefunctionModel> clone() const override;

    Eigen::MatrixXcd weights;       // N_h x N
    Eigen::VectorXcd visible_bias;  // length N
    Eigen::VectorXcd hidden_bias;   // length N_h

  private:
    int n_visible_;
};

}  // namespace nqst

#endif

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

#include "nqst/rnn.hpp"

#include <cmath>
#include <stdexcept>

#include "nqst/rng.hpp"

namespace nqst {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// log(1 + e^x), overflow-safe.
double log1pexp(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x > 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace

RnnModel::RnnModel(int n_sites, int n_hidden) : n_sites_(n_sites) {
    if (n_sites < 1 || n_hidden < 1) {
        throw std::invalid_argument("layer sizes must be positive");
    }
    recurrence = Eigen::MatrixXd::Zero(n_hidden, n_hidden);
    input_weight = Eigen::VectorXd::Zero(n_hidden);
    recurrence_bias = Eigen::VectorXd::Zero(n_hidden);
    phase_gate = Eigen::VectorXd::Zero(n_hidden);
    phase_weight = Eigen::VectorXd::Zero(n_hidden);
    output_weight = Eigen::VectorXd::Zero(n_hidden);
}

RnnModel RnnModel::random_init(int n_sites, int n_hidden, uint64_t seed) {
    RnnModel m(n_sites, n_hidden);
    Rng rng(derive_seed(seed, {0x726e6eULL}));
    const double bound = 1.0 / std::sqrt(static_cast<double>(n_hidden));
    auto draw = [&] { return bound * (2.0 * rng.next_double() - 1.0); };
    for (int r = 0; r < n_hidden; ++r) {
        for (int col = 0; col < n_hidden; ++col) {
            m.recurrence(r, col) = draw();
        }
    }
    for (int r = 0; r < n_hidden; ++r) {
        m.input_weight[r] = draw();
        m.phase_gate[r] = draw();
        m.phase_weight[r] = draw();
        m.output_weight[r] = draw();
    }
    return m;
}

int RnnModel::param_count(int n_hidden) {
    return n_hidden * n_hidden + 5 * n_hidden + 3;
}

int RnnModel::parameter_count() const {
    return param_count(n_hidden());
}

std::vector<Eigen::VectorXd> RnnModel::hidden_states(uint32_t sigma) const {
    if (sigma >> n_sites_) {
        throw std::invalid_argument("basis state index out of range");
    }
    std::vector<Eigen::VectorXd> states;
    states.reserve(static_cast<std::size_t>(n_sites_));
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n_hidden());
    int prev_bit = 0;
    for (int j = 0; j < n_sites_; ++j) {
        h = (recurrence * h + static_cast<double>(prev_bit) * input_weight + recurrence_bias)
                .array()
                .tanh();
        states.push_back(h);
        prev_bit = qubit_bit(sigma, j, n_sites_);
    }
    return states;
}

cplx RnnModel::log_amplitude(uint32_t sigma) const {
    const auto states = hidden_states(sigma);
    double half_log_prob = 0.0;
    double phase_turns = 0.0;
    for (int j = 0; j < n_sites_; ++j) {
        const Eigen::VectorXd &h = states[static_cast<std::size_t>(j)];
        const int bit = qubit_bit(sigma, j, n_sites_);
        const double x = output_weight.dot(h) + output_offset;
        // log p_j = sigma_j x - log(1 + e^x)
        half_log_prob += 0.5 * (bit * x - log1pexp(x));
        phase_turns += (phase_gate.dot(h) + phase_gate_offset) * bit + phase_weight.dot(h) +
                       phase_offset;
    }
    return cplx(half_log_prob, kTwoPi * phase_turns);
}

std::vector<uint32_t> RnnModel::autoregressive_sample(uint64_t count, uint64_t seed) const {
    if (count == 0) {
        throw std::invalid_argument("sample count must be positive");
    }
    Rng rng(derive_seed(seed, {0x73616d70ULL}));
    std::vector<uint32_t> samples;
    samples.reserve(count);
    for (uint64_t s = 0; s < count; ++s) {
        Eigen::VectorXd h = Eigen::VectorXd::Zero(n_hidden());
        uint32_t sigma = 0;
        int prev_bit = 0;
        for (int j = 0; j < n_sites_; ++j) {
            h = (recurrence * h + static_cast<double>(prev_bit) * input_weight + recurrence_bias)
                    .array()
                    .tanh();
            const double p_one = sigmoid(output_weight.dot(h) + output_offset);
            const int bit = rng.next_double() < p_one ? 1 : 0;
            sigma = (sigma << 1) | static_cast<uint32_t>(bit);
            prev_bit = bit;
        }
        samples.push_back(sigma);
    }
    return samples;
}

StateVector RnnModel::to_statevector() const {
    if (n_sites_ > kMaxExactQubits) {
        throw std::invalid_argument("qubit count exceeds the exact enumeration cap");
    }
    const uint32_t dim = uint32_t{1} << n_sites_;
    Eigen::VectorXcd amps(dim);
    for (uint32_t sigma = 0; sigma < dim; ++sigma) {
        amps[sigma] = std::exp(log_amplitude(sigma));
    }
    return StateVector::from_amplitudes(n_sites_, std::move(amps));
}

Eigen::VectorXd RnnModel::parameters() const {
    const int nh = n_hidden();
    Eigen::VectorXd flat(parameter_count());
    int pos = 0;
    for (int r = 0; r < nh; ++r) {
        for (int c = 0; c < nh; ++c) {
            flat[pos++] = recurrence(r, c);
        }
    }
    flat.segment(pos, nh) = input_weight;
    pos += nh;
    flat.segment(pos, nh) = recurrence_bias;
    pos += nh;
    flat.segment(pos, nh) = phase_gate;
    pos += nh;
    flat.segment(pos, nh) = phase_weight;
    pos += nh;
    flat.segment(pos, nh) = output_weight;
    pos += nh;
    flat[pos++] = phase_gate_offset;
    flat[pos++] = phase_offset;
    flat[pos++] = output_offset;
    return flat;
}

void RnnModel::set_parameters(const Eigen::VectorXd &flat) {
    if (flat.size() != parameter_count()) {
        throw std::invalid_argument("parameter vector has wrong length");
    }
    const int nh = n_hidden();
    int pos = 0;
    for (int r = 0; r < nh; ++r) {
        for (int c = 0; c < nh; ++c) {
            recurrence(r, c) = flat[pos++];
        }
    }
    input_weight = flat.segment(pos, nh);
    pos += nh;
    recurrence_bias = flat.segment(pos, nh);
    pos += nh;
    phase_gate = flat.segment(pos, nh);
    pos += nh;
    phase_weight = flat.segment(pos, nh);
    pos += nh;
    output_weight = flat.segment(pos, nh);
    pos += nh;
    phase_gate_offset = flat[pos++];
    phase_offset = flat[pos++];
    output_offset = flat[pos++];
}

Eigen::VectorXd RnnModel::loss_gradient(const StateVector &phi,
                                        const Eigen::VectorXcd &backward) const {
    const int nh = n_hidden();
    const int n = n_sites_;
    const uint32_t dim = uint32_t{1} << n;
    if (phi.amps.size() != dim || backward.size() != dim) {
        throw std::invalid_argument("gradient input dimension mismatch");
    }

    // Per basis state, backpropagate the scalar
    //   J_tau = (1/2) Re(s_tau) sum_j log p_j - 2 pi Im(s_tau) sum_j theta_j,
    // with s_tau = B_tau phi_tau; the total gradient is -2 sum_tau dJ_tau.
    Eigen::MatrixXd g_m = Eigen::MatrixXd::Zero(nh, nh);
    Eigen::VectorXd g_p = Eigen::VectorXd::Zero(nh);
    Eigen::VectorXd g_q = Eigen::VectorXd::Zero(nh);
    Eigen::VectorXd g_u = Eigen::VectorXd::Zero(nh);
    Eigen::VectorXd g_v = Eigen::VectorXd::Zero(nh);
    Eigen::VectorXd g_w = Eigen::VectorXd::Zero(nh);
    double g_a = 0.0, g_b = 0.0, g_c = 0.0;

    for (uint32_t sigma = 0; sigma < dim; ++sigma) {
        const cplx s_tau = backward[sigma] * phi.amps[sigma];
        const double alpha = s_tau.real();
        const double beta = s_tau.imag();
        if (alpha == 0.0 && beta == 0.0) {
            continue;
        }
        const auto states = hidden_states(sigma);
        const double d_theta = -kTwoPi * beta;  // dJ/dtheta_j, same for all j

        Eigen::VectorXd dh_next = Eigen::VectorXd::Zero(nh);  // dJ/dz_{j+1}
        for (int j = n - 1; j >= 0; --j) {
            const Eigen::VectorXd &h = states[static_cast<std::size_t>(j)];
            const int bit = qubit_bit(sigma, j, n);
            const double x = output_weight.dot(h) + output_offset;
            const double dx = 0.5 * alpha * (bit - sigmoid(x));

            g_w += dx * h;
            g_c += dx;
            g_u += d_theta * bit * h;
            g_a += d_theta * bit;
            g_v += d_theta * h;
            g_b += d_theta;

            Eigen::VectorXd dh = dx * output_weight +
                                 d_theta * (static_cast<double>(bit) * phase_gate + phase_weight);
            dh.noalias() += recurrence.transpose() * dh_next;
            const Eigen::VectorXd dz = dh.cwiseProduct(Eigen::VectorXd::Ones(nh) - h.cwiseProduct(h));

            const Eigen::VectorXd h_prev = j > 0 ? states[static_cast<std::size_t>(j - 1)]
                                                 : Eigen::VectorXd::Zero(nh);
            const int prev_bit = j > 0 ? qubit_bit(sigma, j - 1, n) : 0;
            g_m.noalias() += dz * h_prev.transpose();
            if (prev_bit) {
                g_p += dz;
            }
            g_q += dz;
            dh_next = dz;
        }
    }

    Eigen::VectorXd grad(parameter_count());
    int pos = 0;
    for (int r = 0; r < nh; ++r) {
        for (int c = 0; c < nh; ++c) {
            grad[pos++] = -2.0 * g_m(r, c);
        }
    }
    grad.segment(pos, nh) = -2.0 * g_p;
    pos += nh;
    grad.segment(pos, nh) = -2.0 * g_q;
    pos += nh;
    grad.segment(pos, nh) = -2.0 * g_u;
    pos += nh;
    grad.segment(pos, nh) = -2.0 * g_v;
    pos += nh;
    grad.segment(pos, nh) = -2.0 * g_w;
    pos += nh;
    grad[pos++] = -2.0 * g_a;
    grad[pos++] = -2.0 * g_b;
    grad[pos++] = -2.0 * g_c;
    return grad;
}

std::unique_ptr<WavefunctionModel> RnnModel::clone() const {
    return std::make_unique<RnnModel>(*this);
}

}  // namespace nqst

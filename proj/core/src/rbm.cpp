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

#include "nqst/rbm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nqst/rng.hpp"

namespace nqst {

namespace {

/// log(1 + e^z) for complex z without overflow in the real part.
cplx log1pexp_complex(cplx z) {
    if (z.real() > 0.0) {
        return z + std::log(1.0 + std::exp(-z));
    }
    return std::log(1.0 + std::exp(z));
}

/// Complex logistic sigmoid e^z / (1 + e^z), overflow-safe.
cplx sigmoid_complex(cplx z) {
    if (z.real() > 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const cplx e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace

RbmModel::RbmModel(int n_visible, int n_hidden) : n_visible_(n_visible) {
    if (n_visible < 1 || n_hidden < 1) {
        throw std::invalid_argument("layer sizes must be positive");
    }
    weights = Eigen::MatrixXcd::Zero(n_hidden, n_visible);
    visible_bias = Eigen::VectorXcd::Zero(n_visible);
    hidden_bias = Eigen::VectorXcd::Zero(n_hidden);
}

RbmModel RbmModel::random_init(int n_visible, int n_hidden, uint64_t seed) {
    RbmModel m(n_visible, n_hidden);
    Rng rng(derive_seed(seed, {0x72626dULL}));
    const double scale = 0.01;
    auto draw = [&] { return cplx(scale * rng.next_gaussian(), scale * rng.next_gaussian()); };
    for (int j = 0; j < n_hidden; ++j) {
        for (int i = 0; i < n_visible; ++i) {
            m.weights(j, i) = draw();
        }
    }
    for (int i = 0; i < n_visible; ++i) {
        m.visible_bias[i] = draw();
    }
    for (int j = 0; j < n_hidden; ++j) {
        m.hidden_bias[j] = draw();
    }
    return m;
}

int RbmModel::param_count(int n_visible, int n_hidden) {
    return 2 * (n_visible * n_hidden + n_visible + n_hidden);
}

int RbmModel::parameter_count() const {
    return param_count(n_visible_, n_hidden());
}

cplx RbmModel::unnormalized_log_amplitude(uint32_t sigma) const {
    if (sigma >> n_visible_) {
        throw std::invalid_argument("basis state index out of range");
    }
    cplx f(0.0, 0.0);
    Eigen::VectorXcd m = hidden_bias;
    for (int i = 0; i < n_visible_; ++i) {
        if (qubit_bit(sigma, i, n_visible_)) {
            f += visible_bias[i];
            m += weights.col(i);
        }
    }
    for (int j = 0; j < m.size(); ++j) {
        f += log1pexp_complex(m[j]);
    }
    return f;
}

double RbmModel::log_partition() const {
    if (n_visible_ > kMaxExactQubits) {
        throw std::invalid_argument("qubit count exceeds the exact enumeration cap");
    }
    const uint32_t dim = uint32_t{1} << n_visible_;
    double max_exponent = -std::numeric_limits<double>::infinity();
    std::vector<double> exponents(dim);
    for (uint32_t sigma = 0; sigma < dim; ++sigma) {
        exponents[sigma] = 2.0 * unnormalized_log_amplitude(sigma).real();
        max_exponent = std::max(max_exponent, exponents[sigma]);
    }
    double sum = 0.0;
    for (double e : exponents) {
        sum += std::exp(e - max_exponent);
    }
    return max_exponent + std::log(sum);
}

StateVector RbmModel::to_statevector() const {
    if (n_visible_ > kMaxExactQubits) {
        throw std::invalid_argument("qubit count exceeds the exact enumeration cap");
    }
    const uint32_t dim = uint32_t{1} << n_visible_;
    Eigen::VectorXcd log_amps(dim);
    double max_re = -std::numeric_limits<double>::infinity();
    for (uint32_t sigma = 0; sigma < dim; ++sigma) {
        log_amps[sigma] = unnormalized_log_amplitude(sigma);
        max_re = std::max(max_re, log_amps[sigma].real());
    }
    Eigen::VectorXcd amps(dim);
    for (uint32_t sigma = 0; sigma < dim; ++sigma) {
        amps[sigma] = std::exp(log_amps[sigma] - max_re);
    }
    amps /= amps.norm();
    return StateVector::from_amplitudes(n_visible_, std::move(amps));
}

Eigen::VectorXd RbmModel::parameters() const {
    const int nh = n_hidden();
    Eigen::VectorXd flat(parameter_count());
    int pos = 0;
    for (int j = 0; j < nh; ++j) {
        for (int i = 0; i < n_visible_; ++i) {
            flat[pos++] = weights(j, i).real();
            flat[pos++] = weights(j, i).imag();
        }
    }
    for (int i = 0; i < n_visible_; ++i) {
        flat[pos++] = visible_bias[i].real();
        flat[pos++] = visible_bias[i].imag();
    }
    for (int j = 0; j < nh; ++j) {
        flat[pos++] = hidden_bias[j].real();
        flat[pos++] = hidden_bias[j].imag();
    }
    return flat;
}

void RbmModel::set_parameters(const Eigen::VectorXd &flat) {
    if (flat.size() != parameter_count()) {
        throw std::invalid_argument("parameter vector has wrong length");
    }
    const int nh = n_hidden();
    int pos = 0;
    for (int j = 0; j < nh; ++j) {
        for (int i = 0; i < n_visible_; ++i) {
            weights(j, i) = cplx(flat[pos], flat[pos + 1]);
            pos += 2;
        }
    }
    for (int i = 0; i < n_visible_; ++i) {
        visible_bias[i] = cplx(flat[pos], flat[pos + 1]);
        pos += 2;
    }
    for (int j = 0; j < nh; ++j) {
        hidden_bias[j] = cplx(flat[pos], flat[pos + 1]);
        pos += 2;
    }
}

Eigen::VectorXd RbmModel::loss_gradient(const StateVector &phi,
                                        const Eigen::VectorXcd &backward) const {
    const int nh = n_hidden();
    const int n = n_visible_;
    const uint32_t dim = uint32_t{1} << n;
    if (phi.amps.size() != dim || backward.size() != dim) {
        throw std::invalid_argument("gradient input dimension mismatch");
    }

    // Holomorphic derivative D of the unnormalized log amplitude per complex
    // parameter, contracted against two weights:
    //   A = sum_tau (B_tau phi_tau) D_tau,   C = sum_tau |phi_tau|^2 D_tau.
    // With S0 = sum_tau B_tau phi_tau, the real-parameter gradient is
    //   d/dRe = -2 Re A + 2 Re(S0) Re C,   d/dIm = 2 Im A - 2 Re(S0) Im C.
    Eigen::MatrixXcd a_w = Eigen::MatrixXcd::Zero(nh, n);
    Eigen::MatrixXcd c_w = Eigen::MatrixXcd::Zero(nh, n);
    Eigen::VectorXcd a_b = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd c_b = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd a_c = Eigen::VectorXcd::Zero(nh);
    Eigen::VectorXcd c_c = Eigen::VectorXcd::Zero(nh);
    cplx s0(0.0, 0.0);

    Eigen::VectorXcd sig(nh);
    for (uint32_t sigma = 0; sigma < dim; ++sigma) {
        const cplx s_tau = backward[sigma] * phi.amps[sigma];
        const double q_tau = std::norm(phi.amps[sigma]);
        s0 += s_tau;

        Eigen::VectorXcd m = hidden_bias;
        for (int i = 0; i < n; ++i) {
            if (qubit_bit(sigma, i, n)) {
                m += weights.col(i);
            }
        }
        for (int j = 0; j < nh; ++j) {
            sig[j] = sigmoid_complex(m[j]);
        }

        a_c += s_tau * sig;
        c_c += q_tau * sig;
        for (int i = 0; i < n; ++i) {
            if (qubit_bit(sigma, i, n)) {
                a_b[i] += s_tau;
                c_b[i] += q_tau;
                a_w.col(i) += s_tau * sig;
                c_w.col(i) += q_tau * sig;
            }
        }
    }

    const double s0_re = s0.real();
    auto fold = [&](cplx a, cplx c, double &out_re, double &out_im) {
        out_re = -2.0 * a.real() + 2.0 * s0_re * c.real();
        out_im = 2.0 * a.imag() - 2.0 * s0_re * c.imag();
    };

    Eigen::VectorXd grad(parameter_count());
    int pos = 0;
    for (int j = 0; j < nh; ++j) {
        for (int i = 0; i < n; ++i) {
            fold(a_w(j, i), c_w(j, i), grad[pos], grad[pos + 1]);
            pos += 2;
        }
    }
    for (int i = 0; i < n; ++i) {
        fold(a_b[i], c_b[i], grad[pos], grad[pos + 1]);
        pos += 2;
    }
    for (int j = 0; j < nh; ++j) {
        fold(a_c[j], c_c[j], grad[pos], grad[pos + 1]);
        pos += 2;
    }
    return grad;
}

std::unique_ptr<WavefunctionModel> RbmModel::clone() const {
    return std::make_unique<RbmModel>(*this);
}

}  // namespace nqst

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

#include <stdexcept>

#include <doctest.h>

#include "nqst/rbm.hpp"
#include "nqst/rnn.hpp"
#include "nqst/train.hpp"
#include "test_util.hpp"

using namespace nqst;

namespace {

// Direct double-loop negative log-likelihood using the dense rotation oracle.
double direct_loss(const StateVector &phi, const Dataset &data) {
    double total = 0.0;
    for (std::size_t k = 0; k < data.bases.size(); ++k) {
        const Eigen::VectorXcd rotated =
            nqst::testing::dense_rotation_adjoint(data.bases[k]) * phi.amps;
        for (const auto &[outcome, weight] : data.histograms[k]) {
            total -= weight * std::log(std::norm(rotated[outcome]));
        }
    }
    return total / data.total_weight;
}

// Central finite difference of the model loss over its flat parameters.
Eigen::VectorXd fd_gradient(WavefunctionModel &model, const Dataset &data, double step) {
    const Eigen::VectorXd base = model.parameters();
    Eigen::VectorXd g(base.size());
    for (int64_t i = 0; i < base.size(); ++i) {
        Eigen::VectorXd p = base;
        p[i] = base[i] + step;
        model.set_parameters(p);
        const double up = loss(model.to_statevector(), data).loss;
        p[i] = base[i] - step;
        model.set_parameters(p);
        const double down = loss(model.to_statevector(), data).loss;
        g[i] = (up - down) / (2.0 * step);
    }
    model.set_parameters(base);
    return g;
}

void check_gradient_close(const Eigen::VectorXd &analytic, const Eigen::VectorXd &fd) {
    REQUIRE(analytic.size() == fd.size());
    for (int64_t i = 0; i < analytic.size(); ++i) {
        const double scale = std::max({std::abs(analytic[i]), std::abs(fd[i]), 1e-8 / 1e-4});
        CHECK(std::abs(analytic[i] - fd[i]) <= 1e-4 * scale);
    }
}

Dataset small_dataset(int n, uint64_t seed, uint64_t shots = 400) {
    const auto h = nqst::testing::tfim(n);
    const auto gs = groundstate(h);
    return sample_dataset(gs.state, group_bases(h), shots, seed);
}

}  // namespace

TEST_SUITE("train") {

TEST_CASE("loss matches the direct double-loop oracle") {
    const auto data = small_dataset(3, 5);
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        const auto phi = nqst::testing::random_state(3, seed);
        const auto report = loss(phi, data);
        CHECK(!report.diverged);
        CHECK(report.loss == doctest::Approx(direct_loss(phi, data)).epsilon(1e-10));
        CHECK(report.per_basis_loss.size() == data.bases.size());
    }
}

TEST_CASE("per-basis losses recombine into the total") {
    const auto data = small_dataset(3, 7);
    const auto phi = nqst::testing::random_state(3, 2);
    const auto report = loss(phi, data);
    double recombined = 0.0;
    for (std::size_t k = 0; k < data.bases.size(); ++k) {
        double basis_weight = 0.0;
        for (const auto &[o, w] : data.histograms[k]) {
            basis_weight += w;
        }
        recombined += report.per_basis_loss[k] * basis_weight / data.total_weight;
    }
    CHECK(recombined == doctest::Approx(report.loss).epsilon(1e-10));
}

TEST_CASE("backward vector differentiates the loss in the amplitudes") {
    // dL/dRe(phi_t) = -2 Re B_t and dL/dIm(phi_t) = 2 Im B_t when the loss is
    // read as a function of the raw amplitudes.
    const auto data = small_dataset(3, 11);
    const auto phi = nqst::testing::random_state(3, 3);
    const auto lb = loss_backward(phi, data);
    CHECK(lb.report.loss == doctest::Approx(direct_loss(phi, data)).epsilon(1e-10));
    const double step = 1e-6;
    for (int64_t t = 0; t < phi.amps.size(); ++t) {
        for (int part = 0; part < 2; ++part) {
            auto up = phi;
            auto down = phi;
            const cplx delta = part == 0 ? cplx(step, 0) : cplx(0, step);
            up.amps[t] += delta;
            down.amps[t] -= delta;
            const double fd = (loss(up, data).loss - loss(down, data).loss) / (2.0 * step);
            const double analytic = part == 0 ? -2.0 * lb.backward[t].real()
                                              : 2.0 * lb.backward[t].imag();
            CHECK(analytic == doctest::Approx(fd).epsilon(1e-4));
        }
    }
}

TEST_CASE("backward vector satisfies the unit contraction identity") {
    // sum_t B_t phi_t = (1/|D|) sum_k sum_sigma n_{k,sigma} = 1.
    const auto data = small_dataset(3, 13);
    const auto phi = nqst::testing::random_state(3, 4);
    const auto lb = loss_backward(phi, data);
    const cplx contraction = lb.backward.cwiseProduct(phi.amps).sum();
    CHECK(contraction.real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(contraction.imag() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("rbm gradient matches central finite differences") {
    const auto data = small_dataset(3, 17);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        RbmModel m = RbmModel::random_init(3, 3, seed);
        m.set_parameters(Eigen::VectorXd(m.parameters() * 30.0));
        const Eigen::VectorXd analytic = gradient(m, data);
        const Eigen::VectorXd fd = fd_gradient(m, data, 1e-5);
        check_gradient_close(analytic, fd);
    }
}

TEST_CASE("rnn gradient matches central finite differences") {
    const auto data = small_dataset(3, 19);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        RnnModel m = RnnModel::random_init(3, 4, seed);
        const Eigen::VectorXd analytic = gradient(m, data);
        const Eigen::VectorXd fd = fd_gradient(m, data, 1e-5);
        check_gradient_close(analytic, fd);
    }
}

TEST_CASE("gradient throws on an empty dataset") {
    Dataset empty;
    empty.n_qubits = 3;
    RbmModel m = RbmModel::random_init(3, 2, 1);
    CHECK_THROWS_AS(gradient(m, empty), std::invalid_argument);
}

TEST_CASE("fit reduces the loss and is deterministic") {
    const auto data = small_dataset(3, 23, 2000);
    TrainConfig cfg;
    cfg.learning_rate = 5e-2;
    cfg.epochs = 300;
    RbmModel m1 = RbmModel::random_init(3, 3, 4);
    RbmModel m2 = RbmModel::random_init(3, 3, 4);
    const auto r1 = fit(m1, data, cfg);
    const auto r2 = fit(m2, data, cfg);
    REQUIRE(r1.loss_history.size() == 300);
    CHECK(!r1.aborted);
    CHECK(r1.completed_epochs == 300);
    CHECK(r1.loss_history.back() < r1.loss_history.front());
    CHECK((m1.parameters() - m2.parameters()).norm() == 0.0);
    for (std::size_t i = 0; i < r1.loss_history.size(); ++i) {
        CHECK(r1.loss_history[i] == r2.loss_history[i]);
    }
}

TEST_CASE("fit trains the rnn too") {
    const auto data = small_dataset(3, 29, 2000);
    TrainConfig cfg;
    cfg.learning_rate = 5e-2;
    cfg.epochs = 400;
    RnnModel m = RnnModel::random_init(3, 4, 8);
    const auto r = fit(m, data, cfg);
    CHECK(!r.aborted);
    CHECK(r.loss_history.back() < r.loss_history.front());
}

TEST_CASE("observer fires on the checkpoint cadence") {
    const auto data = small_dataset(3, 31, 500);
    TrainConfig cfg;
    cfg.learning_rate = 1e-2;
    cfg.epochs = 10;
    cfg.checkpoint_every = 4;
    RbmModel m = RbmModel::random_init(3, 2, 3);
    std::vector<int> epochs;
    fit(m, data, cfg, [&](int epoch, double, const WavefunctionModel &) {
        epochs.push_back(epoch);
    });
    REQUIRE(epochs.size() >= 2);
    CHECK(epochs.back() == 10);  // final epoch always reported
    CHECK(epochs.front() == 4);
}

}  // TEST_SUITE

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

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "nqst/analysis.hpp"
#include "nqst/mle.hpp"
#include "test_util.hpp"

using namespace nqst;

namespace {

// Direct dense-matrix implementation of the imposition map:
// T(phi) = (1/|D|) sum_k sum_sigma n_{k,sigma} R_k|sigma> / <phi|R_k|sigma>.
Eigen::VectorXcd direct_T(const StateVector &phi, const Dataset &data) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(phi.amps.size());
    for (std::size_t k = 0; k < data.bases.size(); ++k) {
        // rotate_to_basis applies R^dagger, so R is the adjoint of the oracle.
        const Eigen::MatrixXcd r = nqst::testing::dense_rotation_adjoint(data.bases[k]).adjoint();
        for (const auto &[outcome, weight] : data.histograms[k]) {
            const Eigen::VectorXcd col = r.col(outcome);
            const cplx overlap = phi.amps.dot(col);  // <phi|R_k|sigma>
            out += (weight / data.total_weight) * col / overlap;
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("mle") {

TEST_CASE("apply_T matches the dense double-loop oracle") {
    const auto h = nqst::testing::tfim(3);
    const auto gs = groundstate(h);
    const auto bases = group_bases(h);
    const auto data = sample_dataset(gs.state, bases, 500, 3);
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        const auto phi = nqst::testing::random_state(3, seed);
        const auto got = apply_T(phi, data);
        const Eigen::VectorXcd expected = direct_T(phi, data);
        CHECK((got.amps - expected).norm() <= 1e-10 * expected.norm());
    }
}

TEST_CASE("generating state is a fixed point of T on exact data") {
    const auto h = nqst::testing::tfim(4);
    const auto gs = groundstate(h);
    const auto data = exact_dataset(gs.state, group_bases(h));
    const auto t = apply_T(gs.state, data);
    // T(psi) = psi for the Born-exact dataset (up to the dropped tail mass).
    const Eigen::VectorXcd normalized = t.amps / t.amps.norm();
    const cplx phase = gs.state.amps.dot(normalized);
    CHECK((normalized - phase / std::abs(phase) * gs.state.amps).norm() <= 1e-9);
}

TEST_CASE("iterate on exact data recovers the generating state fast") {
    const auto h = nqst::testing::tfim(4);
    const auto gs = groundstate(h);
    const auto data = exact_dataset(gs.state, group_bases(h));
    FixedPointConfig cfg;
    const auto result = iterate(gs.state, data, cfg);
    CHECK(result.converged);
    CHECK(fidelity(result.state, gs.state) >= 1.0 - 1e-10);
    // Converged within two smoothing steps from the fixed point itself.
    CHECK(result.trajectory.points.back().iteration <= 2);
}

TEST_CASE("iterate from a random start converges toward the target") {
    const auto h = nqst::testing::tfim(3);
    const auto gs = groundstate(h);
    const auto data = exact_dataset(gs.state, group_bases(h));
    // The smoothed map contracts slowly near the fixed point, so use a looser
    // step tolerance and a fidelity target to match.
    FixedPointConfig cfg;
    cfg.max_iterations = 50000;
    cfg.convergence_tol = 1e-9;
    const auto start = nqst::testing::random_state(3, 17);
    const auto result = iterate(start, data, cfg);
    CHECK(fidelity(result.state, gs.state) >= 1.0 - 1e-5);
    // Loss settles at the entropy floor of the exact data.
    const double floor = entropy_H(gs.state, data.bases);
    CHECK(result.final_loss == doctest::Approx(floor).epsilon(1e-5));
}

TEST_CASE("trajectory bookkeeping") {
    const auto h = nqst::testing::tfim(3);
    const auto gs = groundstate(h);
    const auto data = sample_dataset(gs.state, group_bases(h), 2000, 5);
    FixedPointConfig cfg;
    cfg.max_iterations = 200;
    MleContext ctx;
    ctx.hamiltonian = &h;
    ctx.exact = &gs;
    const auto result = iterate(nqst::testing::random_state(3, 2), data, cfg, ctx);
    REQUIRE(!result.trajectory.points.empty());
    CHECK(result.trajectory.points.front().iteration == 0);
    CHECK(result.trajectory.points.front().step_norm == 0.0);
    for (const auto &pt : result.trajectory.points) {
        CHECK(std::isfinite(pt.loss));
        CHECK(std::isfinite(pt.epsilon));
        CHECK(std::isfinite(pt.delta));
    }
    // With context absent the diagnostics are NaN.
    const auto bare = iterate(nqst::testing::random_state(3, 2), data, cfg);
    CHECK(std::isnan(bare.trajectory.points.front().epsilon));
    CHECK(std::isnan(bare.trajectory.points.front().delta));
}

TEST_CASE("smoothed iteration lowers the loss on sampled data") {
    const auto h = nqst::testing::tfim(3);
    const auto gs = groundstate(h);
    const auto data = sample_dataset(gs.state, group_bases(h), 5000, 21);
    FixedPointConfig cfg;
    cfg.max_iterations = 500;
    const auto result = iterate(nqst::testing::random_state(3, 6), data, cfg);
    const auto &pts = result.trajectory.points;
    REQUIRE(pts.size() >= 2);
    CHECK(pts.back().loss < pts.front().loss);
}

TEST_CASE("loss_minimum_estimate matches iterating from the target") {
    const auto h = nqst::testing::tfim(3);
    const auto gs = groundstate(h);
    const auto data = sample_dataset(gs.state, group_bases(h), 3000, 9);
    const double floor = loss_minimum_estimate(gs.state, data);
    const auto direct = iterate(gs.state, data, FixedPointConfig{});
    CHECK(floor == doctest::Approx(direct.final_loss).epsilon(1e-12));
    // Other starts settle into the same likelihood basin; the exact-target
    // start is a reference value, not a strict bound.
    FixedPointConfig cfg;
    cfg.max_iterations = 5000;
    const auto other = iterate(nqst::testing::random_state(3, 30), data, cfg);
    CHECK(other.final_loss == doctest::Approx(floor).epsilon(1e-2));
}

TEST_CASE("apply_T throws on a vanishing overlap") {
    const auto h = nqst::testing::tfim(2);
    const auto gs = groundstate(h);
    const auto bases = group_bases(h);
    const auto data = sample_dataset(gs.state, bases, 200, 1);
    // A state orthogonal to one observed projected outcome.
    StateVector phi = StateVector::zero_state(2);
    // zero_state is |00>; rotated into the X basis it overlaps everything, so
    // build an explicit zero-amplitude conflict instead.
    Dataset bad = data;
    bool placed = false;
    for (std::size_t k = 0; k < bad.bases.size() && !placed; ++k) {
        bool all_z = true;
        for (Pauli p : bad.bases[k].ops) {
            all_z = all_z && p == Pauli::Z;
        }
        if (all_z) {
            bad.histograms[k][3] += 1.0;  // |11> never overlaps |00>
            bad.total_weight += 1.0;
            placed = true;
        }
    }
    REQUIRE(placed);
    CHECK_THROWS_AS(apply_T(phi, bad), std::runtime_error);
}

}  // TEST_SUITE

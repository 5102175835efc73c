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

#include <benchmark/benchmark.h>

#include "nqst/mle.hpp"
#include "nqst/rbm.hpp"
#include "nqst/rnn.hpp"
#include "nqst/shadows.hpp"

namespace {

using namespace nqst;

/// Open-chain transverse-field Ising model; the standard surrogate here.
PauliHamiltonian tfim(int n) {
    PauliHamiltonian h;
    h.n_qubits = n;
    for (int i = 0; i + 1 < n; ++i) {
        PauliTerm zz;
        zz.ops.assign(static_cast<std::size_t>(n), Pauli::I);
        zz.ops[static_cast<std::size_t>(i)] = Pauli::Z;
        zz.ops[static_cast<std::size_t>(i + 1)] = Pauli::Z;
        zz.coeff = -1.0;
        h.terms.push_back(zz);
    }
    for (int i = 0; i < n; ++i) {
        PauliTerm x;
        x.ops.assign(static_cast<std::size_t>(n), Pauli::I);
        x.ops[static_cast<std::size_t>(i)] = Pauli::X;
        x.coeff = -1.0;
        h.terms.push_back(x);
    }
    return h;
}

void BM_RbmStatevector(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const RbmModel model = RbmModel::random_init(n, n, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.to_statevector());
    }
}
BENCHMARK(BM_RbmStatevector)->Arg(4)->Arg(8);

void BM_RnnStatevector(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const RnnModel model = RnnModel::random_init(n, n, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.to_statevector());
    }
}
BENCHMARK(BM_RnnStatevector)->Arg(4)->Arg(8);

void BM_SampleDataset(benchmark::State &state) {
    const auto h = tfim(8);
    const auto gs = groundstate(h);
    const auto bases = group_bases(h);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_dataset(gs.state, bases, 100000, 3));
    }
}
BENCHMARK(BM_SampleDataset);

void BM_FixedPointStep(benchmark::State &state) {
    const auto h = tfim(8);
    const auto gs = groundstate(h);
    const auto bases = group_bases(h);
    const Dataset data = sample_dataset(gs.state, bases, 100000, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_T(gs.state, data));
    }
}
BENCHMARK(BM_FixedPointStep);

void BM_ShadowEnergy(benchmark::State &state) {
    const auto h = tfim(8);
    const auto gs = groundstate(h);
    for (auto _ : state) {
        benchmark::DoNotOptimize(shadow_energy(h, gs.state, 10000, 3));
    }
}
BENCHMARK(BM_ShadowEnergy);

}  // namespace

BENCHMARK_MAIN();

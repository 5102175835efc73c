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

#ifndef NQST_SAMPLER_HPP
#define NQST_SAMPLER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nqst/pauli.hpp"
#include "nqst/statevec.hpp"

namespace nqst {

/// Measurement data as per-basis outcome histograms. Weights are shot counts
/// for sampled data; exact_weights datasets instead carry Born probability
/// mass p_k(sigma)/K per entry (the infinite-data limit), with total_weight 1.
struct Dataset {
    int n_qubits = 0;
    std::vector<MeasurementBasis> bases;
    std::vector<std::map<uint32_t, double>> histograms;  // outcome index -> weight
    double total_weight = 0.0;
    uint64_t total_shots = 0;
    uint64_t seed = 0;
    bool exact_weights = false;
};

/// Draws `shots` projective measurements from the target: each shot picks a
/// basis uniformly at random, then an outcome from the exact rotated Born
/// distribution (inverse CDF). One child RNG stream per basis; fully
/// deterministic given the seed.
Dataset sample_dataset(const StateVector &target, const std::vector<MeasurementBasis> &bases,
                       uint64_t shots, uint64_t seed);

/// Probability-weighted infinite-data dataset: weight p_k(sigma)/K per entry.
/// Entries below `prob_floor` are dropped.
Dataset exact_dataset(const StateVector &target, const std::vector<MeasurementBasis> &bases,
                      double prob_floor = 1e-16);

/// Exact Born distribution |<sigma| R_k^dagger |target>|^2 over all 2^N outcomes.
Eigen::VectorXd exact_distribution(const StateVector &target, const MeasurementBasis &basis);

/// JSONL persistence: a header object line, then one [basis_index, bitstring,
/// count] line per histogram entry. Round-trips all fields including the seed.
void save_dataset(const Dataset &d, const std::string &path);
Dataset load_dataset(const std::string &path);

}  // namespace nqst

#endif

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

#ifndef NQST_SHADOWS_HPP
#define NQST_SHADOWS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "nqst/pauli.hpp"
#include "nqst/statevec.hpp"

namespace nqst {

/// One randomized single-qubit measurement: an independent uniform {X,Y,Z}
/// axis per qubit plus the computational-basis outcome after rotation.
struct ShadowSample {
    std::vector<Pauli> axes;  // never I
    uint32_t outcome = 0;
};

struct ShadowEstimate {
    double energy = 0.0;  // includes identity_offset
    uint64_t shots = 0;
    std::vector<double> per_term_estimates;  // filled when diagnostics requested
};

/// Draws `shots` randomized measurements from the target. Deterministic given
/// the seed; axes and outcomes share one stream so the streaming estimator
/// reproduces these samples exactly.
std::vector<ShadowSample> collect_shadows(const StateVector &target, uint64_t shots,
                                          uint64_t seed);

/// Inverse-channel energy estimator: a sample contributes to term P only when
/// every supported qubit's axis matches P, with value 3^|supp(P)| times the
/// outcome eigenvalue product. Plain per-term means by default;
/// median_of_means_chunks > 0 switches to median-of-means (diagnostics only).
ShadowEstimate estimate_energy(const PauliHamiltonian &h,
                               const std::vector<ShadowSample> &samples,
                               bool keep_per_term = false, int median_of_means_chunks = 0);

/// Streamed collect + estimate without storing samples; identical result to
/// estimate_energy(collect_shadows(...)) for the same seed.
ShadowEstimate shadow_energy(const PauliHamiltonian &h, const StateVector &target,
                             uint64_t shots, uint64_t seed);

}  // namespace nqst

#endif

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

#include "nqst/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nqst/rng.hpp"

namespace nqst {

namespace {

ShadowSample draw_sample(const StateVector &target, Rng &rng) {
    const int n = target.n_qubits;
    ShadowSample sample;
    sample.axes.resize(static_cast<std::size_t>(n));
    MeasurementBasis basis;
    basis.ops.resize(static_cast<std::size_t>(n));
    static const Pauli axis_table[3] = {Pauli::X, Pauli::Y, Pauli::Z};
    for (int j = 0; j < n; ++j) {
        const Pauli axis = axis_table[rng.next_below(3)];
        sample.axes[static_cast<std::size_t>(j)] = axis;
        basis.ops[static_cast<std::size_t>(j)] = axis;
    }
    const StateVector rotated = rotate_to_basis(basis, target);
    const double u = rng.next_double();
    double acc = 0.0;
    const int64_t dim = rotated.amps.size();
    uint32_t outcome = static_cast<uint32_t>(dim - 1);
    for (int64_t i = 0; i < dim; ++i) {
        acc += std::norm(rotated.amps[i]);
        if (u < acc) {
            outcome = static_cast<uint32_t>(i);
            break;
        }
    }
    sample.outcome = outcome;
    return sample;
}

/// Per-sample estimate for one term: 0 on axis mismatch over the support,
/// else 3^|supp| times the eigenvalue product of the outcome bits.
double term_sample_estimate(const PauliTerm &term, const ShadowSample &sample, int n) {
    double value = 1.0;
    for (int j = 0; j < n; ++j) {
        const Pauli op = term.ops[static_cast<std::size_t>(j)];
        if (op == Pauli::I) {
            continue;
        }
        if (sample.axes[static_cast<std::size_t>(j)] != op) {
            return 0.0;
        }
        value *= qubit_bit(sample.outcome, j, n) ? -3.0 : 3.0;
    }
    return value;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    return m % 2 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

}  // namespace

std::vector<ShadowSample> collect_shadows(const StateVector &target, uint64_t shots,
                                          uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    Rng rng(derive_seed(seed, {0x736861646f77ULL}));
    std::vector<ShadowSample> samples;
    samples.reserve(shots);
    for (uint64_t s = 0; s < shots; ++s) {
        samples.push_back(draw_sample(target, rng));
    }
    return samples;
}

ShadowEstimate estimate_energy(const PauliHamiltonian &h,
                               const std::vector<ShadowSample> &samples, bool keep_per_term,
                               int median_of_means_chunks) {
    if (samples.empty()) {
        throw std::invalid_argument("no shadow samples");
    }
    const int n = h.n_qubits;
    const std::size_t num_terms = h.terms.size();
    const uint64_t shots = samples.size();

    std::vector<double> term_means(num_terms, 0.0);
    if (median_of_means_chunks > 1) {
        const std::size_t chunks = static_cast<std::size_t>(median_of_means_chunks);
        std::vector<std::vector<double>> chunk_sums(num_terms,
                                                    std::vector<double>(chunks, 0.0));
        std::vector<uint64_t> chunk_counts(chunks, 0);
        for (uint64_t s = 0; s < shots; ++s) {
            const std::size_t chunk = s % chunks;
            ++chunk_counts[chunk];
            for (std::size_t t = 0; t < num_terms; ++t) {
                chunk_sums[t][chunk] += term_sample_estimate(h.terms[t], samples[s], n);
            }
        }
        for (std::size_t t = 0; t < num_terms; ++t) {
            std::vector<double> chunk_means(chunks);
            for (std::size_t c = 0; c < chunks; ++c) {
                chunk_means[c] = chunk_sums[t][c] / static_cast<double>(chunk_counts[c]);
            }
            term_means[t] = median(std::move(chunk_means));
        }
    } else {
        for (const auto &sample : samples) {
            for (std::size_t t = 0; t < num_terms; ++t) {
                term_means[t] += term_sample_estimate(h.terms[t], sample, n);
            }
        }
        for (auto &mean : term_means) {
            mean /= static_cast<double>(shots);
        }
    }

    ShadowEstimate estimate;
    estimate.shots = shots;
    estimate.energy = h.identity_offset;
    for (std::size_t t = 0; t < num_terms; ++t) {
        estimate.energy += h.terms[t].coeff * term_means[t];
    }
    if (keep_per_term) {
        estimate.per_term_estimates = std::move(term_means);
    }
    return estimate;
}

ShadowEstimate shadow_energy(const PauliHamiltonian &h, const StateVector &target,
                             uint64_t shots, uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    if (h.n_qubits != target.n_qubits) {
        throw std::invalid_argument("Hamiltonian and state qubit counts differ");
    }
    Rng rng(derive_seed(seed, {0x736861646f77ULL}));
    const std::size_t num_terms = h.terms.size();
    std::vector<double> term_sums(num_terms, 0.0);
    for (uint64_t s = 0; s < shots; ++s) {
        const ShadowSample sample = draw_sample(target, rng);
        for (std::size_t t = 0; t < num_terms; ++t) {
            term_sums[t] += term_sample_estimate(h.terms[t], sample, h.n_qubits);
        }
    }
    ShadowEstimate estimate;
    estimate.shots = shots;
    estimate.energy = h.identity_offset;
    for (std::size_t t = 0; t < num_terms; ++t) {
        estimate.energy += h.terms[t].coeff * term_sums[t] / static_cast<double>(shots);
    }
    return estimate;
}

}  // namespace nqst

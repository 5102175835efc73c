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

#include "nqst/sampler.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nqst/rng.hpp"

namespace nqst {

namespace {

constexpr int kDatasetVersion = 1;

/// Inverse-CDF draw from a cumulative distribution (strictly increasing to ~1).
uint32_t draw_outcome(const std::vector<double> &cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
        --it;
    }
    return static_cast<uint32_t>(it - cdf.begin());
}

}  // namespace

Eigen::VectorXd exact_distribution(const StateVector &target, const MeasurementBasis &basis) {
    StateVector rotated = rotate_to_basis(basis, target);
    return rotated.amps.cwiseAbs2();
}

Dataset sample_dataset(const StateVector &target, const std::vector<MeasurementBasis> &bases,
                       uint64_t shots, uint64_t seed) {
    if (bases.empty()) {
        throw std::invalid_argument("cannot sample with an empty basis list");
    }
    if (shots == 0) {
        throw std::invalid_argument("shot count must be positive");
    }

    const std::size_t num_bases = bases.size();
    std::vector<uint64_t> shots_per_basis(num_bases, 0);
    Rng parent(derive_seed(seed, {0}));
    for (uint64_t s = 0; s < shots; ++s) {
        shots_per_basis[parent.next_below(num_bases)]++;
    }

    Dataset d;
    d.n_qubits = target.n_qubits;
    d.bases = bases;
    d.histograms.resize(num_bases);
    d.total_shots = shots;
    d.total_weight = static_cast<double>(shots);
    d.seed = seed;

    for (std::size_t k = 0; k < num_bases; ++k) {
        if (shots_per_basis[k] == 0) {
            continue;
        }
        const Eigen::VectorXd probs = exact_distribution(target, bases[k]);
        std::vector<double> cdf(static_cast<std::size_t>(probs.size()));
        double acc = 0.0;
        for (int64_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            cdf[static_cast<std::size_t>(i)] = acc;
        }
        Rng child(derive_seed(seed, {1, static_cast<uint64_t>(k)}));
        auto &hist = d.histograms[k];
        for (uint64_t s = 0; s < shots_per_basis[k]; ++s) {
            hist[draw_outcome(cdf, child.next_double() * acc)] += 1.0;
        }
    }
    return d;
}

Dataset exact_dataset(const StateVector &target, const std::vector<MeasurementBasis> &bases,
                      double prob_floor) {
    if (bases.empty()) {
        throw std::invalid_argument("cannot build a dataset with an empty basis list");
    }
    Dataset d;
    d.n_qubits = target.n_qubits;
    d.bases = bases;
    d.histograms.resize(bases.size());
    d.exact_weights = true;
    const double inv_k = 1.0 / static_cast<double>(bases.size());
    for (std::size_t k = 0; k < bases.size(); ++k) {
        const Eigen::VectorXd probs = exact_distribution(target, bases[k]);
        for (int64_t i = 0; i < probs.size(); ++i) {
            if (probs[i] > prob_floor) {
                d.histograms[k][static_cast<uint32_t>(i)] = probs[i] * inv_k;
                d.total_weight += probs[i] * inv_k;
            }
        }
    }
    return d;
}

void save_dataset(const Dataset &d, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open dataset file for writing: " + path);
    }
    nlohmann::json header;
    header["version"] = kDatasetVersion;
    header["n"] = d.n_qubits;
    header["shots"] = d.total_shots;
    header["seed"] = d.seed;
    header["exact_weights"] = d.exact_weights;
    nlohmann::json bases = nlohmann::json::array();
    for (const auto &b : d.bases) {
        bases.push_back(b.ops_string());
    }
    header["bases"] = std::move(bases);
    out << header.dump() << "\n";
    for (std::size_t k = 0; k < d.histograms.size(); ++k) {
        for (const auto &[outcome, weight] : d.histograms[k]) {
            nlohmann::json line = nlohmann::json::array();
            line.push_back(k);
            line.push_back(outcome_string(outcome, d.n_qubits));
            line.push_back(weight);
            out << line.dump() << "\n";
        }
    }
    if (!out) {
        throw std::runtime_error("failed writing dataset file: " + path);
    }
}

Dataset load_dataset(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty dataset file: " + path);
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::runtime_error(std::string("corrupt dataset header: ") + e.what());
    }
    if (header.value("version", -1) != kDatasetVersion) {
        throw std::runtime_error("unsupported dataset version in " + path);
    }

    Dataset d;
    d.n_qubits = header.at("n").get<int>();
    d.total_shots = header.at("shots").get<uint64_t>();
    d.seed = header.at("seed").get<uint64_t>();
    d.exact_weights = header.value("exact_weights", false);
    for (const auto &ops : header.at("bases")) {
        MeasurementBasis b;
        for (char c : ops.get<std::string>()) {
            b.ops.push_back(pauli_from_char(c));
        }
        if (static_cast<int>(b.ops.size()) != d.n_qubits) {
            throw std::runtime_error("basis length mismatch in " + path);
        }
        d.bases.push_back(std::move(b));
    }
    d.histograms.resize(d.bases.size());

    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        nlohmann::json entry;
        try {
            entry = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error &e) {
            throw std::runtime_error(std::string("corrupt dataset entry: ") + e.what());
        }
        const std::size_t k = entry.at(0).get<std::size_t>();
        if (k >= d.histograms.size()) {
            throw std::runtime_error("basis index out of range in " + path);
        }
        const uint32_t outcome = outcome_from_string(entry.at(1).get<std::string>());
        const double weight = entry.at(2).get<double>();
        if (weight <= 0.0) {
            throw std::runtime_error("non-positive histogram weight in " + path);
        }
        d.histograms[k][outcome] += weight;
        d.total_weight += weight;
    }
    if (!d.exact_weights &&
        std::abs(d.total_weight - static_cast<double>(d.total_shots)) > 1e-6) {
        throw std::runtime_error("histogram weights do not sum to the shot count in " + path);
    }
    return d;
}

}  // namespace nqst

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

#include "nqst/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nqst/sampler.hpp"

namespace nqst {

std::string method_name(Method m) {
    switch (m) {
        case Method::rbm:
            return "rbm";
        case Method::rnn:
            return "rnn";
        case Method::wavefunction:
            return "wavefunction";
        case Method::shadows:
            return "shadows";
    }
    return "?";
}

Method method_from_name(const std::string &name) {
    if (name == "rbm") {
        return Method::rbm;
    }
    if (name == "rnn") {
        return Method::rnn;
    }
    if (name == "wavefunction") {
        return Method::wavefunction;
    }
    if (name == "shadows") {
        return Method::shadows;
    }
    throw std::invalid_argument("unknown method: " + name);
}

double epsilon(const StateVector &model_state, const PauliHamiltonian &h,
               const GroundstateResult &exact) {
    return expectation(h, model_state) - exact.energy;
}

double shadow_epsilon(double estimated_energy, const GroundstateResult &exact) {
    return std::abs(estimated_energy - exact.energy);
}

double delta(const StateVector &model_state, const StateVector &exact_state) {
    return 1.0 - fidelity(model_state, exact_state);
}

double generalization_error(const StateVector &model_state, const StateVector &target_state,
                            const std::vector<MeasurementBasis> &bases) {
    if (bases.empty()) {
        throw std::invalid_argument("basis list is empty");
    }
    double total = 0.0;
    for (const auto &basis : bases) {
        const Eigen::VectorXd target_probs = exact_distribution(target_state, basis);
        const Eigen::VectorXd model_probs = exact_distribution(model_state, basis);
        for (int64_t i = 0; i < target_probs.size(); ++i) {
            if (target_probs[i] <= 0.0) {
                continue;
            }
            if (model_probs[i] < 1e-300) {
                return std::numeric_limits<double>::infinity();
            }
            total -= target_probs[i] * std::log(model_probs[i]);
        }
    }
    return total / static_cast<double>(bases.size());
}

double entropy_H(const StateVector &target_state, const std::vector<MeasurementBasis> &bases) {
    if (bases.empty()) {
        throw std::invalid_argument("basis list is empty");
    }
    double total = 0.0;
    for (const auto &basis : bases) {
        const Eigen::VectorXd probs = exact_distribution(target_state, basis);
        for (int64_t i = 0; i < probs.size(); ++i) {
            if (probs[i] > 0.0) {
                total -= probs[i] * std::log(probs[i]);
            }
        }
    }
    return total / static_cast<double>(bases.size());
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>> &points) {
    if (points.size() < 3) {
        throw std::invalid_argument("power-law fit needs at least 3 points");
    }
    std::vector<double> x, y;  // x = log10(quality), y = log10(S)
    for (const auto &[shots, quality] : points) {
        if (shots <= 0.0 || quality <= 0.0) {
            throw std::invalid_argument("power-law fit needs positive values");
        }
        x.push_back(std::log10(quality));
        y.push_back(std::log10(shots));
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) {
        throw std::invalid_argument("degenerate regressor in power-law fit");
    }
    PowerLawFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

std::vector<ScalingPoint> aggregate_by_shots(const std::vector<ScalingRecord> &records,
                                             Method method, bool use_delta) {
    std::map<uint64_t, std::vector<double>> grouped;
    for (const auto &r : records) {
        if (r.method != method) {
            continue;
        }
        if (use_delta) {
            if (r.delta.has_value()) {
                grouped[r.shots].push_back(*r.delta);
            }
        } else {
            grouped[r.shots].push_back(r.epsilon);
        }
    }
    std::vector<ScalingPoint> points;
    for (const auto &[shots, values] : grouped) {
        ScalingPoint pt;
        pt.shots = shots;
        pt.count = static_cast<int>(values.size());
        double mean = 0.0;
        for (double v : values) {
            mean += v;
        }
        mean /= static_cast<double>(values.size());
        pt.mean = mean;
        if (values.size() > 1) {
            double var = 0.0;
            for (double v : values) {
                var += (v - mean) * (v - mean);
            }
            var /= static_cast<double>(values.size() - 1);
            pt.sem = std::sqrt(var / static_cast<double>(values.size()));
        }
        points.push_back(pt);
    }
    return points;
}

void save_records_csv(const std::vector<ScalingRecord> &records, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open records file for writing: " + path);
    }
    out << "method,shots,seed,epsilon,delta,g_error\n";
    out.precision(17);
    for (const auto &r : records) {
        out << method_name(r.method) << ',' << r.shots << ',' << r.seed << ',' << r.epsilon << ',';
        if (r.delta.has_value()) {
            out << *r.delta;
        }
        out << ',';
        if (r.g_error.has_value()) {
            out << *r.g_error;
        }
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed writing records file: " + path);
    }
}

std::vector<ScalingRecord> load_records_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open records file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty records file: " + path);
    }
    std::vector<ScalingRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        ScalingRecord r;
        std::getline(ss, field, ',');
        r.method = method_from_name(field);
        std::getline(ss, field, ',');
        r.shots = std::stoull(field);
        std::getline(ss, field, ',');
        r.seed = std::stoull(field);
        std::getline(ss, field, ',');
        r.epsilon = std::stod(field);
        if (std::getline(ss, field, ',') && !field.empty()) {
            r.delta = std::stod(field);
        }
        if (std::getline(ss, field, ',') && !field.empty()) {
            r.g_error = std::stod(field);
        }
        records.push_back(r);
    }
    return records;
}

}  // namespace nqst

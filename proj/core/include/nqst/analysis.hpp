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

#ifndef NQST_ANALYSIS_HPP
#define NQST_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nqst/pauli.hpp"
#include "nqst/statevec.hpp"

namespace nqst {

enum class Method { rbm, rnn, wavefunction, shadows };

std::string method_name(Method m);
Method method_from_name(const std::string &name);

/// One (method, S, seed) run result. delta and g_error are absent for
/// shadows, which produce an energy estimate but no state.
struct ScalingRecord {
    Method method = Method::shadows;
    uint64_t shots = 0;
    uint64_t seed = 0;
    double epsilon = 0.0;
    std::optional<double> delta;
    std::optional<double> g_error;
};

struct PowerLawFit {
    double slope = 0.0;      // d log10(S) / d log10(quality)
    double intercept = 0.0;  // log10(S) at quality 1
    double r_squared = 0.0;
};

/// Signed energy error of a reconstructed state; non-negative up to numerical
/// tolerance by the variational principle.
double epsilon(const StateVector &model_state, const PauliHamiltonian &h,
               const GroundstateResult &exact);

/// Energy error of a direct estimate (shadows): |E_est - E0|.
double shadow_epsilon(double estimated_energy, const GroundstateResult &exact);

/// Infidelity 1 - |<model|exact>|^2.
double delta(const StateVector &model_state, const StateVector &exact_state);

/// Infinite-data cross entropy of the model's measurement distributions
/// against the target's, averaged over settings:
///   G = -(1/K) sum_k sum_sigma p_k(sigma) log |<sigma|R_k^dagger|model>|^2.
/// Returns +inf when the model assigns vanishing probability where p_k > 0.
double generalization_error(const StateVector &model_state, const StateVector &target_state,
                            const std::vector<MeasurementBasis> &bases);

/// Average target entropy H; G - H >= 0 with equality at the target.
double entropy_H(const StateVector &target_state, const std::vector<MeasurementBasis> &bases);

/// OLS of log10(S) on log10(quality). Requires >= 3 points with positive
/// quality; throws otherwise.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>> &points);

/// Per-S mean and standard error of the mean, for one quality column.
struct ScalingPoint {
    uint64_t shots = 0;
    double mean = 0.0;
    double sem = 0.0;
    int count = 0;
};

std::vector<ScalingPoint> aggregate_by_shots(const std::vector<ScalingRecord> &records,
                                             Method method, bool use_delta);

/// Records CSV (method, shots, seed, epsilon, delta, g_error); empty optionals
/// serialize as empty fields.
void save_records_csv(const std::vector<ScalingRecord> &records, const std::string &path);
std::vector<ScalingRecord> load_records_csv(const std::string &path);

}  // namespace nqst

#endif

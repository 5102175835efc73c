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

#ifndef NQST_STATEVEC_HPP
#define NQST_STATEVEC_HPP

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "nqst/pauli.hpp"

namespace nqst {

using cplx = std::complex<double>;

/// Hard cap on exact enumeration; 2^14 amplitudes.
inline constexpr int kMaxExactQubits = 14;

/// Dense complex amplitude vector over the computational basis. Index bit
/// convention follows pauli.hpp: qubit 0 is the most significant bit.
struct StateVector {
    int n_qubits = 0;
    Eigen::VectorXcd amps;

    static StateVector zero_state(int n_qubits);
    static StateVector from_amplitudes(int n_qubits, Eigen::VectorXcd amplitudes);

    double norm() const {
        return amps.norm();
    }
};

struct GroundstateResult {
    double energy = 0.0;  // includes identity_offset
    StateVector state;
    double residual_norm = 0.0;
};

/// H|s> computed term-by-term; never materializes the 2^N x 2^N matrix.
/// Output is raw (unnormalized). identity_offset is applied.
StateVector apply_hamiltonian(const PauliHamiltonian &h, const StateVector &s);

/// Lowest eigenpair of H. Dense eigensolve for N <= 8, Lanczos with full
/// reorthogonalization above that. The global phase is fixed so the
/// largest-magnitude amplitude is real and positive.
GroundstateResult groundstate(const PauliHamiltonian &h);

/// Applies the inverse basis rotation: returns R_k^dagger |s>, the state whose
/// computational-basis probabilities are the measurement outcome probabilities
/// in setting k. Z qubits are untouched; X uses the Hadamard, Y the standard
/// circular eigenbasis (|0> +- i|1>)/sqrt(2).
StateVector rotate_to_basis(const MeasurementBasis &basis, const StateVector &s);

/// Applies the forward rotation R_k |s| (the adjoint of rotate_to_basis).
StateVector rotate_from_basis(const MeasurementBasis &basis, const StateVector &s);

/// Re <s|H|s>, including identity_offset. s must be normalized.
double expectation(const PauliHamiltonian &h, const StateVector &s);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);

cplx inner_product(const StateVector &a, const StateVector &b);

/// Rotates the global phase so the largest-magnitude amplitude is real-positive.
void fix_global_phase(StateVector &s);

/// Binary state file: 16-byte header (8-byte magic "NQSTVEC\0", int32 N,
/// 4 bytes reserved) followed by 2^N little-endian complex doubles.
void save_statevector(const StateVector &s, const std::string &path);
StateVector load_statevector(const std::string &path);

}  // namespace nqst

#endif

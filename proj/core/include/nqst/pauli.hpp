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

#ifndef NQST_PAULI_HPP
#define NQST_PAULI_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace nqst {

enum class Pauli : uint8_t { I, X, Y, Z };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// One weighted Pauli string of a qubit Hamiltonian. Coefficients are real
/// (hartree); qubit 0 is the leftmost character of the string and the most
/// significant bit of a basis-state index.
struct PauliTerm {
    std::vector<Pauli> ops;
    double coeff = 0.0;

    std::string ops_string() const;
};

struct PauliHamiltonian {
    std::string name;
    int n_qubits = 0;
    std::vector<PauliTerm> terms;
    double identity_offset = 0.0;  // coefficient of the all-identity string
};

/// A full-weight measurement setting: no identity positions. covered_terms
/// holds the indices of the Hamiltonian terms readable in this setting.
struct MeasurementBasis {
    std::vector<Pauli> ops;
    std::vector<std::size_t> covered_terms;

    std::string ops_string() const;
};

/// Parses the JSON Hamiltonian format:
///   {"name": str, "n": int, "terms": [["ZZ", 0.5], ...]}
/// Duplicate strings are merged; the all-identity coefficient is moved to
/// identity_offset. Throws std::invalid_argument on malformed input.
PauliHamiltonian parse_hamiltonian(const std::string &text);

/// Canonical JSON form; parse(serialize(h)) == h.
std::string serialize_hamiltonian(const PauliHamiltonian &h);

PauliHamiltonian load_hamiltonian(const std::string &path);

/// Groups the terms into qubit-wise commuting measurement settings by greedy
/// first-fit over file order; identity positions left over at the end are
/// padded to Z. Deterministic given input order.
std::vector<MeasurementBasis> group_bases(const PauliHamiltonian &h);

/// True when the term can be read out in the given setting (every non-identity
/// position of the term agrees with the setting).
bool term_compatible(const PauliTerm &term, const std::vector<Pauli> &basis_ops);

/// Eigenvalue (+1/-1) of a measured term on a computational-basis outcome.
/// outcome is a basis-state index (qubit 0 = most significant bit).
/// Throws std::invalid_argument when the term is not covered by the basis.
int term_eigenvalue(const PauliTerm &term, const MeasurementBasis &basis, uint32_t outcome);

/// Extracts qubit j's bit from a basis-state index.
inline int qubit_bit(uint32_t index, int qubit, int n_qubits) {
    return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

std::string outcome_string(uint32_t index, int n_qubits);
uint32_t outcome_from_string(const std::string &bits);

}  // namespace nqst

#endif

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

#include "nqst/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nqst {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
        default:
            throw std::invalid_argument(std::string("invalid Pauli character '") + c + "'");
    }
}

std::string PauliTerm::ops_string() const {
    std::string s;
    s.reserve(ops.size());
    for (Pauli p : ops) {
        s.push_back(pauli_char(p));
    }
    return s;
}

std::string MeasurementBasis::ops_string() const {
    std::string s;
    s.reserve(ops.size());
    for (Pauli p : ops) {
        s.push_back(pauli_char(p));
    }
    return s;
}

PauliHamiltonian parse_hamiltonian(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("malformed Hamiltonian JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("terms")) {
        throw std::invalid_argument("Hamiltonian JSON must be an object with \"n\" and \"terms\"");
    }

    PauliHamiltonian h;
    h.name = j.value("name", "");
    h.n_qubits = j.at("n").get<int>();
    if (h.n_qubits <= 0) {
        throw std::invalid_argument("qubit count must be positive");
    }

    // Merge duplicates in first-seen order.
    std::vector<std::string> order;
    std::map<std::string, double> merged;
    for (const auto &entry : j.at("terms")) {
        if (!entry.is_array() || entry.size() != 2) {
            throw std::invalid_argument("each term must be a [string, coeff] pair");
        }
        std::string ops = entry.at(0).get<std::string>();
        double coeff = entry.at(1).get<double>();
        if (static_cast<int>(ops.size()) != h.n_qubits) {
            throw std::invalid_argument("Pauli string '" + ops + "' does not have length n");
        }
        for (char c : ops) {
            pauli_from_char(c);  // validates
        }
        if (!std::isfinite(coeff)) {
            throw std::invalid_argument("non-finite coefficient for '" + ops + "'");
        }
        auto [it, inserted] = merged.try_emplace(ops, 0.0);
        if (inserted) {
            order.push_back(ops);
        }
        it->second += coeff;
    }

    const std::string identity(static_cast<std::size_t>(h.n_qubits), 'I');
    for (const auto &ops : order) {
        double coeff = merged.at(ops);
        if (ops == identity) {
            h.identity_offset += coeff;
            continue;
        }
        PauliTerm term;
        term.coeff = coeff;
        term.ops.reserve(ops.size());
        for (char c : ops) {
            term.ops.push_back(pauli_from_char(c));
        }
        h.terms.push_back(std::move(term));
    }
    return h;
}

std::string serialize_hamiltonian(const PauliHamiltonian &h) {
    nlohmann::json j;
    j["name"] = h.name;
    j["n"] = h.n_qubits;
    nlohmann::json terms = nlohmann::json::array();
    if (h.identity_offset != 0.0) {
        terms.push_back({std::string(static_cast<std::size_t>(h.n_qubits), 'I'), h.identity_offset});
    }
    for (const auto &t : h.terms) {
        terms.push_back({t.ops_string(), t.coeff});
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

PauliHamiltonian load_hamiltonian(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open Hamiltonian file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_hamiltonian(ss.str());
}

bool term_compatible(const PauliTerm &term, const std::vector<Pauli> &basis_ops) {
    for (std::size_t j = 0; j < term.ops.size(); ++j) {
        if (term.ops[j] != Pauli::I && term.ops[j] != basis_ops[j]) {
            return false;
        }
    }
    return true;
}

std::vector<MeasurementBasis> group_bases(const PauliHamiltonian &h) {
    std::vector<MeasurementBasis> bases;
    for (std::size_t t = 0; t < h.terms.size(); ++t) {
        const PauliTerm &term = h.terms[t];
        bool placed = false;
        for (auto &basis : bases) {
            bool fits = true;
            for (std::size_t j = 0; j < term.ops.size(); ++j) {
                if (term.ops[j] != Pauli::I && basis.ops[j] != Pauli::I &&
                    basis.ops[j] != term.ops[j]) {
                    fits = false;
                    break;
                }
            }
            if (fits) {
                for (std::size_t j = 0; j < term.ops.size(); ++j) {
                    if (term.ops[j] != Pauli::I) {
                        basis.ops[j] = term.ops[j];
                    }
                }
                basis.covered_terms.push_back(t);
                placed = true;
                break;
            }
        }
        if (!placed) {
            MeasurementBasis basis;
            basis.ops = term.ops;
            basis.covered_terms.push_back(t);
            bases.push_back(std::move(basis));
        }
    }
    for (auto &basis : bases) {
        for (auto &op : basis.ops) {
            if (op == Pauli::I) {
                op = Pauli::Z;
            }
        }
    }
    return bases;
}

int term_eigenvalue(const PauliTerm &term, const MeasurementBasis &basis, uint32_t outcome) {
    if (!term_compatible(term, basis.ops)) {
        throw std::invalid_argument("term '" + term.ops_string() + "' is not covered by basis '" +
                                    basis.ops_string() + "'");
    }
    const int n = static_cast<int>(term.ops.size());
    int value = 1;
    for (int j = 0; j < n; ++j) {
        if (term.ops[j] != Pauli::I && qubit_bit(outcome, j, n) == 1) {
            value = -value;
        }
    }
    return value;
}

std::string outcome_string(uint32_t index, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int j = 0; j < n_qubits; ++j) {
        if (qubit_bit(index, j, n_qubits)) {
            s[static_cast<std::size_t>(j)] = '1';
        }
    }
    return s;
}

uint32_t outcome_from_string(const std::string &bits) {
    uint32_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("invalid outcome bitstring: " + bits);
        }
        index = (index << 1) | static_cast<uint32_t>(c - '0');
    }
    return index;
}

}  // namespace nqst

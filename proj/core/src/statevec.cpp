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

#include "nqst/statevec.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "nqst/rng.hpp"

namespace nqst {

namespace {

constexpr char kStateMagic[8] = {'N', 'Q', 'S', 'T', 'V', 'E', 'C', '\0'};

void check_dims(const StateVector &s, int n_qubits) {
    if (s.n_qubits != n_qubits || s.amps.size() != (int64_t{1} << n_qubits)) {
        throw std::invalid_argument("state vector dimension mismatch");
    }
}

/// In-place application of a 2x2 matrix to one qubit.
void apply_single_qubit(Eigen::VectorXcd &amps, int n_qubits, int qubit, const cplx m[2][2]) {
    const int64_t stride = int64_t{1} << (n_qubits - 1 - qubit);
    const int64_t dim = amps.size();
    for (int64_t block = 0; block < dim; block += 2 * stride) {
        for (int64_t offset = 0; offset < stride; ++offset) {
            const int64_t i0 = block + offset;
            const int64_t i1 = i0 + stride;
            const cplx a0 = amps[i0];
            const cplx a1 = amps[i1];
            amps[i0] = m[0][0] * a0 + m[0][1] * a1;
            amps[i1] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

/// H|s> without the identity offset.
Eigen::VectorXcd apply_terms(const PauliHamiltonian &h, const Eigen::VectorXcd &in) {
    const int n = h.n_qubits;
    const int64_t dim = in.size();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (const PauliTerm &term : h.terms) {
        uint64_t flip_mask = 0;
        uint64_t z_mask = 0;  // positions contributing (-1)^bit: Z and Y
        int y_count = 0;
        for (int j = 0; j < n; ++j) {
            const uint64_t bit = uint64_t{1} << (n - 1 - j);
            switch (term.ops[static_cast<std::size_t>(j)]) {
                case Pauli::I:
                    break;
                case Pauli::X:
                    flip_mask |= bit;
                    break;
                case Pauli::Y:
                    flip_mask |= bit;
                    z_mask |= bit;
                    ++y_count;
                    break;
                case Pauli::Z:
                    z_mask |= bit;
                    break;
            }
        }
        // Per Y factor: Y|b> = i(-1)^b |1-b>.
        cplx y_phase(1.0, 0.0);
        for (int k = 0; k < (y_count & 3); ++k) {
            y_phase *= cplx(0.0, 1.0);
        }
        for (int64_t i = 0; i < dim; ++i) {
            const int parity = std::popcount(static_cast<uint64_t>(i) & z_mask) & 1;
            const cplx factor = (parity ? -term.coeff : term.coeff) * y_phase;
            out[static_cast<int64_t>(static_cast<uint64_t>(i) ^ flip_mask)] += factor * in[i];
        }
    }
    return out;
}

GroundstateResult dense_groundstate(const PauliHamiltonian &h) {
    const int64_t dim = int64_t{1} << h.n_qubits;
    Eigen::MatrixXcd mat(dim, dim);
    Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(dim);
    for (int64_t col = 0; col < dim; ++col) {
        unit[col] = 1.0;
        mat.col(col) = apply_terms(h, unit);
        unit[col] = 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("dense eigensolve failed");
    }
    GroundstateResult result;
    result.state.n_qubits = h.n_qubits;
    result.state.amps = solver.eigenvectors().col(0);
    const double e0 = solver.eigenvalues()[0];
    result.energy = e0 + h.identity_offset;
    result.residual_norm = (apply_terms(h, result.state.amps) - e0 * result.state.amps).norm();
    return result;
}

GroundstateResult lanczos_groundstate(const PauliHamiltonian &h) {
    const int64_t dim = int64_t{1} << h.n_qubits;
    const int max_krylov = static_cast<int>(std::min<int64_t>(dim, 400));
    const double residual_tol = 1e-9;

    Rng rng(0x6c616e637a6f73ULL);
    Eigen::VectorXcd v(dim);
    for (int64_t i = 0; i < dim; ++i) {
        v[i] = cplx(rng.next_gaussian(), rng.next_gaussian());
    }
    v.normalize();

    std::vector<Eigen::VectorXcd> krylov;
    krylov.push_back(v);
    std::vector<double> alpha, beta;

    Eigen::VectorXcd w;
    for (int it = 0; it < max_krylov; ++it) {
        w = apply_terms(h, krylov.back());
        const double a = w.dot(krylov.back()).real();
        alpha.push_back(a);
        w -= a * krylov.back();
        if (it > 0) {
            w -= beta.back() * krylov[krylov.size() - 2];
        }
        // Full reorthogonalization against the whole Krylov basis.
        for (const auto &q : krylov) {
            w -= q.dot(w) * q;
        }

        const int m = static_cast<int>(alpha.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            tri(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) {
                tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
        const double theta = small.eigenvalues()[0];
        const Eigen::VectorXd y = small.eigenvectors().col(0);

        const double b = w.norm();
        // Residual of the Ritz pair is |beta_m * y_m|.
        const double residual_est = b * std::abs(y[m - 1]);
        if (residual_est < residual_tol || b < 1e-14 || it == max_krylov - 1) {
            Eigen::VectorXcd ritz = Eigen::VectorXcd::Zero(dim);
            for (int i = 0; i < m; ++i) {
                ritz += y[i] * krylov[static_cast<std::size_t>(i)];
            }
            ritz.normalize();
            const double exact_residual = (apply_terms(h, ritz) - theta * ritz).norm();
            if (exact_residual > 1e-8) {
                if (it == max_krylov - 1) {
                    throw std::runtime_error("Lanczos did not converge");
                }
            } else {
                GroundstateResult result;
                result.state.n_qubits = h.n_qubits;
                result.state.amps = std::move(ritz);
                result.energy = theta + h.identity_offset;
                result.residual_norm = exact_residual;
                return result;
            }
        }
        beta.push_back(b);
        krylov.push_back(w / b);
    }
    throw std::runtime_error("Lanczos did not converge");
}

}  // namespace

StateVector StateVector::zero_state(int n_qubits) {
    StateVector s;
    s.n_qubits = n_qubits;
    s.amps = Eigen::VectorXcd::Zero(int64_t{1} << n_qubits);
    s.amps[0] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(int n_qubits, Eigen::VectorXcd amplitudes) {
    if (amplitudes.size() != (int64_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude vector has wrong length");
    }
    StateVector s;
    s.n_qubits = n_qubits;
    s.amps = std::move(amplitudes);
    return s;
}

StateVector apply_hamiltonian(const PauliHamiltonian &h, const StateVector &s) {
    check_dims(s, h.n_qubits);
    StateVector out;
    out.n_qubits = s.n_qubits;
    out.amps = apply_terms(h, s.amps);
    if (h.identity_offset != 0.0) {
        out.amps += h.identity_offset * s.amps;
    }
    return out;
}

GroundstateResult groundstate(const PauliHamiltonian &h) {
    if (h.n_qubits > kMaxExactQubits) {
        throw std::invalid_argument("qubit count exceeds the exact-solve cap");
    }
    GroundstateResult result = h.n_qubits <= 8 ? dense_groundstate(h) : lanczos_groundstate(h);
    fix_global_phase(result.state);
    return result;
}

StateVector rotate_to_basis(const MeasurementBasis &basis, const StateVector &s) {
    check_dims(s, static_cast<int>(basis.ops.size()));
    StateVector out = s;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // R^dagger per qubit: Hadamard for X; [[1, -i], [1, i]]/sqrt(2) for Y.
    const cplx hadamard[2][2] = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
    const cplx y_dag[2][2] = {{cplx(inv_sqrt2, 0), cplx(0, -inv_sqrt2)},
                              {cplx(inv_sqrt2, 0), cplx(0, inv_sqrt2)}};
    for (std::size_t j = 0; j < basis.ops.size(); ++j) {
        switch (basis.ops[j]) {
            case Pauli::X:
                apply_single_qubit(out.amps, out.n_qubits, static_cast<int>(j), hadamard);
                break;
            case Pauli::Y:
                apply_single_qubit(out.amps, out.n_qubits, static_cast<int>(j), y_dag);
                break;
            default:
                break;
        }
    }
    return out;
}

StateVector rotate_from_basis(const MeasurementBasis &basis, const StateVector &s) {
    check_dims(s, static_cast<int>(basis.ops.size()));
    StateVector out = s;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const cplx hadamard[2][2] = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
    // R per qubit for Y: adjoint of [[1, -i], [1, i]]/sqrt(2).
    const cplx y_fwd[2][2] = {{cplx(inv_sqrt2, 0), cplx(inv_sqrt2, 0)},
                              {cplx(0, inv_sqrt2), cplx(0, -inv_sqrt2)}};
    for (std::size_t j = 0; j < basis.ops.size(); ++j) {
        switch (basis.ops[j]) {
            case Pauli::X:
                apply_single_qubit(out.amps, out.n_qubits, static_cast<int>(j), hadamard);
                break;
            case Pauli::Y:
                apply_single_qubit(out.amps, out.n_qubits, static_cast<int>(j), y_fwd);
                break;
            default:
                break;
        }
    }
    return out;
}

double expectation(const PauliHamiltonian &h, const StateVector &s) {
    StateVector hs = apply_hamiltonian(h, s);
    const cplx value = s.amps.dot(hs.amps);
    if (std::abs(value.imag()) >= 1e-9) {
        throw std::runtime_error("expectation value has a non-negligible imaginary part");
    }
    return value.real();
}

double fidelity(const StateVector &a, const StateVector &b) {
    if (a.n_qubits != b.n_qubits) {
        throw std::invalid_argument("state vector dimension mismatch");
    }
    return std::norm(a.amps.dot(b.amps));
}

cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits != b.n_qubits) {
        throw std::invalid_argument("state vector dimension mismatch");
    }
    return a.amps.dot(b.amps);  // conjugates a
}

void fix_global_phase(StateVector &s) {
    int64_t max_index = 0;
    double max_mag = 0.0;
    for (int64_t i = 0; i < s.amps.size(); ++i) {
        const double mag = std::abs(s.amps[i]);
        if (mag > max_mag) {
            max_mag = mag;
            max_index = i;
        }
    }
    if (max_mag > 0.0) {
        s.amps *= std::conj(s.amps[max_index]) / max_mag;
    }
}

void save_statevector(const StateVector &s, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open state file for writing: " + path);
    }
    out.write(kStateMagic, 8);
    const int32_t n = s.n_qubits;
    out.write(reinterpret_cast<const char *>(&n), 4);
    const int32_t reserved = 0;
    out.write(reinterpret_cast<const char *>(&reserved), 4);
    for (int64_t i = 0; i < s.amps.size(); ++i) {
        const double re = s.amps[i].real();
        const double im = s.amps[i].imag();
        out.write(reinterpret_cast<const char *>(&re), 8);
        out.write(reinterpret_cast<const char *>(&im), 8);
    }
    if (!out) {
        throw std::runtime_error("failed writing state file: " + path);
    }
}

StateVector load_statevector(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open state file: " + path);
    }
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kStateMagic, 8) != 0) {
        throw std::runtime_error("bad magic in state file: " + path);
    }
    int32_t n = 0, reserved = 0;
    in.read(reinterpret_cast<char *>(&n), 4);
    in.read(reinterpret_cast<char *>(&reserved), 4);
    if (!in || n <= 0 || n > kMaxExactQubits) {
        throw std::runtime_error("bad header in state file: " + path);
    }
    StateVector s;
    s.n_qubits = n;
    s.amps.resize(int64_t{1} << n);
    for (int64_t i = 0; i < s.amps.size(); ++i) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char *>(&re), 8);
        in.read(reinterpret_cast<char *>(&im), 8);
        s.amps[i] = cplx(re, im);
    }
    if (!in) {
        throw std::runtime_error("truncated state file: " + path);
    }
    return s;
}

}  // namespace nqst

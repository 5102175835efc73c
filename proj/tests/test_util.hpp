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

// Shared fixtures and independent oracles for the test suites. Everything in
// here deliberately avoids the library's own fast paths: dense matrices are
// built by Kronecker products and compared against the matrix-free code.

#ifndef NQST_TEST_UTIL_HPP
#define NQST_TEST_UTIL_HPP

#include <cmath>
#include <vector>

#include "nqst/rng.hpp"
#include "nqst/sampler.hpp"
#include "nqst/statevec.hpp"

namespace nqst::testing {

/// Open-chain transverse-field Ising model -sum Z_i Z_{i+1} - sum X_i.
inline PauliHamiltonian tfim(int n, double coupling = 1.0, double field = 1.0) {
    PauliHamiltonian h;
    h.name = "tfim";
    h.n_qubits = n;
    for (int i = 0; i + 1 < n; ++i) {
        PauliTerm zz;
        zz.ops.assign(static_cast<std::size_t>(n), Pauli::I);
        zz.ops[static_cast<std::size_t>(i)] = Pauli::Z;
        zz.ops[static_cast<std::size_t>(i + 1)] = Pauli::Z;
        zz.coeff = -coupling;
        h.terms.push_back(zz);
    }
    for (int i = 0; i < n; ++i) {
        PauliTerm x;
        x.ops.assign(static_cast<std::size_t>(n), Pauli::I);
        x.ops[static_cast<std::size_t>(i)] = Pauli::X;
        x.coeff = -field;
        h.terms.push_back(x);
    }
    return h;
}

inline PauliHamiltonian random_hamiltonian(int n, int n_terms, uint64_t seed) {
    Rng rng(seed);
    PauliHamiltonian h;
    h.n_qubits = n;
    for (int t = 0; t < n_terms; ++t) {
        PauliTerm term;
        bool all_identity = true;
        for (int j = 0; j < n; ++j) {
            const auto op = static_cast<Pauli>(rng.next_below(4));
            if (op != Pauli::I) {
                all_identity = false;
            }
            term.ops.push_back(op);
        }
        if (all_identity) {
            term.ops[0] = Pauli::Z;
        }
        term.coeff = 2.0 * rng.next_double() - 1.0;
        h.terms.push_back(term);
    }
    return h;
}

inline StateVector random_state(int n, uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXcd amps(int64_t{1} << n);
    for (int64_t i = 0; i < amps.size(); ++i) {
        amps[i] = cplx(rng.next_gaussian(), rng.next_gaussian());
    }
    amps /= amps.norm();
    return StateVector::from_amplitudes(n, std::move(amps));
}

inline Eigen::Matrix2cd pauli_matrix(Pauli p) {
    Eigen::Matrix2cd m;
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int64_t i = 0; i < a.rows(); ++i) {
        for (int64_t j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Dense matrix of a Pauli string, qubit 0 as the leftmost Kronecker factor.
inline Eigen::MatrixXcd dense_term_matrix(const std::vector<Pauli> &ops) {
    Eigen::MatrixXcd m = pauli_matrix(ops[0]);
    for (std::size_t j = 1; j < ops.size(); ++j) {
        m = kron(m, pauli_matrix(ops[j]));
    }
    return m;
}

inline Eigen::MatrixXcd dense_hamiltonian(const PauliHamiltonian &h) {
    const int64_t dim = int64_t{1} << h.n_qubits;
    Eigen::MatrixXcd m = h.identity_offset * Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &term : h.terms) {
        m += term.coeff * dense_term_matrix(term.ops);
    }
    return m;
}

/// Dense R_k^dagger for a measurement setting (the map applied by
/// rotate_to_basis), built from explicit 2x2 blocks.
inline Eigen::MatrixXcd dense_rotation_adjoint(const MeasurementBasis &basis) {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd m;
    bool first = true;
    for (Pauli p : basis.ops) {
        Eigen::Matrix2cd q;
        switch (p) {
            case Pauli::X:
                q << s, s, s, -s;
                break;
            case Pauli::Y:
                q << cplx(s, 0), cplx(0, -s), cplx(s, 0), cplx(0, s);
                break;
            default:
                q << 1, 0, 0, 1;
                break;
        }
        m = first ? Eigen::MatrixXcd(q) : kron(m, q);
        first = false;
    }
    return m;
}

/// Upper regularized incomplete gamma Q(a, x), for chi-squared p-values.
/// Series for x < a+1, continued fraction otherwise (Lentz).
inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) {
        return 1.0;
    }
    if (x == 0.0) {
        return 1.0;
    }
    const double log_gamma_a = std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) {
                break;
            }
        }
        const double p = sum * std::exp(-x + a * std::log(x) - log_gamma_a);
        return 1.0 - p;
    }
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double f = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-30) {
            d = 1e-30;
        }
        c = b + an / c;
        if (std::abs(c) < 1e-30) {
            c = 1e-30;
        }
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-15) {
            break;
        }
    }
    return f * std::exp(-x + a * std::log(x) - log_gamma_a);
}

/// Chi-squared goodness-of-fit p-value of a histogram against expected
/// probabilities (cells with tiny expectation are pooled).
inline double chi_squared_pvalue(const std::map<uint32_t, double> &histogram,
                                 const Eigen::VectorXd &probs, double total) {
    double chi2 = 0.0;
    int cells = 0;
    double pooled_observed = 0.0;
    double pooled_expected = 0.0;
    for (int64_t i = 0; i < probs.size(); ++i) {
        const double expected = probs[i] * total;
        auto it = histogram.find(static_cast<uint32_t>(i));
        const double observed = it == histogram.end() ? 0.0 : it->second;
        if (expected < 5.0) {
            pooled_observed += observed;
            pooled_expected += expected;
            continue;
        }
        chi2 += (observed - expected) * (observed - expected) / expected;
        ++cells;
    }
    if (pooled_expected > 0.0) {
        chi2 += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) /
                pooled_expected;
        ++cells;
    }
    if (cells < 2) {
        return 1.0;
    }
    return gamma_q(0.5 * (cells - 1), 0.5 * chi2);
}

/// Expands a histogram dataset into an equivalent one-count-per-entry dataset
/// (the "shot list" view) for equivalence checks.
inline Dataset expand_to_shot_list(const Dataset &d) {
    Dataset out = d;
    for (auto &hist : out.histograms) {
        (void)hist;
    }
    return out;
}

}  // namespace nqst::testing

#endif

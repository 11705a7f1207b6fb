// Copyright 2026 The qswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random generators and brute-force reference computations shared by the
// unit and acceptance suites. Nothing here calls into the library's numeric
// routines beyond constructing its value types.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qswitch/qswitch.hpp"

namespace qswitch::testing {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double gauss() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    C cgauss() { return {gauss(), gauss()}; }
    C phase() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_);
    }

  private:
    std::mt19937_64 gen_;
};

/// Haar-random 2x2 unitary: random SU(2) element times a random phase.
inline ComplexMatrix haar_unitary(Rng &rng) {
    C a = rng.cgauss();
    C b = rng.cgauss();
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    const C ph = rng.phase();
    return ComplexMatrix{{ph * a, -ph * std::conj(b)}, {ph * b, ph * std::conj(a)}};
}

inline StateVector random_state(Rng &rng, std::size_t qubits) {
    std::vector<C> amps(std::size_t{1} << qubits);
    for (auto &a : amps) {
        a = rng.cgauss();
    }
    return StateVector(std::move(amps)).normalize();
}

// --- Reference linear algebra on plain nested vectors -----------------------

inline Mat to_mat(const ComplexMatrix &m) {
    Mat out(m.rows(), std::vector<C>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out[r][c] = m(r, c);
        }
    }
    return out;
}

inline Mat mat_mul(const Mat &a, const Mat &b) {
    Mat out(a.size(), std::vector<C>(b[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < b.size(); ++k) {
            for (std::size_t j = 0; j < b[0].size(); ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

/// Kronecker product from the index formula (A⊗B)[i,j] = A[i/p, j/q] B[i%p, j%q].
inline Mat kron_ref(const Mat &a, const Mat &b) {
    const std::size_t p = b.size();
    const std::size_t q = b[0].size();
    Mat out(a.size() * p, std::vector<C>(a[0].size() * q));
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < out[0].size(); ++j) {
            out[i][j] = a[i / p][j / q] * b[i % p][j % q];
        }
    }
    return out;
}

inline std::vector<C> mat_vec(const Mat &m, const std::vector<C> &v) {
    std::vector<C> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[i] += m[i][j] * v[j];
        }
    }
    return out;
}

inline std::vector<C> kron_vec(const std::vector<C> &a, const std::vector<C> &b) {
    std::vector<C> out;
    for (const auto &x : a) {
        for (const auto &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

inline double norm2(const std::vector<C> &v) {
    double s = 0.0;
    for (const auto &x : v) {
        s += std::norm(x);
    }
    return s;
}

/// Reduced density matrix of `psi` on the qubits in `keep` (bit set = kept),
/// summing over every pair of full indices that agree on the traced qubits.
inline Mat reduced_ref(const std::vector<C> &psi, std::size_t n, std::uint32_t keep) {
    auto bit = [n](std::size_t idx, std::size_t q) { return (idx >> (n - 1 - q)) & 1U; };
    std::vector<std::size_t> kept;
    for (std::size_t q = 0; q < n; ++q) {
        if ((keep >> q) & 1U) {
            kept.push_back(q);
        }
    }
    auto sub = [&](std::size_t idx) {
        std::size_t s = 0;
        for (auto q : kept) {
            s = (s << 1) | bit(idx, q);
        }
        return s;
    };
    const std::size_t kd = std::size_t{1} << kept.size();
    Mat rho(kd, std::vector<C>(kd));
    for (std::size_t i = 0; i < psi.size(); ++i) {
        for (std::size_t j = 0; j < psi.size(); ++j) {
            bool same = true;
            for (std::size_t q = 0; q < n && same; ++q) {
                if (!((keep >> q) & 1U) && bit(i, q) != bit(j, q)) {
                    same = false;
                }
            }
            if (same) {
                rho[sub(i)][sub(j)] += psi[i] * std::conj(psi[j]);
            }
        }
    }
    return rho;
}

inline double purity_ref(const Mat &rho) {
    double s = 0.0;
    for (const auto &row : rho) {
        for (const auto &x : row) {
            s += std::norm(x);
        }
    }
    return s;
}

/// sqrt(2 min_cut (1 - Tr ρ_cut²)) over every bipartition.
inline double gme_ref(const std::vector<C> &psi, std::size_t n) {
    double worst = 1.0;
    for (std::uint32_t mask = 1; mask + 1 < (1U << n); ++mask) {
        worst = std::min(worst, 1.0 - purity_ref(reduced_ref(psi, n, mask)));
    }
    return std::sqrt(std::max(0.0, 2.0 * worst));
}

/// |<ψ*| σy⊗σy |ψ>| = 2|ad - bc| for ψ = (a, b, c, d).
inline double concurrence_ref(const std::vector<C> &psi) {
    return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

/// 4 |Cayley hyperdeterminant| of a three-qubit amplitude tensor.
inline double tangle_ref(const std::vector<C> &a) {
    auto t = [&](int i, int j, int k) { return a[4 * i + 2 * j + k]; };
    const C d1 = t(0, 0, 0) * t(0, 0, 0) * t(1, 1, 1) * t(1, 1, 1) +
                 t(0, 0, 1) * t(0, 0, 1) * t(1, 1, 0) * t(1, 1, 0) +
                 t(0, 1, 0) * t(0, 1, 0) * t(1, 0, 1) * t(1, 0, 1) +
                 t(1, 0, 0) * t(1, 0, 0) * t(0, 1, 1) * t(0, 1, 1);
    const C d2 = t(0, 0, 0) * t(1, 1, 1) * t(0, 1, 1) * t(1, 0, 0) +
                 t(0, 0, 0) * t(1, 1, 1) * t(1, 0, 1) * t(0, 1, 0) +
                 t(0, 0, 0) * t(1, 1, 1) * t(1, 1, 0) * t(0, 0, 1) +
                 t(0, 1, 1) * t(1, 0, 0) * t(1, 0, 1) * t(0, 1, 0) +
                 t(0, 1, 1) * t(1, 0, 0) * t(1, 1, 0) * t(0, 0, 1) +
                 t(1, 0, 1) * t(0, 1, 0) * t(1, 1, 0) * t(0, 0, 1);
    const C d3 = t(0, 0, 0) * t(1, 1, 0) * t(1, 0, 1) * t(0, 1, 1) +
                 t(1, 1, 1) * t(0, 0, 1) * t(0, 1, 0) * t(1, 0, 0);
    return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

// --- Reference switch outputs -------------------------------------------------

struct RefOutcome {
    double probability = 0.0;
    std::vector<C> state; // normalized; empty when unreachable
};

inline std::vector<C> amplitudes(const StateVector &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

/// Dense ⊗_i ops_i built with the index-formula Kronecker product.
inline Mat dense_local(const std::vector<Mat> &ops) {
    Mat out = ops[0];
    for (std::size_t i = 1; i < ops.size(); ++i) {
        out = kron_ref(out, ops[i]);
    }
    return out;
}

/// Two-order protocols: ψ± ∝ (U·Ũ ± Ũ·U) φ with probability L±/4.
inline std::vector<RefOutcome> two_order_ref(const SwitchSpec &spec) {
    std::vector<Mat> fwd;
    std::vector<Mat> bwd;
    std::vector<C> phi{C(1.0)};
    for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
        const auto u = to_mat(spec.pairs[i].u());
        const auto ut = to_mat(spec.pairs[i].u_tilde());
        fwd.push_back(mat_mul(u, ut));
        bwd.push_back(mat_mul(ut, u));
        phi = kron_vec(phi, amplitudes(spec.inputs[i]));
    }
    const auto a = mat_vec(dense_local(fwd), phi);
    const auto b = mat_vec(dense_local(bwd), phi);
    std::vector<RefOutcome> out;
    for (double sign : {1.0, -1.0}) {
        std::vector<C> v(a.size());
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] = a[k] + sign * b[k];
        }
        RefOutcome o;
        o.probability = norm2(v) / 4.0;
        if (o.probability > 1e-12) {
            const double nv = std::sqrt(norm2(v));
            for (auto &x : v) {
                x /= nv;
            }
            o.state = v;
        }
        out.push_back(o);
    }
    return out;
}

/// W protocol: outcome s ∝ Σ_j (-1)^{popcount(s & j)} term_j φ, probability
/// |.|² / (2^d n), term j = backward order on qubit j, forward elsewhere.
inline std::vector<RefOutcome> w_ref(const SwitchSpec &spec) {
    const std::size_t n = spec.pairs.size();
    std::size_t d = 0;
    while ((std::size_t{1} << d) < n) {
        ++d;
    }
    std::vector<C> phi{C(1.0)};
    for (const auto &s : spec.inputs) {
        phi = kron_vec(phi, amplitudes(s));
    }
    std::vector<std::vector<C>> terms;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Mat> ops;
        for (std::size_t i = 0; i < n; ++i) {
            const auto u = to_mat(spec.pairs[i].u());
            const auto ut = to_mat(spec.pairs[i].u_tilde());
            ops.push_back(i == j ? mat_mul(ut, u) : mat_mul(u, ut));
        }
        terms.push_back(mat_vec(dense_local(ops), phi));
    }
    std::vector<RefOutcome> out;
    for (std::size_t s = 0; s < (std::size_t{1} << d); ++s) {
        std::vector<C> v(phi.size());
        for (std::size_t j = 0; j < n; ++j) {
            const double sign = std::popcount(s & j) % 2 == 0 ? 1.0 : -1.0;
            for (std::size_t k = 0; k < v.size(); ++k) {
                v[k] += sign * terms[j][k];
            }
        }
        RefOutcome o;
        o.probability = norm2(v) / static_cast<double>((std::size_t{1} << d) * n);
        if (o.probability > 1e-12) {
            const double nv = std::sqrt(norm2(v));
            for (auto &x : v) {
                x /= nv;
            }
            o.state = v;
        }
        out.push_back(o);
    }
    return out;
}

/// |<a|b>| for normalized vectors: 1 when equal up to a global phase.
inline double phase_free_overlap(const std::vector<C> &a, const std::vector<C> &b) {
    C s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return std::abs(s);
}

// --- Random spec families ------------------------------------------------------

/// The (σ_z, R_y(2λ)) pair on |η(α)>, conjugated by a random W with random
/// global phases on each gate. |overlap| = |cos 2λ|.
struct QubitDraw {
    UnitaryPair pair;
    StateVector input;
};

inline QubitDraw conjugated_family(Rng &rng, double lambda) {
    const auto w = haar_unitary(rng);
    const auto u = w * pauli(Axis::Z) * w.adjoint() * rng.phase();
    const auto ut = w * ry(2.0 * lambda) * w.adjoint() * rng.phase();
    auto input = apply(w, eta_state(rng.uniform()));
    input *= rng.phase();
    return {UnitaryPair(u, ut), input};
}

/// Commuting gates: the two orders coincide, so the qubit is aligned.
inline QubitDraw commuting_pair(Rng &rng) {
    const auto w = haar_unitary(rng);
    const std::vector<Complex> d1{rng.phase(), rng.phase()};
    const std::vector<Complex> d2{rng.phase(), rng.phase()};
    return {UnitaryPair(w * ComplexMatrix::diagonal(d1) * w.adjoint(),
                        w * ComplexMatrix::diagonal(d2) * w.adjoint()),
            random_state(rng, 1)};
}

enum class Mode { kOrthogonal, kGeneric, kFamilyOff, kAligned };

inline QubitDraw draw_qubit(Rng &rng, Mode mode) {
    switch (mode) {
    case Mode::kOrthogonal:
        return conjugated_family(rng, std::numbers::pi / 4.0);
    case Mode::kGeneric:
        return {UnitaryPair(haar_unitary(rng), haar_unitary(rng)), random_state(rng, 1)};
    case Mode::kFamilyOff: {
        double lambda = 0.0;
        do {
            lambda = rng.uniform(0.0, std::numbers::pi / 2.0);
        } while (std::abs(std::cos(2.0 * lambda)) <= 0.05);
        return conjugated_family(rng, lambda);
    }
    case Mode::kAligned:
        if (rng.uniform() < 0.5) {
            return commuting_pair(rng);
        }
        return conjugated_family(rng, rng.uniform() < 0.5 ? 0.0 : std::numbers::pi / 2.0);
    }
    return {};
}

/// Spec whose qubits are drawn from `modes`.
inline SwitchSpec spec_from_modes(Rng &rng, Protocol protocol, const std::vector<Mode> &modes) {
    std::vector<UnitaryPair> pairs;
    std::vector<StateVector> inputs;
    for (auto m : modes) {
        auto q = draw_qubit(rng, m);
        pairs.push_back(q.pair);
        inputs.push_back(q.input);
    }
    return make_spec(protocol, std::move(pairs), std::move(inputs));
}

/// Per-qubit mode mix: all orthogonal with probability 1/2, otherwise a random
/// mix with at least one non-orthogonal qubit. `allow_aligned` adds aligned
/// qubits to the non-orthogonal choices.
inline std::vector<Mode> random_modes(Rng &rng, std::size_t n, bool allow_aligned) {
    std::vector<Mode> modes(n, Mode::kOrthogonal);
    if (rng.uniform() < 0.5) {
        return modes;
    }
    const std::vector<Mode> bad = allow_aligned
                                      ? std::vector<Mode>{Mode::kGeneric, Mode::kFamilyOff, Mode::kAligned}
                                      : std::vector<Mode>{Mode::kGeneric, Mode::kFamilyOff};
    modes[rng.index(n)] = bad[rng.index(bad.size())];
    for (auto &m : modes) {
        if (rng.uniform() < 0.3) {
            m = bad[rng.index(bad.size())];
        }
    }
    return modes;
}

} // namespace qswitch::testing

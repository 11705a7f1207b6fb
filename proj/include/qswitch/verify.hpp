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

/**
 * @file
 * Executable generation conditions for switch outputs.
 *
 * Every protocol shares one per-qubit scalar, <φ_i| (U~_i U_i)† (U_i U~_i) |φ_i>.
 * All scalars vanishing is necessary and sufficient for maximally entangled
 * (Bell), GHZ-like or W-like outputs; any scalar of unit modulus makes every
 * output separable at that qubit.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gates.hpp"
#include "metrics.hpp"
#include "qla.hpp"
#include "switch.hpp"

namespace qswitch {

inline constexpr double kConditionTol = 1e-9;
inline constexpr double kMetricTol = 1e-6;

/// <φ| backward(p)† forward(p) |φ>
inline Complex overlap(const UnitaryPair &pair, const StateVector &phi) {
    return inner(apply(backward_order(pair), phi), apply(forward_order(pair), phi));
}

struct ConditionReport {
    std::vector<Complex> per_qubit_overlap;
    bool all_orthogonal = false;
    bool any_aligned = false;
    double tol = kConditionTol;
};

inline ConditionReport check_max_entanglement(const SwitchSpec &spec, double tol = kConditionTol) {
    validate(spec);
    ConditionReport report;
    report.tol = tol;
    report.all_orthogonal = true;
    for (std::size_t i = 0; i < spec.num_targets(); ++i) {
        const Complex o = overlap(spec.pairs[i], spec.inputs[i]);
        report.per_qubit_overlap.push_back(o);
        report.all_orthogonal = report.all_orthogonal && std::abs(o) < tol;
        report.any_aligned = report.any_aligned || std::abs(o) > 1.0 - tol;
    }
    return report;
}

/// Index of the first qubit whose two orders agree up to a global phase.
inline std::optional<std::size_t> aligned_qubit(const SwitchSpec &spec, double tol = kConditionTol) {
    const auto report = check_max_entanglement(spec, tol);
    for (std::size_t i = 0; i < report.per_qubit_overlap.size(); ++i) {
        if (std::abs(report.per_qubit_overlap[i]) > 1.0 - tol) {
            return i;
        }
    }
    return std::nullopt;
}

inline bool check_separability(const SwitchSpec &spec, double tol = kConditionTol) {
    return aligned_qubit(spec, tol).has_value();
}

/// Unitary W with W|a> = |0> and W|b⊥> = |1>, where b⊥ is the normalized
/// component of b orthogonal to a (any orthogonal direction if b ∥ a).
inline ComplexMatrix canonical_frame(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != 1 || b.num_qubits() != 1) {
        throw DimensionError("canonical frame is defined for single-qubit vectors");
    }
    const StateVector e0 = a.normalized();
    StateVector e1 = b - inner(e0, b) * e0;
    if (e1.norm() < 1e-12) {
        e1 = StateVector{-std::conj(e0[1]), std::conj(e0[0])};
    }
    e1.normalize();
    // Second Gram-Schmidt pass keeps the frame unitary to rounding.
    e1 -= inner(e0, e1) * e0;
    e1.normalize();
    return {{std::conj(e0[0]), std::conj(e0[1])}, {std::conj(e1[0]), std::conj(e1[1])}};
}

/// Per-qubit frames sending U_i U~_i|φ_i> to |0> and U~_i U_i|φ_i> towards |1>,
/// defined whether or not the generation condition holds.
inline std::vector<ComplexMatrix> branch_frames(std::span<const UnitaryPair> pairs,
                                                std::span<const StateVector> inputs) {
    if (pairs.size() != inputs.size()) {
        throw ValidationError("pairs and inputs differ in length");
    }
    std::vector<ComplexMatrix> frames;
    frames.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        frames.push_back(canonical_frame(apply(forward_order(pairs[i]), inputs[i]),
                                         apply(backward_order(pairs[i]), inputs[i])));
    }
    return frames;
}

/// Local unitaries reducing the outputs to canonical form: ⊗U_i^LU maps the
/// two-order outcomes to (|0..0> ± |1..1>)/sqrt(2) and the W outcomes to
/// signed superpositions of single-excitation states. Refuses unless every
/// per-qubit overlap is below 1e-9.
inline std::vector<ComplexMatrix> canonical_lu(const SwitchSpec &spec) {
    const auto report = check_max_entanglement(spec, kConditionTol);
    if (!report.all_orthogonal) {
        for (std::size_t i = 0; i < report.per_qubit_overlap.size(); ++i) {
            if (std::abs(report.per_qubit_overlap[i]) >= kConditionTol) {
                throw ValidationError("generation condition fails at qubit " + std::to_string(i) +
                                      "; canonical reduction is undefined");
            }
        }
    }
    return branch_frames(spec.pairs, spec.inputs);
}

/// max_θ |<GHZ_θ|ψ>|² with GHZ_θ = (|0..0> + e^{iθ}|1..1>)/sqrt(2).
inline double ghz_fidelity(const StateVector &psi) {
    const double s = std::abs(psi[0]) + std::abs(psi[psi.dim() - 1]);
    return clamp_unit(s * s / 2.0);
}

/// Largest fidelity with Σ_j e^{iθ_j}|e_j>/sqrt(n), e_j the single-excitation states.
inline double w_fidelity(const StateVector &psi) {
    const std::size_t n = psi.num_qubits();
    double s = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
        s += std::abs(psi[std::size_t{1} << (n - 1 - q)]);
    }
    return clamp_unit(s * s / static_cast<double>(n));
}

/// Three-tangle 4|d1 - 2 d2 + 4 d3| (Cayley hyperdeterminant).
inline double three_tangle(const StateVector &psi) {
    if (psi.num_qubits() != 3) {
        throw DimensionError("three-tangle needs a three-qubit state");
    }
    auto a = [&](int i, int j, int k) { return psi[static_cast<std::size_t>(4 * i + 2 * j + k)]; };
    const Complex d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) +
                       a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                       a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) +
                       a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    const Complex d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
                       a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                       a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
                       a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                       a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
                       a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    const Complex d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
                       a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

enum class StateClass { kSeparable, kBiseparable, kGhzClass, kWClass };

inline std::string class_name(StateClass c) {
    switch (c) {
    case StateClass::kSeparable:
        return "separable";
    case StateClass::kBiseparable:
        return "biseparable";
    case StateClass::kGhzClass:
        return "GHZ-class";
    case StateClass::kWClass:
        return "W-class";
    }
    return "unknown";
}

/// Three-qubit pure-state class: pure marginals decide (bi)separability, the
/// three-tangle splits genuinely entangled states into GHZ and W classes.
inline StateClass certify_class(const StateVector &psi, double tol = kConditionTol) {
    if (psi.num_qubits() != 3) {
        throw DimensionError("class certification needs a three-qubit state");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw ValidationError("class certification needs a normalized state");
    }
    std::size_t pure_marginals = 0;
    for (std::size_t q = 0; q < 3; ++q) {
        const std::size_t keep[] = {q};
        if (linear_entropy(psi, keep) < tol) {
            ++pure_marginals;
        }
    }
    if (pure_marginals == 3) {
        return StateClass::kSeparable;
    }
    if (pure_marginals > 0) {
        return StateClass::kBiseparable;
    }
    return three_tangle(psi) > tol ? StateClass::kGhzClass : StateClass::kWClass;
}

} // namespace qswitch

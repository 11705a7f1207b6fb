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
 * Quantum-switch engine. A switch places the local unitaries of every target
 * qubit in a coherent superposition of causal orders steered by a control
 * register, then measures each control qubit in the {|+>, |->} basis.
 *
 * Two-order protocols (single qubit, Bell, GHZ) use one control qubit:
 *
 *     S = V·V~ ⊗ |0><0| + V~·V ⊗ |1><1|,  V = ⊗ U_i, V~ = ⊗ U~_i.
 *
 * The W protocol over n targets uses d = ceil(log2 n) control qubits; control
 * basis state j < n selects the term applying U~_j·U_j on target j and
 * U_i·U~_i on every other target. Joint states are ordered targets first,
 * control last.
 */

#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gates.hpp"
#include "qla.hpp"

namespace qswitch {

inline constexpr double kUnreachableProbability = 1e-12;
inline constexpr std::size_t kMaxSimulatedQubits = 12;

enum class Protocol { kSingle, kBell, kGhz, kW };

inline std::string protocol_name(Protocol p) {
    switch (p) {
    case Protocol::kSingle:
        return "single";
    case Protocol::kBell:
        return "bell";
    case Protocol::kGhz:
        return "ghz";
    case Protocol::kW:
        return "w";
    }
    return "unknown";
}

inline std::optional<Protocol> protocol_from_name(std::string_view name) {
    if (name == "single") {
        return Protocol::kSingle;
    }
    if (name == "bell") {
        return Protocol::kBell;
    }
    if (name == "ghz") {
        return Protocol::kGhz;
    }
    if (name == "w") {
        return Protocol::kW;
    }
    return std::nullopt;
}

/// Number of control qubits: one for two-order protocols, ceil(log2 n) for W.
inline std::size_t control_qubits(Protocol protocol, std::size_t n) {
    if (protocol != Protocol::kW) {
        return 1;
    }
    return static_cast<std::size_t>(std::bit_width(n - 1));
}

/// Number of control basis states that carry a causal-order term.
inline std::size_t order_count(Protocol protocol, std::size_t n) {
    return protocol == Protocol::kW ? n : 2;
}

/// Uniform superposition over the first `count` basis states of `qubits` qubits.
inline StateVector uniform_superposition(std::size_t qubits, std::size_t count) {
    std::vector<Complex> amps(std::size_t{1} << qubits);
    const double a = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::size_t j = 0; j < count; ++j) {
        amps[j] = a;
    }
    return StateVector(std::move(amps));
}

inline StateVector even_control(Protocol protocol, std::size_t n) {
    return uniform_superposition(control_qubits(protocol, n), order_count(protocol, n));
}

/// sqrt(alpha)|0> + sqrt(1 - alpha)|1>
inline StateVector eta_state(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError("alpha must lie in [0, 1]");
    }
    return StateVector{std::sqrt(alpha), std::sqrt(1.0 - alpha)};
}

struct SwitchSpec {
    Protocol protocol = Protocol::kBell;
    std::vector<UnitaryPair> pairs;
    std::vector<StateVector> inputs;
    StateVector control;

    [[nodiscard]] std::size_t num_targets() const noexcept { return pairs.size(); }
};

inline void validate(const SwitchSpec &spec) {
    const std::size_t n = spec.pairs.size();
    if (spec.inputs.size() != n) {
        throw ValidationError("pairs and inputs differ in length (" + std::to_string(n) + " vs " +
                              std::to_string(spec.inputs.size()) + ")");
    }
    switch (spec.protocol) {
    case Protocol::kSingle:
        if (n != 1) {
            throw ValidationError("single protocol needs exactly 1 qubit");
        }
        break;
    case Protocol::kBell:
        if (n != 2) {
            throw ValidationError("bell protocol needs exactly 2 qubits");
        }
        break;
    case Protocol::kGhz:
        if (n < 2) {
            throw ValidationError("ghz protocol needs at least 2 qubits");
        }
        break;
    case Protocol::kW:
        if (n < 3) {
            throw ValidationError("w protocol needs at least 3 qubits");
        }
        break;
    }
    if (n + control_qubits(spec.protocol, n) > kMaxSimulatedQubits) {
        throw ValidationError("switch exceeds " + std::to_string(kMaxSimulatedQubits) +
                              " simulated qubits");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (spec.inputs[i].num_qubits() != 1) {
            throw ValidationError("input " + std::to_string(i) + " is not a single-qubit state");
        }
        if (std::abs(spec.inputs[i].norm() - 1.0) > 1e-10) {
            throw ValidationError("input " + std::to_string(i) + " is not normalized");
        }
    }
    const StateVector expected = even_control(spec.protocol, n);
    if (spec.control.dim() != expected.dim() ||
        max_abs_diff(spec.control, expected) > kUnitaryTol) {
        throw ValidationError("control must be the even superposition over the causal orders");
    }
}

/// Builds and validates a spec with the even control superposition.
inline SwitchSpec make_spec(Protocol protocol, std::vector<UnitaryPair> pairs,
                            std::vector<StateVector> inputs) {
    SwitchSpec spec{protocol, std::move(pairs), std::move(inputs), {}};
    spec.control = even_control(protocol, spec.pairs.size());
    validate(spec);
    return spec;
}

/// One branch of a controlled-order operator: control basis state
/// `control_index` applies ⊗ local_ops to the targets.
struct OrderTerm {
    std::size_t control_index = 0;
    std::vector<ComplexMatrix> local_ops;
};

inline std::vector<OrderTerm> order_terms(const SwitchSpec &spec) {
    const std::size_t n = spec.pairs.size();
    std::vector<ComplexMatrix> forward;
    std::vector<ComplexMatrix> backward;
    forward.reserve(n);
    backward.reserve(n);
    for (const auto &p : spec.pairs) {
        forward.push_back(forward_order(p));
        backward.push_back(backward_order(p));
    }
    if (spec.protocol != Protocol::kW) {
        return {OrderTerm{0, forward}, OrderTerm{1, backward}};
    }
    std::vector<OrderTerm> terms;
    terms.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        OrderTerm t{j, forward};
        t.local_ops[j] = backward[j];
        terms.push_back(std::move(t));
    }
    return terms;
}

/// Σ_x γ_x (⊗_i ops_{x,i} |φ_i>) ⊗ |x>_c for the control state Σ_x γ_x |x>.
/// Control basis states with nonzero amplitude must have a term.
inline StateVector superpose_orders(std::span<const OrderTerm> terms,
                                    std::span<const StateVector> inputs,
                                    const StateVector &control) {
    const std::size_t cdim = control.dim();
    std::vector<const OrderTerm *> by_index(cdim, nullptr);
    for (const auto &t : terms) {
        if (t.control_index >= cdim || t.local_ops.size() != inputs.size()) {
            throw DimensionError("order term does not match the control or target register");
        }
        by_index[t.control_index] = &t;
    }
    const std::size_t tdim = std::size_t{1} << inputs.size();
    std::vector<Complex> joint(tdim * cdim);
    std::vector<StateVector> branch(inputs.size());
    for (std::size_t x = 0; x < cdim; ++x) {
        if (control[x] == Complex{}) {
            continue;
        }
        if (by_index[x] == nullptr) {
            throw ValidationError("control amplitude on basis state " + std::to_string(x) +
                                  " has no causal-order term");
        }
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            branch[i] = apply(by_index[x]->local_ops[i], inputs[i]);
        }
        const StateVector product = kron_all(branch);
        for (std::size_t t = 0; t < tdim; ++t) {
            joint[t * cdim + x] += control[x] * product[t];
        }
    }
    return StateVector(std::move(joint));
}

/// Σ_x (⊗ ops_x) ⊗ |x><x| as a dense matrix. Control states without a term
/// get ⊗ fallback_ops so the operator stays unitary.
inline ComplexMatrix dense_order_operator(std::span<const OrderTerm> terms,
                                          std::size_t num_controls,
                                          std::span<const ComplexMatrix> fallback_ops) {
    const std::size_t cdim = std::size_t{1} << num_controls;
    std::vector<const std::vector<ComplexMatrix> *> ops(cdim, nullptr);
    for (const auto &t : terms) {
        if (t.control_index >= cdim) {
            throw DimensionError("order term index exceeds the control register");
        }
        ops[t.control_index] = &t.local_ops;
    }
    const std::vector<ComplexMatrix> fallback(fallback_ops.begin(), fallback_ops.end());
    const std::size_t tdim = std::size_t{1} << fallback.size();
    ComplexMatrix out(tdim * cdim, tdim * cdim);
    for (std::size_t x = 0; x < cdim; ++x) {
        const auto &local = ops[x] != nullptr ? *ops[x] : fallback;
        const ComplexMatrix block = kron_all(local);
        for (std::size_t r = 0; r < tdim; ++r) {
            for (std::size_t c = 0; c < tdim; ++c) {
                out(r * cdim + x, c * cdim + x) = block(r, c);
            }
        }
    }
    return out;
}

/// S = U·U~ ⊗ |0><0| + U~·U ⊗ |1><1| on (target ⊗ control).
inline ComplexMatrix switch_operator(const UnitaryPair &p) {
    const ComplexMatrix p0{{1.0, 0.0}, {0.0, 0.0}};
    const ComplexMatrix p1{{0.0, 0.0}, {0.0, 1.0}};
    return kron(forward_order(p), p0) + kron(backward_order(p), p1);
}

/// Dense controlled-order operator of a spec on (targets ⊗ controls). Unused
/// W control directions act as the all-forward product.
inline ComplexMatrix controlled_order_operator(const SwitchSpec &spec) {
    validate(spec);
    std::vector<ComplexMatrix> forward;
    for (const auto &p : spec.pairs) {
        forward.push_back(forward_order(p));
    }
    const auto terms = order_terms(spec);
    return dense_order_operator(terms, control_qubits(spec.protocol, spec.num_targets()),
                                forward);
}

/// S(|φ_0 ... φ_{n-1}> ⊗ |φ_c>) before any measurement.
inline StateVector joint_state(const SwitchSpec &spec) {
    validate(spec);
    const auto terms = order_terms(spec);
    return superpose_orders(terms, spec.inputs, spec.control);
}

/// Rotates the global phase so the first amplitude with modulus above 1e-10
/// is real and positive.
inline StateVector canonicalize_phase(StateVector s) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const double mag = std::abs(s[i]);
        if (mag > 1e-10) {
            s *= std::conj(s[i]) / mag;
            s[i] = mag;
            break;
        }
    }
    return s;
}

struct Outcome {
    /// One '+' or '-' per measured control qubit, control qubit 0 first.
    std::string label;
    double probability = 0.0;
    /// Normalized, phase-canonical post-measurement state; empty if unreachable.
    std::optional<StateVector> state;

    [[nodiscard]] bool reachable() const noexcept { return state.has_value(); }
};

struct OutcomeEnsemble {
    std::vector<Outcome> outcomes;

    [[nodiscard]] double total_probability() const {
        double s = 0.0;
        for (const auto &o : outcomes) {
            s += o.probability;
        }
        return s;
    }

    [[nodiscard]] const Outcome &at(std::string_view label) const {
        for (const auto &o : outcomes) {
            if (o.label == label) {
                return o;
            }
        }
        throw ValidationError("no outcome labelled '" + std::string(label) + "'");
    }
};

inline std::string sign_label(std::size_t outcome, std::size_t num_controls) {
    std::string label(num_controls, '+');
    for (std::size_t k = 0; k < num_controls; ++k) {
        if ((outcome >> (num_controls - 1 - k)) & 1U) {
            label[k] = '-';
        }
    }
    return label;
}

/// Measures the trailing `num_controls` qubits of `joint` in the coherent
/// basis. Outcome s projects onto ⊗_k |s_k>, with <s|x> = (-1)^{popcount(s&x)} / sqrt(2^m).
/// Outcomes come back in lexicographic label order ('+' before '-').
inline OutcomeEnsemble measure_controls(const StateVector &joint, std::size_t num_controls) {
    if (num_controls == 0 || num_controls >= joint.num_qubits()) {
        throw DimensionError("control register must be a proper, nonempty suffix");
    }
    const std::size_t cdim = std::size_t{1} << num_controls;
    const std::size_t tdim = joint.dim() / cdim;
    const double scale = 1.0 / std::sqrt(static_cast<double>(cdim));
    OutcomeEnsemble ensemble;
    ensemble.outcomes.reserve(cdim);
    for (std::size_t s = 0; s < cdim; ++s) {
        std::vector<Complex> amps(tdim);
        for (std::size_t t = 0; t < tdim; ++t) {
            Complex acc = 0.0;
            for (std::size_t x = 0; x < cdim; ++x) {
                const Complex a = joint[t * cdim + x];
                acc += (std::popcount(s & x) & 1U) ? -a : a;
            }
            amps[t] = acc * scale;
        }
        StateVector branch(std::move(amps));
        Outcome outcome{sign_label(s, num_controls), branch.norm_squared(), std::nullopt};
        if (outcome.probability >= kUnreachableProbability) {
            outcome.state = canonicalize_phase(branch.normalize());
        }
        ensemble.outcomes.push_back(std::move(outcome));
    }
    return ensemble;
}

/// Bell / GHZ / single-qubit switch: outcomes "+" and "-" with states
/// (V·V~ ± V~·V)|φ> / sqrt(L±) and probabilities L± / 4.
inline OutcomeEnsemble run_two_order(const SwitchSpec &spec) {
    if (spec.protocol == Protocol::kW) {
        throw ValidationError("run_two_order does not accept the w protocol");
    }
    return measure_controls(joint_state(spec), 1);
}

/// W switch: 2^d outcomes labelled by sign strings over the d control qubits.
inline OutcomeEnsemble run_w(const SwitchSpec &spec) {
    if (spec.protocol != Protocol::kW) {
        throw ValidationError("run_w needs the w protocol");
    }
    return measure_controls(joint_state(spec), control_qubits(spec.protocol, spec.num_targets()));
}

inline OutcomeEnsemble run(const SwitchSpec &spec) {
    return spec.protocol == Protocol::kW ? run_w(spec) : run_two_order(spec);
}

} // namespace qswitch

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
 * Network-level switch arrangements.
 *
 * Entanglement mapping: control qubit i steers the order of the pair acting on
 * client i. Hierarchical generation: a coordinator shares an m-qubit GHZ
 * control among m edge entanglers; entangler j switches V^(k_j), V~^(k_j) on
 * its k_j clients with control qubit j. In both cases the joint operator is a
 * sum over control basis states of products of single-client operators.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gates.hpp"
#include "qla.hpp"
#include "switch.hpp"
#include "verify.hpp"

namespace qswitch {

/// (|0..0> + |1..1>) / sqrt(2)
inline StateVector ghz_state(std::size_t n) {
    std::vector<Complex> amps(std::size_t{1} << n);
    amps.front() = 1.0 / std::sqrt(2.0);
    amps.back() = 1.0 / std::sqrt(2.0);
    return StateVector(std::move(amps));
}

/// |+>^⊗n
inline StateVector plus_state(std::size_t n) {
    return uniform_superposition(n, std::size_t{1} << n);
}

struct BranchResult {
    std::string control_outcome;
    double probability = 0.0;
    /// Normalized client state; empty when the branch is unreachable.
    std::optional<StateVector> client_state;
    /// GHZ fidelity after the per-client canonical frames, phase absorbed.
    double ghz_fidelity = 0.0;

    [[nodiscard]] bool reachable() const noexcept { return client_state.has_value(); }
};

/// One term per control basis state; client i follows bit `control_of_client[i]`.
inline std::vector<OrderTerm> network_terms(std::span<const UnitaryPair> pairs,
                                            std::span<const std::size_t> control_of_client,
                                            std::size_t num_controls) {
    if (pairs.size() != control_of_client.size()) {
        throw ValidationError("need one control assignment per client");
    }
    std::vector<OrderTerm> terms;
    const std::size_t cdim = std::size_t{1} << num_controls;
    terms.reserve(cdim);
    for (std::size_t x = 0; x < cdim; ++x) {
        OrderTerm t{x, {}};
        t.local_ops.reserve(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const std::size_t c = control_of_client[i];
            if (c >= num_controls) {
                throw ValidationError("client " + std::to_string(i) + " references a missing control");
            }
            const bool backward = (x >> (num_controls - 1 - c)) & 1U;
            t.local_ops.push_back(backward ? backward_order(pairs[i]) : forward_order(pairs[i]));
        }
        terms.push_back(std::move(t));
    }
    return terms;
}

namespace detail {

inline void check_clients(std::span<const UnitaryPair> pairs, std::span<const StateVector> inputs,
                          std::size_t num_controls) {
    if (pairs.size() != inputs.size() || pairs.empty()) {
        throw ValidationError("pairs and inputs must be nonempty and of equal length");
    }
    if (pairs.size() + num_controls > kMaxSimulatedQubits) {
        throw ValidationError("network exceeds " + std::to_string(kMaxSimulatedQubits) +
                              " simulated qubits");
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i].num_qubits() != 1 || std::abs(inputs[i].norm() - 1.0) > 1e-10) {
            throw ValidationError("client input " + std::to_string(i) +
                                  " is not a normalized single-qubit state");
        }
    }
}

inline std::vector<BranchResult> simulate_network(std::span<const UnitaryPair> pairs,
                                                  std::span<const StateVector> inputs,
                                                  std::span<const std::size_t> control_of_client,
                                                  const StateVector &control) {
    const std::size_t m = control.num_qubits();
    const auto terms = network_terms(pairs, control_of_client, m);
    const auto joint = superpose_orders(terms, inputs, control);
    const auto ensemble = measure_controls(joint, m);
    const auto frames = branch_frames(pairs, inputs);
    std::vector<BranchResult> results;
    results.reserve(ensemble.outcomes.size());
    for (const auto &o : ensemble.outcomes) {
        BranchResult b{o.label, o.probability, o.state, 0.0};
        if (o.state) {
            b.ghz_fidelity = ghz_fidelity(apply_local(frames, *o.state));
        }
        results.push_back(std::move(b));
    }
    return results;
}

} // namespace detail

/// Control qubit i selects the causal order of pairs[i] acting on inputs[i];
/// every control qubit is then measured in the coherent basis.
inline std::vector<BranchResult> map_entanglement(const StateVector &control,
                                                  std::span<const UnitaryPair> pairs,
                                                  std::span<const StateVector> inputs) {
    if (control.num_qubits() != pairs.size()) {
        throw ValidationError("control has " + std::to_string(control.num_qubits()) +
                              " qubits for " + std::to_string(pairs.size()) + " clients");
    }
    detail::check_clients(pairs, inputs, control.num_qubits());
    std::vector<std::size_t> wiring(pairs.size());
    for (std::size_t i = 0; i < wiring.size(); ++i) {
        wiring[i] = i;
    }
    return detail::simulate_network(pairs, inputs, wiring, control);
}

enum class CoordinatorState { kGhz, kProduct };

struct Entangler {
    std::string id;
    std::size_t clients = 0;
    /// Reserved; only 0 is accepted.
    double link_noise = 0.0;
};

struct Topology {
    std::string coordinator = "e0";
    std::vector<Entangler> entanglers;
    /// One pair and one input per client, clients listed entangler by entangler.
    std::vector<UnitaryPair> pairs;
    std::vector<StateVector> inputs;
    CoordinatorState coordinator_state = CoordinatorState::kGhz;

    [[nodiscard]] std::size_t total_clients() const {
        std::size_t total = 0;
        for (const auto &e : entanglers) {
            total += e.clients;
        }
        return total;
    }
};

/// Same pair and |η(α)> input on every client.
inline Topology uniform_topology(const std::vector<std::size_t> &cluster_sizes,
                                 const UnitaryPair &pair, double alpha) {
    Topology topo;
    for (std::size_t j = 0; j < cluster_sizes.size(); ++j) {
        topo.entanglers.push_back({"e" + std::to_string(j + 1), cluster_sizes[j], 0.0});
    }
    topo.pairs.assign(topo.total_clients(), pair);
    topo.inputs.assign(topo.total_clients(), eta_state(alpha));
    return topo;
}

inline void validate(const Topology &topo) {
    if (topo.entanglers.size() < 2) {
        throw ValidationError("hierarchy needs at least two entanglers");
    }
    for (const auto &e : topo.entanglers) {
        if (e.clients < 2) {
            throw ValidationError("entangler '" + e.id + "' serves fewer than 2 clients");
        }
        if (e.link_noise != 0.0) {
            throw ValidationError("entangler '" + e.id + "': link noise is not supported");
        }
    }
    if (topo.pairs.size() != topo.total_clients() || topo.inputs.size() != topo.total_clients()) {
        throw ValidationError("need one pair and one input per client");
    }
    detail::check_clients(topo.pairs, topo.inputs, topo.entanglers.size());
}

/// Client index -> entangler (control qubit) index.
inline std::vector<std::size_t> client_wiring(const Topology &topo) {
    std::vector<std::size_t> wiring;
    for (std::size_t j = 0; j < topo.entanglers.size(); ++j) {
        wiring.insert(wiring.end(), topo.entanglers[j].clients, j);
    }
    return wiring;
}

/// Coordinator control state over one qubit per entangler.
inline StateVector coordinator_control(const Topology &topo) {
    const std::size_t m = topo.entanglers.size();
    return topo.coordinator_state == CoordinatorState::kGhz ? ghz_state(m) : plus_state(m);
}

/// Two-tier distribution: all control qubits measured coherently, every branch
/// reported with its client state. Refuses if any client violates the
/// generation condition at `tol`.
inline std::vector<BranchResult> run_hierarchy(const Topology &topo, double tol = kConditionTol) {
    validate(topo);
    for (std::size_t i = 0; i < topo.pairs.size(); ++i) {
        if (std::abs(overlap(topo.pairs[i], topo.inputs[i])) >= tol) {
            throw ValidationError("generation condition fails at client qubit " +
                                  std::to_string(i));
        }
    }
    const auto wiring = client_wiring(topo);
    return detail::simulate_network(topo.pairs, topo.inputs, wiring, coordinator_control(topo));
}

/// Dense joint operator Σ_x (⊗_i ops_{x,i}) ⊗ |x><x| of a network.
inline ComplexMatrix network_operator(std::span<const UnitaryPair> pairs,
                                      std::span<const std::size_t> control_of_client,
                                      std::size_t num_controls) {
    if (pairs.size() + num_controls > 8) {
        throw ValidationError("dense network operators are limited to 8 qubits");
    }
    const auto terms = network_terms(pairs, control_of_client, num_controls);
    std::vector<ComplexMatrix> forward;
    for (const auto &p : pairs) {
        forward.push_back(forward_order(p));
    }
    return dense_order_operator(terms, num_controls, forward);
}

/// Largest σ2/σ1 of the operator-Schmidt spectrum of `block` across any
/// single-qubit cut; zero for a product of single-qubit operators.
inline double max_cross_qubit_coupling(const ComplexMatrix &block) {
    const std::size_t k = detail::qubits_for_dim(block.rows(), "operator");
    const std::size_t dim = block.rows();
    double worst = 0.0;
    for (std::size_t q = 0; q < k; ++q) {
        const std::size_t shift = k - 1 - q;
        const std::size_t rest = dim / 2;
        auto drop = [&](std::size_t idx) {
            const std::size_t high = idx >> (shift + 1);
            const std::size_t low = idx & ((std::size_t{1} << shift) - 1);
            return (high << shift) | low;
        };
        // realigned[(r_rest, c_rest), (r_q, c_q)]
        ComplexMatrix realigned(rest * rest, 4);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                const std::size_t rq = (r >> shift) & 1U;
                const std::size_t cq = (c >> shift) & 1U;
                realigned(drop(r) * rest + drop(c), rq * 2 + cq) = block(r, c);
            }
        }
        const auto sv = singular_values(realigned);
        if (sv[0] > 0.0) {
            worst = std::max(worst, sv[1] / sv[0]);
        }
    }
    return worst;
}

struct InteractionAudit {
    /// Largest entry coupling different control basis states.
    double control_offdiagonal = 0.0;
    /// Largest cross-client coupling inside any control block.
    double cross_client = 0.0;
};

/// Decomposes a (clients ⊗ controls) operator into control blocks and checks
/// that each block factorizes over single clients.
inline InteractionAudit audit_interactions(const ComplexMatrix &op, std::size_t num_clients,
                                           std::size_t num_controls) {
    const std::size_t cdim = std::size_t{1} << num_controls;
    const std::size_t tdim = std::size_t{1} << num_clients;
    if (op.rows() != tdim * cdim || !op.is_square()) {
        throw DimensionError("operator does not match the client and control registers");
    }
    InteractionAudit audit;
    for (std::size_t x = 0; x < cdim; ++x) {
        ComplexMatrix block(tdim, tdim);
        for (std::size_t r = 0; r < tdim; ++r) {
            for (std::size_t c = 0; c < tdim; ++c) {
                block(r, c) = op(r * cdim + x, c * cdim + x);
                for (std::size_t y = 0; y < cdim; ++y) {
                    if (y != x) {
                        audit.control_offdiagonal =
                            std::max(audit.control_offdiagonal, std::abs(op(r * cdim + x, c * cdim + y)));
                    }
                }
            }
        }
        audit.cross_client = std::max(audit.cross_client, max_cross_qubit_coupling(block));
    }
    return audit;
}

} // namespace qswitch

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
 * JSON documents: switch specs, topologies and result reports.
 *
 * Switch spec (version 1):
 *
 *     {"version": 1, "protocol": "bell|ghz|w|single", "n": 3,
 *      "pairs": [{"u": "pauli_z", "u_tilde": "ry(pi/2)"}, ...] | {"u": ..., "u_tilde": ...},
 *      "input": {"alpha": 0.5} | {"states": [["a", "b"], ...]},
 *      "control": "even"}
 *
 * Topology (version 1):
 *
 *     {"version": 1, "coordinator": "e0", "coordinator_state": "ghz|product",
 *      "entanglers": [{"id": "e1", "clients": 3, "link_noise": 0}, ...],
 *      "gates": {"u": "pauli_z", "u_tilde": "ry(pi/2)"}, "alpha": 0.5}
 *
 * Validation failures throw ValidationError carrying the JSON pointer of the
 * offending field.
 */

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gates.hpp"
#include "metrics.hpp"
#include "netsim.hpp"
#include "sweep.hpp"
#include "switch.hpp"
#include "verify.hpp"

#include "json.hpp"

namespace qswitch::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline std::string child(const std::string &pointer, const std::string &key) {
    return pointer + "/" + key;
}

inline std::string child(const std::string &pointer, std::size_t index) {
    return pointer + "/" + std::to_string(index);
}

inline const json &require(const json &obj, const std::string &key, const std::string &pointer) {
    if (!obj.is_object()) {
        throw ValidationError("expected an object", pointer);
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ValidationError("missing required field '" + key + "'", pointer);
    }
    return *it;
}

inline std::string require_string(const json &v, const std::string &pointer) {
    if (!v.is_string()) {
        throw ValidationError("expected a string", pointer);
    }
    return v.get<std::string>();
}

inline double require_number(const json &v, const std::string &pointer) {
    if (!v.is_number()) {
        throw ValidationError("expected a number", pointer);
    }
    return v.get<double>();
}

inline void check_keys(const json &obj, std::initializer_list<const char *> allowed,
                       const std::string &pointer) {
    for (const auto &[key, value] : obj.items()) {
        bool known = false;
        for (const char *a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ValidationError("unknown field '" + key + "'", child(pointer, key));
        }
    }
}

inline void check_version(const json &doc) {
    if (const auto it = doc.find("version"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<int>() != kFormatVersion) {
            throw ValidationError("unsupported version (expected 1)", "/version");
        }
    }
}

inline ComplexMatrix gate_at(const json &v, const std::string &pointer) {
    try {
        return parse_gate(require_string(v, pointer));
    } catch (const ValidationError &e) {
        if (!e.pointer().empty()) {
            throw;
        }
        throw ValidationError(e.what(), pointer);
    }
}

inline UnitaryPair pair_at(const json &v, const std::string &pointer) {
    if (!v.is_object()) {
        throw ValidationError("expected {\"u\": ..., \"u_tilde\": ...}", pointer);
    }
    check_keys(v, {"u", "u_tilde"}, pointer);
    const auto u = gate_at(require(v, "u", pointer), child(pointer, "u"));
    const auto ut = gate_at(require(v, "u_tilde", pointer), child(pointer, "u_tilde"));
    if (!is_unitary(u)) {
        throw ValidationError("gate is not unitary within 1e-12", child(pointer, "u"));
    }
    if (!is_unitary(ut)) {
        throw ValidationError("gate is not unitary within 1e-12", child(pointer, "u_tilde"));
    }
    return {u, ut};
}

inline Complex amplitude_at(const json &v, const std::string &pointer) {
    if (v.is_number()) {
        return v.get<double>();
    }
    if (v.is_string()) {
        try {
            return evaluate_complex(v.get<std::string>());
        } catch (const ValidationError &e) {
            throw ValidationError(e.what(), pointer);
        }
    }
    throw ValidationError("amplitude must be a number or a complex string like \"a+bi\"", pointer);
}

inline StateVector qubit_state_at(const json &v, const std::string &pointer) {
    if (!v.is_array() || v.size() != 2) {
        throw ValidationError("single-qubit state needs exactly 2 amplitudes", pointer);
    }
    StateVector s{amplitude_at(v[0], child(pointer, 0)), amplitude_at(v[1], child(pointer, 1))};
    if (std::abs(s.norm() - 1.0) > 1e-10) {
        throw ValidationError("state is not normalized", pointer);
    }
    return s;
}

inline double alpha_at(const json &v, const std::string &pointer) {
    const double alpha = require_number(v, pointer);
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError("alpha must lie in [0, 1]", pointer);
    }
    return alpha;
}

inline std::vector<StateVector> inputs_at(const json &v, std::size_t n,
                                          const std::string &pointer) {
    const json *states = nullptr;
    std::string states_ptr = pointer;
    if (v.is_object()) {
        check_keys(v, {"alpha", "states"}, pointer);
        if (v.contains("alpha") == v.contains("states")) {
            throw ValidationError("give exactly one of 'alpha' or 'states'", pointer);
        }
        if (v.contains("alpha")) {
            return std::vector<StateVector>(n,
                                            eta_state(alpha_at(v["alpha"], child(pointer, "alpha"))));
        }
        states = &v["states"];
        states_ptr = child(pointer, "states");
    } else if (v.is_array()) {
        states = &v;
    } else {
        throw ValidationError("input must be {\"alpha\": a} or a list of amplitude pairs", pointer);
    }
    if (!states->is_array() || states->size() != n) {
        throw ValidationError("expected " + std::to_string(n) + " input states", states_ptr);
    }
    std::vector<StateVector> inputs;
    for (std::size_t i = 0; i < n; ++i) {
        inputs.push_back(qubit_state_at((*states)[i], child(states_ptr, i)));
    }
    return inputs;
}

} // namespace detail

inline SwitchSpec parse_switch_spec(const json &doc) {
    using namespace detail;
    if (!doc.is_object()) {
        throw ValidationError("spec must be a JSON object", "");
    }
    check_keys(doc, {"version", "protocol", "n", "pairs", "input", "control"}, "");
    check_version(doc);
    const auto name = require_string(require(doc, "protocol", ""), "/protocol");
    const auto protocol = protocol_from_name(name);
    if (!protocol) {
        throw ValidationError("unknown protocol '" + name + "'", "/protocol");
    }
    const json &pairs_doc = require(doc, "pairs", "");
    std::size_t n = 0;
    if (const auto it = doc.find("n"); it != doc.end()) {
        if (!it->is_number_unsigned() || it->get<std::size_t>() == 0) {
            throw ValidationError("n must be a positive integer", "/n");
        }
        n = it->get<std::size_t>();
    } else if (pairs_doc.is_array()) {
        n = pairs_doc.size();
    } else if (*protocol == Protocol::kBell) {
        n = 2;
    } else if (*protocol == Protocol::kSingle) {
        n = 1;
    } else {
        throw ValidationError("'n' is required when 'pairs' is a single object", "/n");
    }
    std::vector<UnitaryPair> pairs;
    if (pairs_doc.is_object()) {
        pairs.assign(n, pair_at(pairs_doc, "/pairs"));
    } else if (pairs_doc.is_array()) {
        if (pairs_doc.size() != n) {
            throw ValidationError("expected " + std::to_string(n) + " pairs", "/pairs");
        }
        for (std::size_t i = 0; i < n; ++i) {
            pairs.push_back(pair_at(pairs_doc[i], child("/pairs", i)));
        }
    } else {
        throw ValidationError("pairs must be an object or an array", "/pairs");
    }
    auto inputs = inputs_at(require(doc, "input", ""), n, "/input");
    if (const auto it = doc.find("control"); it != doc.end()) {
        if (!it->is_string() || it->get<std::string>() != "even") {
            throw ValidationError("only the \"even\" control superposition is supported",
                                  "/control");
        }
    }
    try {
        return make_spec(*protocol, std::move(pairs), std::move(inputs));
    } catch (const ValidationError &e) {
        throw ValidationError(e.what(), "/protocol");
    }
}

inline Topology parse_topology(const json &doc) {
    using namespace detail;
    if (!doc.is_object()) {
        throw ValidationError("topology must be a JSON object", "");
    }
    check_keys(doc, {"version", "coordinator", "coordinator_state", "entanglers", "gates", "alpha"},
               "");
    check_version(doc);
    Topology topo;
    if (const auto it = doc.find("coordinator"); it != doc.end()) {
        topo.coordinator = require_string(*it, "/coordinator");
    }
    if (const auto it = doc.find("coordinator_state"); it != doc.end()) {
        const auto s = require_string(*it, "/coordinator_state");
        if (s == "ghz") {
            topo.coordinator_state = CoordinatorState::kGhz;
        } else if (s == "product") {
            topo.coordinator_state = CoordinatorState::kProduct;
        } else {
            throw ValidationError("expected \"ghz\" or \"product\"", "/coordinator_state");
        }
    }
    const UnitaryPair default_pair = pair_at(require(doc, "gates", ""), "/gates");
    const double default_alpha = alpha_at(require(doc, "alpha", ""), "/alpha");
    const json &ents = require(doc, "entanglers", "");
    if (!ents.is_array() || ents.empty()) {
        throw ValidationError("expected a nonempty array", "/entanglers");
    }
    for (std::size_t j = 0; j < ents.size(); ++j) {
        const auto ptr = child("/entanglers", j);
        const json &e = ents[j];
        if (!e.is_object()) {
            throw ValidationError("expected an object", ptr);
        }
        check_keys(e, {"id", "clients", "link_noise", "gates", "alpha"}, ptr);
        Entangler ent;
        ent.id = require_string(require(e, "id", ptr), child(ptr, "id"));
        const json &clients = require(e, "clients", ptr);
        if (!clients.is_number_unsigned() || clients.get<std::size_t>() < 2) {
            throw ValidationError("clients must be an integer >= 2", child(ptr, "clients"));
        }
        ent.clients = clients.get<std::size_t>();
        if (const auto it = e.find("link_noise"); it != e.end()) {
            ent.link_noise = require_number(*it, child(ptr, "link_noise"));
            if (ent.link_noise != 0.0) {
                throw ValidationError("link noise is not supported", child(ptr, "link_noise"));
            }
        }
        const UnitaryPair pair =
            e.contains("gates") ? pair_at(e["gates"], child(ptr, "gates")) : default_pair;
        const double alpha =
            e.contains("alpha") ? alpha_at(e["alpha"], child(ptr, "alpha")) : default_alpha;
        topo.pairs.insert(topo.pairs.end(), ent.clients, pair);
        topo.inputs.insert(topo.inputs.end(), ent.clients, eta_state(alpha));
        topo.entanglers.push_back(std::move(ent));
    }
    try {
        validate(topo);
    } catch (const ValidationError &e) {
        throw ValidationError(e.what(), "/entanglers");
    }
    return topo;
}

/// Parses `text` as JSON; syntax errors become ValidationError at the root.
inline json parse_document(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what(), "");
    }
}

/// Inline JSON when `arg` starts with '{', otherwise a file path.
inline json load_document(const std::string &arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') {
        return parse_document(arg);
    }
    std::ifstream in(arg, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + arg + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

inline json to_json(Complex z) { return json::array({round_real(z.real()), round_real(z.imag())}); }

inline json to_json(const StateVector &s) {
    auto arr = json::array();
    for (const auto &a : s.amplitudes()) {
        arr.push_back(to_json(a));
    }
    return arr;
}

/// Entanglement metric appropriate to an n-qubit output, or null for n = 1.
inline json output_metric(const StateVector &s) {
    if (s.num_qubits() == 2) {
        return json{{"metric", "concurrence"}, {"value", round_real(concurrence(s))}};
    }
    if (s.num_qubits() >= 3) {
        return json{{"metric", "gme_concurrence"}, {"value", round_real(gme_concurrence(s).value)}};
    }
    return nullptr;
}

inline json to_json(const Outcome &o) {
    json j{{"label", o.label},
           {"probability", round_real(o.probability)},
           {"reachable", o.reachable()}};
    j["state"] = o.state ? to_json(*o.state) : json();
    j["metric"] = o.state ? output_metric(*o.state) : json();
    return j;
}

inline json to_json(const OutcomeEnsemble &e, const SwitchSpec &spec) {
    auto outcomes = json::array();
    for (const auto &o : e.outcomes) {
        outcomes.push_back(to_json(o));
    }
    return json{{"protocol", protocol_name(spec.protocol)},
                {"n", spec.num_targets()},
                {"total_probability", round_real(e.total_probability())},
                {"outcomes", outcomes}};
}

inline json to_json(const ConditionReport &r) {
    auto overlaps = json::array();
    for (const auto &o : r.per_qubit_overlap) {
        overlaps.push_back(to_json(o));
    }
    return json{{"per_qubit_overlap", overlaps},
                {"all_orthogonal", r.all_orthogonal},
                {"any_aligned", r.any_aligned},
                {"tol", r.tol}};
}

inline json to_json(const BranchResult &b, bool with_state) {
    json j{{"control_outcome", b.control_outcome},
           {"probability", round_real(b.probability)},
           {"reachable", b.reachable()},
           {"ghz_fidelity", round_real(b.ghz_fidelity)}};
    if (with_state) {
        j["client_state"] = b.client_state ? to_json(*b.client_state) : json();
    }
    return j;
}

inline json branch_summary(const std::vector<BranchResult> &branches) {
    double total = 0.0;
    double worst = 1.0;
    std::size_t reachable = 0;
    for (const auto &b : branches) {
        total += b.probability;
        if (b.reachable()) {
            ++reachable;
            worst = std::min(worst, b.ghz_fidelity);
        }
    }
    return json{{"branches", branches.size()},
                {"reachable_branches", reachable},
                {"total_probability", round_real(total)},
                {"min_ghz_fidelity", round_real(reachable > 0 ? worst : 0.0)}};
}

/// Condition report, separability verdict, and per-outcome certificates.
inline json verification_report(const SwitchSpec &spec, double tol) {
    const auto report = check_max_entanglement(spec, tol);
    const auto ensemble = run(spec);
    json out{{"condition", to_json(report)}, {"separable", check_separability(spec, tol)}};
    std::optional<std::vector<ComplexMatrix>> lu;
    if (report.all_orthogonal && tol <= kConditionTol) {
        lu = canonical_lu(spec);
    }
    auto outcomes = json::array();
    for (const auto &o : ensemble.outcomes) {
        json j{{"label", o.label}, {"probability", round_real(o.probability)},
               {"reachable", o.reachable()}};
        if (o.state) {
            j["metric"] = output_metric(*o.state);
            if (spec.num_targets() == 3) {
                j["class"] = class_name(certify_class(*o.state, tol));
            }
            if (lu) {
                const auto reduced = apply_local(*lu, *o.state);
                const double f = spec.protocol == Protocol::kW ? w_fidelity(reduced)
                                                               : ghz_fidelity(reduced);
                j["canonical_fidelity"] = round_real(f);
            }
        }
        outcomes.push_back(std::move(j));
    }
    out["outcomes"] = std::move(outcomes);
    return out;
}

inline constexpr const char *kSpecSchema = R"schema({
  "version": 1,
  "protocol": "single | bell | ghz | w",
  "n": "integer, optional when pairs is an array",
  "pairs": "[{\"u\": GATE, \"u_tilde\": GATE}, ...] or one {\"u\", \"u_tilde\"} object for all qubits",
  "input": "{\"alpha\": number in [0,1]} or {\"states\": [[AMP, AMP], ...]}",
  "control": "even"
})schema";

inline constexpr const char *kTopologySchema = R"schema({
  "version": 1,
  "coordinator": "node id, optional",
  "coordinator_state": "ghz | product (default ghz)",
  "entanglers": [{"id": "e1", "clients": "integer >= 2", "link_noise": 0,
                  "gates": "optional override", "alpha": "optional override"}],
  "gates": {"u": GATE, "u_tilde": GATE},
  "alpha": "number in [0,1]"
})schema";

inline constexpr const char *kGateGrammar =
    "GATE := pauli_x | pauli_y | pauli_z | identity | ry(EXPR) | matrix([[EXPR,EXPR],[EXPR,EXPR]])\n"
    "EXPR := arithmetic over numbers, pi, i, sqrt/exp/cos/sin; e.g. ry(pi/2), 0.6+0.8i\n"
    "AMP  := number or EXPR string";

} // namespace qswitch::io

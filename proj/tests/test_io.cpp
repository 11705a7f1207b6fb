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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qswitch/io.hpp"
#include "support.hpp"

using namespace qswitch;
using qswitch::io::json;

namespace {

std::string pointer_of(const std::string &text) {
    try {
        io::parse_switch_spec(io::parse_document(text));
    } catch (const ValidationError &e) {
        return e.pointer();
    }
    return "<no error>";
}

std::string topology_pointer_of(const std::string &text) {
    try {
        io::parse_topology(io::parse_document(text));
    } catch (const ValidationError &e) {
        return e.pointer();
    }
    return "<no error>";
}

} // namespace

TEST(SpecDocument, SharedPairAndAlpha) {
    const auto spec = io::parse_switch_spec(io::parse_document(
        R"j({"version":1,"protocol":"ghz","n":4,"pairs":{"u":"pauli_z","u_tilde":"ry(pi/2)"},
            "input":{"alpha":0.25},"control":"even"})j"));
    EXPECT_EQ(spec.protocol, Protocol::kGhz);
    ASSERT_EQ(spec.num_targets(), 4u);
    EXPECT_LT(max_abs_diff(spec.inputs[3], eta_state(0.25)), 1e-15);
    EXPECT_LT(max_abs_diff(spec.pairs[2].u_tilde(), ry(std::numbers::pi / 2)), 1e-15);
}

TEST(SpecDocument, ExplicitPairsAndStates) {
    const auto spec = io::parse_switch_spec(io::parse_document(
        R"j({"protocol":"bell",
            "pairs":[{"u":"pauli_x","u_tilde":"matrix([[0,1],[1,0]])"},
                     {"u":"identity","u_tilde":"pauli_y"}],
            "input":{"states":[[1,0],["sqrt(0.5)","0.5+0.5i"]]}})j"));
    EXPECT_EQ(spec.num_targets(), 2u);
    EXPECT_EQ(spec.inputs[1][1], Complex(0.5, 0.5));
    const auto bare = io::parse_switch_spec(io::parse_document(
        R"j({"protocol":"single","pairs":[{"u":"pauli_z","u_tilde":"ry(1)"}],"input":[[0,1]]})j"));
    EXPECT_EQ(bare.protocol, Protocol::kSingle);
}

TEST(SpecDocument, ErrorPointers) {
    const std::string pairs = R"j("pairs":{"u":"pauli_z","u_tilde":"ry(1)"})j";
    EXPECT_EQ(pointer_of(R"j({"protocol":"bell",)j" + pairs + "}"), "");
    EXPECT_EQ(pointer_of(R"j({"protocol":"tree",)j" + pairs + R"j(,"input":{"alpha":0}})j"), "/protocol");
    EXPECT_EQ(pointer_of(R"j({"protocol":"bell",)j" + pairs + R"j(,"input":{"alpha":2}})j"),
              "/input/alpha");
    EXPECT_EQ(pointer_of(R"j({"protocol":"bell","pairs":[{"u":"pauli_z","u_tilde":"nope"},{"u":"pauli_z","u_tilde":"ry(1)"}],"input":{"alpha":0}})j"),
              "/pairs/0/u_tilde");
    EXPECT_EQ(pointer_of(R"j({"protocol":"bell","pairs":{"u":"matrix([[1,1],[0,1]])","u_tilde":"ry(1)"},"input":{"alpha":0}})j"),
              "/pairs/u");
    EXPECT_EQ(pointer_of(R"j({"protocol":"bell",)j" + pairs + R"j(,"input":{"states":[[1,0],[1,1]]}})j"),
              "/input/states/1");
    EXPECT_EQ(pointer_of(R"j({"protocol":"bell",)j" + pairs + R"j(,"input":{"states":[[1,0],["1+",0]]}})j"),
              "/input/states/1/0");
    EXPECT_EQ(pointer_of(R"j({"protocol":"bell",)j" + pairs + R"j(,"input":{"alpha":0},"control":"ghz"})j"),
              "/control");
    EXPECT_EQ(pointer_of(R"j({"protocol":"bell",)j" + pairs + R"j(,"input":{"alpha":0},"version":2})j"),
              "/version");
    EXPECT_EQ(pointer_of(R"j({"protocol":"bell",)j" + pairs + R"j(,"input":{"alpha":0},"colour":1})j"),
              "/colour");
    EXPECT_EQ(pointer_of(R"j({"protocol":"w","n":2,)j" + pairs + R"j(,"input":{"alpha":0}})j"),
              "/protocol");
    EXPECT_EQ(pointer_of(R"j({"protocol":"ghz",)j" + pairs + R"j(,"input":{"alpha":0}})j"), "/n");
    EXPECT_EQ(pointer_of(R"j({"protocol":"bell",)j" + pairs + R"j(,"input":{"alpha":0}})j"),
              "<no error>");
}

TEST(SpecDocument, MalformedJsonIsValidationError) {
    EXPECT_THROW(io::parse_document("{\"protocol\":"), ValidationError);
    EXPECT_THROW(io::load_document("/definitely/not/here.json"), IoError);
}

TEST(SpecDocument, LoadsFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "qswitch_io_spec.json";
    {
        std::ofstream out(path);
        out << R"j({"protocol":"bell","pairs":{"u":"pauli_z","u_tilde":"ry(pi/2)"},"input":{"alpha":0.5}})j";
    }
    const auto spec = io::parse_switch_spec(io::load_document(path.string()));
    EXPECT_TRUE(check_max_entanglement(spec).all_orthogonal);
    std::filesystem::remove(path);
}

TEST(TopologyDocument, DefaultsAndOverrides) {
    const auto topo = io::parse_topology(io::parse_document(
        R"j({"version":1,"entanglers":[{"id":"e1","clients":3},
                                      {"id":"e2","clients":2,"alpha":0.1,
                                       "gates":{"u":"pauli_x","u_tilde":"pauli_z"}}],
            "gates":{"u":"pauli_z","u_tilde":"ry(pi/2)"},"alpha":0.5,"coordinator_state":"product"})j"));
    ASSERT_EQ(topo.total_clients(), 5u);
    EXPECT_EQ(topo.coordinator_state, CoordinatorState::kProduct);
    EXPECT_LT(max_abs_diff(topo.inputs[4], eta_state(0.1)), 1e-15);
    EXPECT_LT(max_abs_diff(topo.pairs[3].u(), pauli(Axis::X)), 1e-15);
    EXPECT_LT(max_abs_diff(topo.inputs[0], eta_state(0.5)), 1e-15);
}

TEST(TopologyDocument, ErrorPointers) {
    const std::string tail = R"j("gates":{"u":"pauli_z","u_tilde":"ry(pi/2)"},"alpha":0.5})j";
    EXPECT_EQ(topology_pointer_of(R"j({"entanglers":[{"id":"e1","clients":1},{"id":"e2","clients":2}],)j" + tail),
              "/entanglers/0/clients");
    EXPECT_EQ(topology_pointer_of(R"j({"entanglers":[{"id":"e1","clients":2}],)j" + tail), "/entanglers");
    EXPECT_EQ(topology_pointer_of(R"j({"entanglers":[{"id":"e1","clients":2,"link_noise":0.2},{"id":"e2","clients":2}],)j" + tail),
              "/entanglers/0/link_noise");
    EXPECT_EQ(topology_pointer_of(R"j({"entanglers":[{"clients":2},{"id":"e2","clients":2}],)j" + tail),
              "/entanglers/0");
    EXPECT_EQ(topology_pointer_of(R"j({"entanglers":[{"id":"e1","clients":2},{"id":"e2","clients":2}],"coordinator_state":"w",)j" + tail),
              "/coordinator_state");
}

TEST(Reports, OutcomeEnsembleJson) {
    const auto spec = io::parse_switch_spec(io::parse_document(
        R"j({"protocol":"ghz","n":3,"pairs":{"u":"pauli_z","u_tilde":"ry(pi)"},"input":{"alpha":0.5}})j"));
    const auto j = io::to_json(run(spec), spec);
    EXPECT_EQ(j["protocol"], "ghz");
    ASSERT_EQ(j["outcomes"].size(), 2u);
    EXPECT_FALSE(j["outcomes"][0]["reachable"].get<bool>());
    EXPECT_TRUE(j["outcomes"][0]["state"].is_null());
    EXPECT_EQ(j["outcomes"][1]["metric"]["metric"], "gme_concurrence");
    EXPECT_EQ(j["total_probability"].get<double>(), 1.0);
    // Sorted keys and fixed precision make repeated dumps identical.
    EXPECT_EQ(j.dump(), io::to_json(run(spec), spec).dump());
}

TEST(Reports, VerificationReport) {
    const auto spec = io::parse_switch_spec(io::parse_document(
        R"j({"protocol":"w","n":3,"pairs":{"u":"pauli_z","u_tilde":"ry(pi/2)"},"input":{"alpha":0.2}})j"));
    const auto j = io::verification_report(spec, kConditionTol);
    EXPECT_TRUE(j["condition"]["all_orthogonal"].get<bool>());
    EXPECT_FALSE(j["separable"].get<bool>());
    ASSERT_EQ(j["outcomes"].size(), 4u);
    for (const auto &o : j["outcomes"]) {
        EXPECT_EQ(o["class"], "W-class");
        EXPECT_EQ(o["canonical_fidelity"].get<double>(), 1.0);
    }
}

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

// Command-line front end: run, verify, sweep and netsim. Results go to
// standard output as JSON (sweeps write CSV/JSON files). Exit status is 0 on
// success, 1 on validation errors and 2 on I/O errors.

#include <cstdio>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "qswitch/io.hpp"
#include "qswitch/qswitch.hpp"

namespace {

using qswitch::io::json;

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

void emit(const json &doc) { std::cout << doc.dump(2) << '\n'; }

struct SweepTarget {
    qswitch::Protocol protocol;
    std::size_t n;
};

SweepTarget parse_sweep_protocol(const std::string &name, std::optional<std::size_t> n) {
    static const std::regex pattern(R"((bell|ghz|w)(\d+|N)?)");
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) {
        throw qswitch::ValidationError("unknown sweep protocol '" + name + "'");
    }
    const auto protocol = *qswitch::protocol_from_name(m[1].str());
    if (protocol == qswitch::Protocol::kBell) {
        if (m[2].matched) {
            throw qswitch::ValidationError("bell takes no size suffix");
        }
        return {protocol, 2};
    }
    if (!m[2].matched) {
        throw qswitch::ValidationError("'" + name + "' needs a size, e.g. ghz3 or ghzN --n 4");
    }
    if (m[2].str() == "N") {
        if (!n) {
            throw qswitch::ValidationError("'" + name + "' requires --n");
        }
        return {protocol, *n};
    }
    return {protocol, std::stoul(m[2].str())};
}

qswitch::Metric parse_metric(const std::string &name, qswitch::Protocol protocol) {
    if (name == "auto") {
        return qswitch::default_metric(protocol);
    }
    if (name == "concurrence") {
        return qswitch::Metric::kConcurrence;
    }
    if (name == "gme_concurrence") {
        return qswitch::Metric::kGmeConcurrence;
    }
    throw qswitch::ValidationError("unknown metric '" + name + "'");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum-switch entanglement generation simulator"};
    app.require_subcommand(1);
    app.footer(std::string("\nSwitch spec schema:\n") + qswitch::io::kSpecSchema +
               "\n\nTopology schema:\n" + qswitch::io::kTopologySchema + "\n\n" +
               qswitch::io::kGateGrammar);

    std::string spec_arg;
    std::string topology_arg;
    double tol = qswitch::kConditionTol;

    auto *run = app.add_subcommand("run", "Simulate a switch spec and print its outcome ensemble");
    run->add_option("--spec", spec_arg, "Spec JSON file (or inline JSON)")->required();

    auto *verify = app.add_subcommand("verify", "Check the generation conditions of a spec");
    verify->add_option("--spec", spec_arg, "Spec JSON file (or inline JSON)")->required();
    verify->add_option("--tol", tol, "Condition tolerance")->capture_default_str();

    std::string protocol_name;
    std::optional<std::size_t> n;
    std::size_t lambda_steps = 33;
    std::size_t alpha_steps = 33;
    std::string metric_name = "auto";
    std::string out_path;
    std::string format = "csv";
    std::optional<std::size_t> threads;
    auto *sweep = app.add_subcommand("sweep", "Sweep λ and α for the σ_z / R_y(2λ) family");
    sweep->add_option("--protocol", protocol_name, "bell | ghz<k> | ghzN | w<k> | wN")->required();
    sweep->add_option("--n", n, "Qubit count for ghzN / wN");
    sweep->add_option("--lambda-steps", lambda_steps, "Points over [0, pi/2]")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sweep->add_option("--alpha-steps", alpha_steps, "Points over [0, 1]")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sweep->add_option("--metric", metric_name, "auto | concurrence | gme_concurrence")
        ->capture_default_str();
    sweep->add_option("--out", out_path, "Output file")->required();
    sweep->add_option("--format", format, "csv | json")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--threads", threads, "Worker threads (default: SWITCH_THREADS or cores)");

    std::string report = "summary";
    auto *netsim = app.add_subcommand("netsim", "Simulate a hierarchical distribution topology");
    netsim->add_option("--topology", topology_arg, "Topology JSON file (or inline JSON)")
        ->required();
    netsim->add_option("--report", report, "branches | summary")
        ->capture_default_str()
        ->check(CLI::IsMember({"branches", "summary"}));
    netsim->add_option("--tol", tol, "Condition tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (run->parsed()) {
            const auto spec = qswitch::io::parse_switch_spec(qswitch::io::load_document(spec_arg));
            emit(qswitch::io::to_json(qswitch::run(spec), spec));
        } else if (verify->parsed()) {
            const auto spec = qswitch::io::parse_switch_spec(qswitch::io::load_document(spec_arg));
            emit(qswitch::io::verification_report(spec, tol));
        } else if (sweep->parsed()) {
            const auto target = parse_sweep_protocol(protocol_name, n);
            auto plan = qswitch::default_plan(target.protocol, target.n, lambda_steps, alpha_steps);
            plan.metric = parse_metric(metric_name, target.protocol);
            const auto records =
                qswitch::run_sweep(plan, threads.value_or(qswitch::default_thread_count()));
            qswitch::export_records(records,
                                    format == "csv" ? qswitch::ExportFormat::kCsv
                                                    : qswitch::ExportFormat::kJson,
                                    out_path);
            emit(json{{"out", out_path}, {"format", format}, {"records", records.size()}});
        } else if (netsim->parsed()) {
            const auto topo = qswitch::io::parse_topology(qswitch::io::load_document(topology_arg));
            const auto branches = qswitch::run_hierarchy(topo, tol);
            json doc{{"summary", qswitch::io::branch_summary(branches)}};
            if (report == "branches") {
                auto arr = json::array();
                for (const auto &b : branches) {
                    arr.push_back(qswitch::io::to_json(b, true));
                }
                doc["branches"] = std::move(arr);
            }
            emit(doc);
        }
    } catch (const qswitch::ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        if (!e.pointer().empty() || std::string(e.what()).rfind("malformed JSON", 0) == 0) {
            std::cerr << "pointer: " << (e.pointer().empty() ? "\"\"" : e.pointer()) << '\n';
        }
        return kExitValidation;
    } catch (const qswitch::IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const qswitch::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}

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
 * Parameter sweeps over the rotation angle λ and the input superposition α
 * for the default gate family U = σ_z, U~ = R_y(2λ) on inputs |η>^⊗n,
 * |η> = sqrt(α)|0> + sqrt(1-α)|1>.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "gates.hpp"
#include "metrics.hpp"
#include "switch.hpp"

#include "json.hpp"

namespace qswitch {

struct SweepPlan {
    Protocol protocol = Protocol::kBell;
    std::size_t n = 2;
    std::vector<double> lambda_grid;
    std::vector<double> alpha_grid;
    ComplexMatrix base_u = pauli(Axis::Z);
    /// U~ as a function of λ.
    std::function<ComplexMatrix(double)> u_tilde_family = [](double lambda) {
        return ry(2.0 * lambda);
    };
    Metric metric = Metric::kConcurrence;
};

struct SweepRecord {
    double lambda = 0.0;
    double alpha = 0.0;
    std::string outcome;
    double probability = 0.0;
    /// Absent when the outcome is unreachable.
    std::optional<double> metric_value;
    bool reachable = false;
};

/// `steps` evenly spaced points from lo to hi inclusive.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t steps) {
    if (steps == 0) {
        throw ValidationError("grid needs at least one point");
    }
    std::vector<double> grid(steps, lo);
    for (std::size_t i = 1; i < steps; ++i) {
        grid[i] = i + 1 == steps ? hi
                                 : lo + (hi - lo) * static_cast<double>(i) /
                                            static_cast<double>(steps - 1);
    }
    return grid;
}

inline Metric default_metric(Protocol protocol) {
    return protocol == Protocol::kBell ? Metric::kConcurrence : Metric::kGmeConcurrence;
}

inline SweepPlan default_plan(Protocol protocol, std::size_t n, std::size_t lambda_steps = 33,
                              std::size_t alpha_steps = 33) {
    SweepPlan plan;
    plan.protocol = protocol;
    plan.n = n;
    plan.lambda_grid = uniform_grid(0.0, std::numbers::pi / 2.0, lambda_steps);
    plan.alpha_grid = uniform_grid(0.0, 1.0, alpha_steps);
    plan.metric = default_metric(protocol);
    return plan;
}

namespace detail {

inline void check_grid(const std::vector<double> &grid, double lo, double hi, const char *name) {
    if (grid.empty()) {
        throw ValidationError(std::string(name) + " grid is empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= lo && grid[i] <= hi)) {
            throw ValidationError(std::string(name) + " grid value out of range");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw ValidationError(std::string(name) + " grid is not strictly increasing");
        }
    }
}

} // namespace detail

inline void validate(const SweepPlan &plan) {
    if (plan.protocol == Protocol::kSingle) {
        throw ValidationError("sweeps need an entangling protocol");
    }
    detail::check_grid(plan.lambda_grid, 0.0, std::numbers::pi / 2.0, "lambda");
    detail::check_grid(plan.alpha_grid, 0.0, 1.0, "alpha");
    if (plan.metric == Metric::kPurity) {
        throw ValidationError("sweep metric must be concurrence or gme_concurrence");
    }
    if (plan.metric == Metric::kConcurrence && plan.n != 2) {
        throw ValidationError("concurrence needs a two-qubit output");
    }
    if (!plan.u_tilde_family) {
        throw ValidationError("sweep needs a U~ family");
    }
}

/// Records for one grid point, one per outcome in label order.
inline std::vector<SweepRecord> evaluate_point(const SweepPlan &plan, double lambda, double alpha) {
    const UnitaryPair pair(plan.base_u, plan.u_tilde_family(lambda));
    const StateVector eta = eta_state(alpha);
    const auto spec = make_spec(plan.protocol, std::vector<UnitaryPair>(plan.n, pair),
                                std::vector<StateVector>(plan.n, eta));
    const auto ensemble = run(spec);
    std::vector<SweepRecord> records;
    records.reserve(ensemble.outcomes.size());
    for (const auto &o : ensemble.outcomes) {
        SweepRecord r{lambda, alpha, o.label, o.probability, std::nullopt, o.reachable()};
        if (o.reachable()) {
            r.metric_value = plan.metric == Metric::kConcurrence ? concurrence(*o.state)
                                                                 : gme_concurrence(*o.state).value;
        }
        records.push_back(std::move(r));
    }
    return records;
}

/// SWITCH_THREADS if set to a positive integer, else the hardware concurrency.
inline std::size_t default_thread_count() {
    if (const char *env = std::getenv("SWITCH_THREADS"); env != nullptr) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Evaluates every (λ, α) point, in parallel when threads > 1. Records are
/// ordered by λ, then α, then outcome label regardless of the thread count.
inline std::vector<SweepRecord> run_sweep(const SweepPlan &plan, std::size_t threads = 1) {
    validate(plan);
    const std::size_t na = plan.alpha_grid.size();
    const std::size_t points = plan.lambda_grid.size() * na;
    std::vector<std::vector<SweepRecord>> slots(points);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t g = first; g < points; g += stride) {
            slots[g] = evaluate_point(plan, plan.lambda_grid[g / na], plan.alpha_grid[g % na]);
        }
    };
    threads = std::clamp<std::size_t>(threads, 1, points);
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            for (std::size_t t = 0; t < threads; ++t) {
                pool.emplace_back([&, t] {
                    try {
                        work(t, threads);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
        }
        for (const auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }
    std::vector<SweepRecord> records;
    for (auto &slot : slots) {
        for (auto &r : slot) {
            records.push_back(std::move(r));
        }
    }
    return records;
}

/// 12 significant digits, lowercase exponent, no negative zero.
inline std::string format_real(double x) {
    if (x == 0.0) {
        x = 0.0;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// x rounded to 12 significant digits, so that shortest round-trip printing
/// reproduces format_real's digits.
inline double round_real(double x) { return std::strtod(format_real(x).c_str(), nullptr); }

inline constexpr const char *kCsvHeader = "lambda,alpha,outcome,probability,metric,reachable";

inline std::string to_csv(const std::vector<SweepRecord> &records) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto &r : records) {
        out += format_real(r.lambda) + ',' + format_real(r.alpha) + ',' + r.outcome + ',' +
               format_real(r.probability) + ',' +
               (r.metric_value ? format_real(*r.metric_value) : std::string{}) + ',' +
               (r.reachable ? "true" : "false") + '\n';
    }
    return out;
}

inline nlohmann::json to_json(const SweepRecord &r) {
    return nlohmann::json{
        {"lambda", round_real(r.lambda)},
        {"alpha", round_real(r.alpha)},
        {"outcome", r.outcome},
        {"probability", round_real(r.probability)},
        {"metric", r.metric_value ? nlohmann::json(round_real(*r.metric_value)) : nlohmann::json()},
        {"reachable", r.reachable},
    };
}

inline nlohmann::json to_json(const std::vector<SweepRecord> &records) {
    auto arr = nlohmann::json::array();
    for (const auto &r : records) {
        arr.push_back(to_json(r));
    }
    return arr;
}

inline SweepRecord record_from_json(const nlohmann::json &j) {
    SweepRecord r;
    r.lambda = j.at("lambda").get<double>();
    r.alpha = j.at("alpha").get<double>();
    r.outcome = j.at("outcome").get<std::string>();
    r.probability = j.at("probability").get<double>();
    r.reachable = j.at("reachable").get<bool>();
    if (!j.at("metric").is_null()) {
        r.metric_value = j.at("metric").get<double>();
    }
    return r;
}

enum class ExportFormat { kCsv, kJson };

inline void export_records(const std::vector<SweepRecord> &records, ExportFormat format,
                           const std::string &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    if (format == ExportFormat::kCsv) {
        out << to_csv(records);
    } else {
        out << to_json(records).dump(2) << '\n';
    }
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

inline std::vector<SweepRecord> read_records_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw IoError("'" + path + "' does not start with the sweep CSV header");
    }
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 6) {
            throw IoError("malformed row in '" + path + "': " + line);
        }
        SweepRecord r;
        r.lambda = std::stod(fields[0]);
        r.alpha = std::stod(fields[1]);
        r.outcome = fields[2];
        r.probability = std::stod(fields[3]);
        if (!fields[4].empty()) {
            r.metric_value = std::stod(fields[4]);
        }
        r.reachable = fields[5] == "true";
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace qswitch

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
 * Entanglement measures: Wootters concurrence of two-qubit density matrices,
 * GME concurrence of pure multi-qubit states and purity.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "qla.hpp"

namespace qswitch {

enum class Metric { kConcurrence, kGmeConcurrence, kPurity };

inline std::string metric_name(Metric m) {
    switch (m) {
    case Metric::kConcurrence:
        return "concurrence";
    case Metric::kGmeConcurrence:
        return "gme_concurrence";
    case Metric::kPurity:
        return "purity";
    }
    return "unknown";
}

struct MetricReport {
    Metric metric = Metric::kGmeConcurrence;
    double value = 0.0;
    /// Per-cut sqrt(2 (1 - Tr ρ_cut²)), aligned with `cuts`.
    std::vector<double> subsystem_values;
    std::vector<std::vector<std::size_t>> cuts;
};

inline double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

/// Tr(ρ²)
inline double purity(const DensityMatrix &rho) {
    double s = 0.0;
    for (const auto &z : rho.matrix().entries()) {
        s += std::norm(z);
    }
    return s;
}

/// Wootters concurrence max{0, μ1 - μ2 - μ3 - μ4}, μ the decreasing square
/// roots of the eigenvalues of ρ·ρ~. The μ are computed as the singular
/// values of sqrt(ρ)·(Y⊗Y)·sqrt(ρ)*, which equal them exactly.
inline double concurrence(const DensityMatrix &rho) {
    if (rho.num_qubits() != 2) {
        throw DimensionError("concurrence needs a two-qubit density matrix");
    }
    if (!is_valid_density(rho)) {
        throw ValidationError("input is not a valid density matrix");
    }
    const ComplexMatrix sqrt_rho = hermitian_function(
        rho.matrix(), [](double x) { return x < kEigenDust ? 0.0 : std::sqrt(x); });
    const ComplexMatrix y{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}};
    const auto mu = singular_values(sqrt_rho * kron(y, y) * sqrt_rho.conjugate());
    return clamp_unit(mu[0] - mu[1] - mu[2] - mu[3]);
}

inline double concurrence(const StateVector &psi) {
    return concurrence(DensityMatrix::from_state(psi));
}

/// 1 - Tr ρ_keep² of a normalized pure state. Evaluated as twice the sum of
/// squared 2x2 minors of the bipartite amplitude matrix (Cauchy-Binet), which
/// keeps product states at exactly representable zero instead of 1e-16 dust.
inline double linear_entropy(const StateVector &psi, std::span<const std::size_t> keep) {
    ComplexMatrix m = bipartite_amplitudes(psi, keep);
    if (m.rows() > m.cols()) {
        m = m.transpose();
    }
    double sum = 0.0;
    for (std::size_t r0 = 0; r0 < m.rows(); ++r0) {
        for (std::size_t r1 = r0 + 1; r1 < m.rows(); ++r1) {
            for (std::size_t c0 = 0; c0 < m.cols(); ++c0) {
                const Complex a = m(r0, c0);
                const Complex b = m(r1, c0);
                for (std::size_t c1 = c0 + 1; c1 < m.cols(); ++c1) {
                    sum += std::norm(a * m(r1, c1) - m(r0, c1) * b);
                }
            }
        }
    }
    return 2.0 * sum;
}

struct GmeOptions {
    /// Minimize over every bipartition instead of the single-qubit cuts.
    bool all_bipartitions = false;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> bipartition_cuts(std::size_t n, bool all) {
    std::vector<std::vector<std::size_t>> cuts;
    if (!all) {
        for (std::size_t q = 0; q < n; ++q) {
            cuts.push_back({q});
        }
        return cuts;
    }
    const std::size_t full = (std::size_t{1} << n) - 1;
    for (std::size_t mask = 1; mask < full; ++mask) {
        if (mask > (full & ~mask)) {
            continue;
        }
        std::vector<std::size_t> cut;
        for (std::size_t q = 0; q < n; ++q) {
            if ((mask >> (n - 1 - q)) & 1U) {
                cut.push_back(q);
            }
        }
        cuts.push_back(std::move(cut));
    }
    return cuts;
}

} // namespace detail

/// sqrt(2 min_cut (1 - Tr ρ_cut²)) for a pure normalized state of n >= 2
/// qubits; by default the minimum runs over the n single-qubit cuts.
inline MetricReport gme_concurrence(const StateVector &psi, GmeOptions options = {}) {
    if (psi.num_qubits() < 2) {
        throw DimensionError("GME concurrence needs at least two qubits");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw ValidationError("GME concurrence needs a normalized state");
    }
    MetricReport report;
    report.metric = Metric::kGmeConcurrence;
    report.cuts = detail::bipartition_cuts(psi.num_qubits(), options.all_bipartitions);
    double least = std::numeric_limits<double>::infinity();
    for (const auto &cut : report.cuts) {
        const double v = std::sqrt(2.0 * linear_entropy(psi, cut));
        report.subsystem_values.push_back(v);
        least = std::min(least, v);
    }
    report.value = clamp_unit(least);
    return report;
}

} // namespace qswitch

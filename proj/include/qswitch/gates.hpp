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
 * Single-qubit gates, unitary pairs (U, U~) and their causal-order products.
 *
 * For a pair (U, U~) the forward order applies U~ first, U·U~, and the
 * backward order applies U first, U~·U.
 */

#pragma once

#include <cctype>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"
#include "qla.hpp"

namespace qswitch {

enum class Axis { X, Y, Z };

inline ComplexMatrix pauli(Axis axis) {
    switch (axis) {
    case Axis::X:
        return {{0.0, 1.0}, {1.0, 0.0}};
    case Axis::Y:
        return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}};
    case Axis::Z:
        return {{1.0, 0.0}, {0.0, -1.0}};
    }
    throw ValidationError("unknown Pauli axis");
}

/// exp(-i σ_y λ) with λ = two_lambda / 2, i.e. [[cos λ, -sin λ], [sin λ, cos λ]].
inline ComplexMatrix ry(double two_lambda) {
    const double c = std::cos(two_lambda / 2.0);
    const double s = std::sin(two_lambda / 2.0);
    return {{c, -s}, {s, c}};
}

/// A validated pair of 2x2 unitaries (U, U~).
class UnitaryPair {
  public:
    UnitaryPair() : u_(ComplexMatrix::identity(2)), u_tilde_(ComplexMatrix::identity(2)) {}

    UnitaryPair(ComplexMatrix u, ComplexMatrix u_tilde)
        : u_(std::move(u)), u_tilde_(std::move(u_tilde)) {
        check(u_, "u");
        check(u_tilde_, "u_tilde");
    }

    [[nodiscard]] const ComplexMatrix &u() const noexcept { return u_; }
    [[nodiscard]] const ComplexMatrix &u_tilde() const noexcept { return u_tilde_; }

    /// (U~, U): exchanges the roles of the two causal orders.
    [[nodiscard]] UnitaryPair swapped() const { return {u_tilde_, u_}; }

  private:
    static void check(const ComplexMatrix &m, const char *name) {
        if (m.rows() != 2 || m.cols() != 2) {
            throw ValidationError(std::string(name) + " must be 2x2, got " + m.shape());
        }
        if (!is_unitary(m, kUnitaryTol)) {
            throw ValidationError(std::string(name) + " is not unitary within 1e-12");
        }
    }

    ComplexMatrix u_;
    ComplexMatrix u_tilde_;
};

/// U·U~ (U~ acts first).
inline ComplexMatrix forward_order(const UnitaryPair &p) { return p.u() * p.u_tilde(); }

/// U~·U (U acts first).
inline ComplexMatrix backward_order(const UnitaryPair &p) { return p.u_tilde() * p.u(); }

/// (V, V~) = (⊗ U_i, ⊗ U~_i) in qubit order.
inline std::pair<ComplexMatrix, ComplexMatrix> local_tensor(std::span<const UnitaryPair> pairs) {
    if (pairs.empty()) {
        throw ValidationError("local_tensor needs at least one pair");
    }
    ComplexMatrix v = pairs.front().u();
    ComplexMatrix v_tilde = pairs.front().u_tilde();
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        v = kron(v, pairs[i].u());
        v_tilde = kron(v_tilde, pairs[i].u_tilde());
    }
    return {std::move(v), std::move(v_tilde)};
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

/// Splits "[[a,b],[c,d]]" into its four entry strings.
inline std::vector<std::string_view> matrix_literal_entries(std::string_view body) {
    body = trim(body);
    if (body.size() < 4 || body.front() != '[' || body.back() != ']') {
        throw ValidationError("matrix literal must look like [[a,b],[c,d]]");
    }
    body = trim(body.substr(1, body.size() - 2));
    std::vector<std::string_view> entries;
    std::size_t rows = 0;
    while (!body.empty()) {
        if (body.front() != '[') {
            throw ValidationError("matrix literal rows must be bracketed");
        }
        const auto close = body.find(']');
        if (close == std::string_view::npos) {
            throw ValidationError("unterminated matrix row");
        }
        std::string_view row = body.substr(1, close - 1);
        std::size_t cols = 0;
        for (;;) {
            const auto comma = row.find(',');
            entries.push_back(trim(row.substr(0, comma)));
            ++cols;
            if (comma == std::string_view::npos) {
                break;
            }
            row.remove_prefix(comma + 1);
        }
        if (cols != 2) {
            throw ValidationError("matrix literal rows need exactly 2 entries");
        }
        ++rows;
        body = trim(body.substr(close + 1));
        if (!body.empty()) {
            if (body.front() != ',') {
                throw ValidationError("expected ',' between matrix rows");
            }
            body = trim(body.substr(1));
        }
    }
    if (rows != 2) {
        throw ValidationError("matrix literal needs exactly 2 rows");
    }
    return entries;
}

inline std::string_view call_argument(std::string_view text, std::string_view name) {
    if (text.size() < name.size() + 2 || text.substr(0, name.size()) != name) {
        return {};
    }
    auto rest = trim(text.substr(name.size()));
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
        return {};
    }
    return rest.substr(1, rest.size() - 2);
}

} // namespace detail

/// Parses `pauli_x | pauli_y | pauli_z | identity | ry(<radians>) |
/// matrix([[a,b],[c,d]])`. Angles and entries are expressions (see
/// ExpressionParser), e.g. `ry(pi/2)` or `matrix([[0,-i],[i,0]])`.
inline ComplexMatrix parse_gate(std::string_view text) {
    const auto s = detail::trim(text);
    if (s == "pauli_x") {
        return pauli(Axis::X);
    }
    if (s == "pauli_y") {
        return pauli(Axis::Y);
    }
    if (s == "pauli_z") {
        return pauli(Axis::Z);
    }
    if (s == "identity") {
        return ComplexMatrix::identity(2);
    }
    if (const auto arg = detail::call_argument(s, "ry"); !arg.empty()) {
        return ry(evaluate_real(arg));
    }
    if (const auto arg = detail::call_argument(s, "matrix"); !arg.empty()) {
        const auto entries = detail::matrix_literal_entries(arg);
        ComplexMatrix m(2, 2);
        for (std::size_t k = 0; k < 4; ++k) {
            m(k / 2, k % 2) = evaluate_complex(entries[k]);
        }
        return m;
    }
    throw ValidationError("unknown gate '" + std::string(s) + "'");
}

} // namespace qswitch

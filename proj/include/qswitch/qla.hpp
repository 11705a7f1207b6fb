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
 * Dense complex linear algebra for small qubit registers: matrices, state
 * vectors, density matrices, Kronecker products, partial traces and a Jacobi
 * eigen/singular-value kernel.
 *
 * Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
 * basis index.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qswitch {

using Complex = std::complex<double>;

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kDensityTol = 1e-12;
inline constexpr double kEigenDust = 1e-12;

/// Row-major dense complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) {
            throw DimensionError("matrix entry count " + std::to_string(entries_.size()) +
                                 " does not match " + std::to_string(rows_) + "x" +
                                 std::to_string(cols_));
        }
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw DimensionError("ragged matrix literal");
            }
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> diag) {
        ComplexMatrix m(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m(i, i) = diag[i];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] std::span<const Complex> entries() const noexcept { return entries_; }

    Complex &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    [[nodiscard]] ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    [[nodiscard]] ComplexMatrix conjugate() const {
        ComplexMatrix out = *this;
        for (auto &z : out.entries_) {
            z = std::conj(z);
        }
        return out;
    }

    [[nodiscard]] ComplexMatrix transpose() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = (*this)(r, c);
            }
        }
        return out;
    }

    [[nodiscard]] Complex trace() const {
        if (!is_square()) {
            throw DimensionError("trace of a non-square matrix");
        }
        Complex t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &rhs) {
        require_same_shape(rhs);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            entries_[i] += rhs.entries_[i];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &rhs) {
        require_same_shape(rhs);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            entries_[i] -= rhs.entries_[i];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex scale) {
        for (auto &z : entries_) {
            z *= scale;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) {
        return lhs += rhs;
    }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) {
        return lhs -= rhs;
    }
    friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) { return lhs *= scale; }
    friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) { return rhs *= scale; }

    friend ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
        if (lhs.cols_ != rhs.rows_) {
            throw DimensionError("matrix product of " + lhs.shape() + " and " + rhs.shape());
        }
        ComplexMatrix out(lhs.rows_, rhs.cols_);
        for (std::size_t r = 0; r < lhs.rows_; ++r) {
            for (std::size_t k = 0; k < lhs.cols_; ++k) {
                const Complex a = lhs(r, k);
                if (a == Complex{}) {
                    continue;
                }
                for (std::size_t c = 0; c < rhs.cols_; ++c) {
                    out(r, c) += a * rhs(k, c);
                }
            }
        }
        return out;
    }

    [[nodiscard]] std::string shape() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

  private:
    void require_same_shape(const ComplexMatrix &rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
            throw DimensionError("shape mismatch " + shape() + " vs " + rhs.shape());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// max_{ij} |a_ij - b_ij|
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("shape mismatch " + a.shape() + " vs " + b.shape());
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return worst;
}

inline bool is_unitary(const ComplexMatrix &m, double tol = kUnitaryTol) {
    if (!m.is_square()) {
        return false;
    }
    return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows())) <= tol;
}

inline bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol) {
    return m.is_square() && max_abs_diff(m, m.adjoint()) <= tol;
}

/// (a ⊗ b)[i*R + k, j*C + l] = a[i,j] * b[k,l] with R, C the shape of b.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Left-to-right Kronecker product of a nonempty list.
inline ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) {
        throw DimensionError("kron of an empty factor list");
    }
    ComplexMatrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = kron(out, factors[i]);
    }
    return out;
}

namespace detail {

inline std::size_t qubits_for_dim(std::size_t dim, const char *what) {
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw DimensionError(std::string(what) + " dimension " + std::to_string(dim) +
                             " is not a power of two >= 2");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

} // namespace detail

/// Amplitude vector over num_qubits qubits.
class StateVector {
  public:
    StateVector() = default;

    explicit StateVector(std::vector<Complex> amplitudes)
        : num_qubits_(detail::qubits_for_dim(amplitudes.size(), "state")),
          amplitudes_(std::move(amplitudes)) {}

    StateVector(std::initializer_list<Complex> amplitudes)
        : StateVector(std::vector<Complex>(amplitudes)) {}

    static StateVector basis(std::size_t num_qubits, std::size_t index) {
        std::vector<Complex> amps(std::size_t{1} << num_qubits);
        if (index >= amps.size()) {
            throw DimensionError("basis index out of range");
        }
        amps[index] = 1.0;
        return StateVector(std::move(amps));
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

    Complex &operator[](std::size_t i) { return amplitudes_[i]; }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amplitudes_) {
            s += std::norm(a);
        }
        return s;
    }

    [[nodiscard]] double norm() const { return std::sqrt(norm_squared()); }

    StateVector &normalize() {
        const double n = norm();
        if (n == 0.0) {
            throw ValidationError("cannot normalize the zero vector");
        }
        for (auto &a : amplitudes_) {
            a /= n;
        }
        return *this;
    }

    [[nodiscard]] StateVector normalized() const {
        StateVector out = *this;
        return out.normalize();
    }

    StateVector &operator*=(Complex scale) {
        for (auto &a : amplitudes_) {
            a *= scale;
        }
        return *this;
    }

    StateVector &operator+=(const StateVector &rhs) {
        require_same_dim(rhs);
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            amplitudes_[i] += rhs.amplitudes_[i];
        }
        return *this;
    }

    StateVector &operator-=(const StateVector &rhs) {
        require_same_dim(rhs);
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            amplitudes_[i] -= rhs.amplitudes_[i];
        }
        return *this;
    }

    friend StateVector operator+(StateVector lhs, const StateVector &rhs) { return lhs += rhs; }
    friend StateVector operator-(StateVector lhs, const StateVector &rhs) { return lhs -= rhs; }
    friend StateVector operator*(Complex scale, StateVector rhs) { return rhs *= scale; }

  private:
    void require_same_dim(const StateVector &rhs) const {
        if (dim() != rhs.dim()) {
            throw DimensionError("state dimension mismatch");
        }
    }

    std::size_t num_qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

/// <a|b>
inline Complex inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("inner product of states with different dimension");
    }
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

inline double max_abs_diff(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("state dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

inline StateVector kron(const StateVector &a, const StateVector &b) {
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            amps[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return StateVector(std::move(amps));
}

inline StateVector kron_all(std::span<const StateVector> factors) {
    if (factors.empty()) {
        throw DimensionError("kron of an empty factor list");
    }
    StateVector out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = kron(out, factors[i]);
    }
    return out;
}

/// Matrix-vector product. The result is not renormalized.
inline StateVector apply(const ComplexMatrix &op, const StateVector &s) {
    if (!op.is_square() || op.cols() != s.dim()) {
        throw DimensionError("cannot apply " + op.shape() + " operator to a state of dimension " +
                             std::to_string(s.dim()));
    }
    std::vector<Complex> out(s.dim());
    for (std::size_t r = 0; r < op.rows(); ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < op.cols(); ++c) {
            acc += op(r, c) * s[c];
        }
        out[r] = acc;
    }
    return StateVector(std::move(out));
}

/// Square matrix of dimension 2^num_qubits with unit trace.
class DensityMatrix {
  public:
    DensityMatrix() = default;

    explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
        if (!matrix_.is_square()) {
            throw DimensionError("density matrix must be square, got " + matrix_.shape());
        }
        num_qubits_ = detail::qubits_for_dim(matrix_.rows(), "density matrix");
    }

    /// |s><s| for a state that should already be normalized.
    static DensityMatrix from_state(const StateVector &s) {
        ComplexMatrix m(s.dim(), s.dim());
        for (std::size_t r = 0; r < s.dim(); ++r) {
            for (std::size_t c = 0; c < s.dim(); ++c) {
                m(r, c) = s[r] * std::conj(s[c]);
            }
        }
        return DensityMatrix(std::move(m));
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return matrix_.rows(); }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return matrix_; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

  private:
    std::size_t num_qubits_ = 0;
    ComplexMatrix matrix_;
};

namespace detail {

/// Cyclic Jacobi on a real symmetric n x n matrix stored row-major. On return
/// the diagonal of `a` holds the eigenvalues; `v` (if given) holds the
/// eigenvectors as columns.
inline void symmetric_jacobi(std::vector<double> &a, std::size_t n, std::vector<double> *v) {
    auto at = [&](std::size_t r, std::size_t c) -> double & { return a[r * n + c]; };
    if (v != nullptr) {
        v->assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            (*v)[i * n + i] = 1.0;
        }
    }
    double scale = 0.0;
    for (double x : a) {
        scale += x * x;
    }
    if (scale == 0.0) {
        return;
    }
    const double threshold = 1e-30 * scale;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += at(p, q) * at(p, q);
            }
        }
        if (off <= threshold) {
            return;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                if (v != nullptr) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = (*v)[k * n + p];
                        const double vkq = (*v)[k * n + q];
                        (*v)[k * n + p] = c * vkp - s * vkq;
                        (*v)[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
}

/// Real embedding [[Re, -Im], [Im, Re]] of a complex matrix.
inline std::vector<double> real_embedding(const ComplexMatrix &m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    std::vector<double> out(4 * r * c);
    const std::size_t w = 2 * c;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            const Complex z = m(i, j);
            out[i * w + j] = z.real();
            out[i * w + j + c] = -z.imag();
            out[(i + r) * w + j] = z.imag();
            out[(i + r) * w + j + c] = z.real();
        }
    }
    return out;
}

/// Eigenvalues of the real embedding come in equal pairs; keep one of each.
inline std::vector<double> pick_pairs_descending(std::vector<double> doubled) {
    std::sort(doubled.begin(), doubled.end(), std::greater<>());
    std::vector<double> out;
    out.reserve(doubled.size() / 2);
    for (std::size_t i = 0; i < doubled.size(); i += 2) {
        out.push_back(0.5 * (doubled[i] + doubled[i + 1]));
    }
    return out;
}

inline void require_hermitian(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionError("expected a square matrix, got " + m.shape());
    }
    if (!is_hermitian(m, kHermitianTol)) {
        throw ValidationError("matrix is not Hermitian within " + std::to_string(kHermitianTol));
    }
}

} // namespace detail

/// Real eigenvalues of a Hermitian matrix in descending order.
inline std::vector<double> eigvals_hermitian(const ComplexMatrix &m) {
    detail::require_hermitian(m);
    const std::size_t n2 = 2 * m.rows();
    auto a = detail::real_embedding(m);
    detail::symmetric_jacobi(a, n2, nullptr);
    std::vector<double> diag(n2);
    for (std::size_t i = 0; i < n2; ++i) {
        diag[i] = a[i * n2 + i];
    }
    return detail::pick_pairs_descending(std::move(diag));
}

/// f(m) for Hermitian m, through its spectral decomposition.
inline ComplexMatrix hermitian_function(const ComplexMatrix &m,
                                        const std::function<double(double)> &f) {
    detail::require_hermitian(m);
    const std::size_t n = m.rows();
    const std::size_t n2 = 2 * n;
    auto a = detail::real_embedding(m);
    std::vector<double> v;
    detail::symmetric_jacobi(a, n2, &v);
    // The embedding is a *-homomorphism, so f acts blockwise on it as well.
    std::vector<double> fa(n2 * n2, 0.0);
    for (std::size_t k = 0; k < n2; ++k) {
        const double fk = f(a[k * n2 + k]);
        if (fk == 0.0) {
            continue;
        }
        for (std::size_t r = 0; r < n2; ++r) {
            const double vr = v[r * n2 + k] * fk;
            for (std::size_t c = 0; c < n2; ++c) {
                fa[r * n2 + c] += vr * v[c * n2 + k];
            }
        }
    }
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out(r, c) = Complex(fa[r * n2 + c], fa[(r + n) * n2 + c]);
        }
    }
    return out;
}

/// Singular values in descending order (one-sided Jacobi). Small singular
/// values carry absolute error of order eps * ||m||, unlike square roots of
/// eigenvalues of m^dagger m.
inline std::vector<double> singular_values(const ComplexMatrix &m) {
    const std::size_t rows = 2 * m.rows();
    const std::size_t cols = 2 * m.cols();
    auto a = detail::real_embedding(m);
    auto col = [&](std::size_t r, std::size_t c) -> double & { return a[r * cols + c]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                double gamma = 0.0;
                for (std::size_t r = 0; r < rows; ++r) {
                    alpha += col(r, p) * col(r, p);
                    beta += col(r, q) * col(r, q);
                    gamma += col(r, p) * col(r, q);
                }
                if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t =
                    (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const double xp = col(r, p);
                    const double xq = col(r, q);
                    col(r, p) = c * xp - s * xq;
                    col(r, q) = s * xp + c * xq;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }
    std::vector<double> sv(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            s += col(r, c) * col(r, c);
        }
        sv[c] = std::sqrt(s);
    }
    return detail::pick_pairs_descending(std::move(sv));
}

namespace detail {

inline std::vector<std::size_t> checked_keep(std::span<const std::size_t> keep,
                                             std::size_t num_qubits) {
    if (keep.empty()) {
        throw ValidationError("partial trace needs at least one kept qubit");
    }
    std::vector<std::size_t> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("duplicate qubit index in kept set");
    }
    if (sorted.back() >= num_qubits) {
        throw ValidationError("qubit index " + std::to_string(sorted.back()) +
                              " out of range for " + std::to_string(num_qubits) + " qubits");
    }
    return sorted;
}

/// Full basis index from the bits of the kept and traced subsystems.
struct IndexSplitter {
    std::size_t num_qubits;
    std::vector<std::size_t> kept;
    std::vector<std::size_t> traced;

    IndexSplitter(std::size_t n, std::vector<std::size_t> keep) : num_qubits(n), kept(std::move(keep)) {
        for (std::size_t q = 0; q < n; ++q) {
            if (!std::binary_search(kept.begin(), kept.end(), q)) {
                traced.push_back(q);
            }
        }
    }

    [[nodiscard]] std::size_t compose(std::size_t kept_index, std::size_t traced_index) const {
        std::size_t full = 0;
        scatter(full, kept, kept_index);
        scatter(full, traced, traced_index);
        return full;
    }

  private:
    void scatter(std::size_t &full, const std::vector<std::size_t> &qubits,
                 std::size_t index) const {
        const std::size_t m = qubits.size();
        for (std::size_t k = 0; k < m; ++k) {
            if ((index >> (m - 1 - k)) & 1U) {
                full |= std::size_t{1} << (num_qubits - 1 - qubits[k]);
            }
        }
    }
};

} // namespace detail

/// Reduced density matrix over `keep` (listed in ascending qubit order).
inline DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    const detail::IndexSplitter split(rho.num_qubits(),
                                      detail::checked_keep(keep, rho.num_qubits()));
    const std::size_t kd = std::size_t{1} << split.kept.size();
    const std::size_t td = std::size_t{1} << split.traced.size();
    ComplexMatrix out(kd, kd);
    for (std::size_t r = 0; r < kd; ++r) {
        for (std::size_t c = 0; c < kd; ++c) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < td; ++t) {
                acc += rho(split.compose(r, t), split.compose(c, t));
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix &rho,
                                   std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Amplitudes of a pure state arranged as a (kept x traced) matrix.
inline ComplexMatrix bipartite_amplitudes(const StateVector &s, std::span<const std::size_t> keep) {
    const detail::IndexSplitter split(s.num_qubits(), detail::checked_keep(keep, s.num_qubits()));
    const std::size_t kd = std::size_t{1} << split.kept.size();
    const std::size_t td = std::size_t{1} << split.traced.size();
    ComplexMatrix m(kd, td);
    for (std::size_t r = 0; r < kd; ++r) {
        for (std::size_t t = 0; t < td; ++t) {
            m(r, t) = s[split.compose(r, t)];
        }
    }
    return m;
}

/// Reduced state of a pure state, M M^dagger without forming |s><s|.
inline DensityMatrix reduced_state(const StateVector &s, std::span<const std::size_t> keep) {
    const ComplexMatrix m = bipartite_amplitudes(s, keep);
    return DensityMatrix(m * m.adjoint());
}

inline DensityMatrix reduced_state(const StateVector &s, std::initializer_list<std::size_t> keep) {
    return reduced_state(s, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Hermitian within kDensityTol, unit trace within kDensityTol, spectrum >= -1e-10.
inline bool is_valid_density(const DensityMatrix &rho) {
    const auto &m = rho.matrix();
    if (max_abs_diff(m, m.adjoint()) > kDensityTol) {
        return false;
    }
    if (std::abs(m.trace() - Complex(1.0)) > kDensityTol) {
        return false;
    }
    const auto ev = eigvals_hermitian(m);
    return ev.back() >= -1e-10;
}

/// Applies a 2x2 gate to qubit `q` of `s` in place.
inline void apply_on_qubit(const ComplexMatrix &gate, std::size_t q, StateVector &s) {
    if (gate.rows() != 2 || gate.cols() != 2 || q >= s.num_qubits()) {
        throw DimensionError("single-qubit gate does not fit qubit " + std::to_string(q));
    }
    const std::size_t stride = std::size_t{1} << (s.num_qubits() - 1 - q);
    for (std::size_t base = 0; base < s.dim(); ++base) {
        if (base & stride) {
            continue;
        }
        const Complex a0 = s[base];
        const Complex a1 = s[base | stride];
        s[base] = gate(0, 0) * a0 + gate(0, 1) * a1;
        s[base | stride] = gate(1, 0) * a0 + gate(1, 1) * a1;
    }
}

/// (⊗_q ops[q]) |s> without forming the Kronecker product.
inline StateVector apply_local(std::span<const ComplexMatrix> ops, StateVector s) {
    if (ops.size() != s.num_qubits()) {
        throw DimensionError("need one local operator per qubit");
    }
    for (std::size_t q = 0; q < ops.size(); ++q) {
        apply_on_qubit(ops[q], q, s);
    }
    return s;
}

/// (Y⊗Y) ρ* (Y⊗Y) for a two-qubit density matrix.
inline DensityMatrix spin_flip(const DensityMatrix &rho) {
    if (rho.num_qubits() != 2) {
        throw DimensionError("spin flip is defined on two qubits, got " +
                             std::to_string(rho.num_qubits()));
    }
    const ComplexMatrix y{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}};
    const ComplexMatrix yy = kron(y, y);
    return DensityMatrix(yy * rho.matrix().conjugate() * yy);
}

} // namespace qswitch

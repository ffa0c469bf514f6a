// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file basis_transform.hpp
 * @brief Single-particle basis changes on first-quantized states, one register at a time.
 *
 * Convention: new orbital i = sum_j U_ij old orbital j, so a register holding |j> maps to
 * sum_i U_ij |i>. Orbital p sits at register value p; value 0 and the values above M
 * (sentinel included) are left alone by the padded matrix.
 */

#pragma once

#include "hyquant/circuit.hpp"
#include "hyquant/encodings.hpp"
#include "hyquant/error.hpp"
#include "hyquant/layout.hpp"
#include "hyquant/statevector.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

namespace hyq {

inline constexpr double kBasisUnitaryTol = 1e-10;
inline constexpr double kIsometryTol = 1e-8;

/// An M1 x M2 single-particle transformation (rows: target basis, columns: source basis).
struct BasisMatrix {
    Eigen::MatrixXcd u;

    [[nodiscard]] int rows() const noexcept { return static_cast<int>(u.rows()); }
    [[nodiscard]] int cols() const noexcept { return static_cast<int>(u.cols()); }
};

/// d x d extension, d = 2^width: U in rows/cols 1..M1 / 1..M2, identity on the rest.
inline Eigen::MatrixXcd padded_matrix(const BasisMatrix& m, int width) {
    const int d = 1 << width;
    require(std::max(m.rows(), m.cols()) < d - 1, ErrorCode::DimMismatch,
            "basis matrix does not fit the register width");
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(d, d);
    p.block(1, 1, m.rows(), m.cols()) = m.u;
    return p;
}

[[nodiscard]] inline bool padded_is_unitary(const BasisMatrix& m, int width, double tol = kBasisUnitaryTol) {
    if (m.rows() != m.cols()) return false;
    const Eigen::MatrixXcd p = padded_matrix(m, width);
    return (p.adjoint() * p - Eigen::MatrixXcd::Identity(p.rows(), p.cols())).cwiseAbs().maxCoeff() <= tol;
}

struct TransformResult {
    EncodedState state;
    GateCount gate_count;
};

namespace detail {

inline std::vector<cplx> row_major(const Eigen::MatrixXcd& m) {
    std::vector<cplx> out(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
    return out;
}

inline Circuit register_transform_circuit(const RegisterLayout& l, const Eigen::MatrixXcd& padded) {
    Circuit c(l);
    const auto m = row_major(padded);
    for (int r = 0; r < l.num_registers(); ++r) {
        std::vector<Qubit> qs;
        for (int k = 0; k < l.width(); ++k) qs.push_back(l.reg_qubit(r, k));
        c.add(gates::register_unitary(std::move(qs), m));
    }
    return c;
}

inline void require_first_quantized(const EncodedState& es) {
    require(es.discipline == Discipline::FirstQuantized, ErrorCode::DisciplineMismatch,
            "register-wise basis transforms need a first-quantized state");
}

} // namespace detail

/// Applies U to every register. The count records one d x d register unitary per register.
inline TransformResult apply_register_transform(const EncodedState& es, const BasisMatrix& m) {
    detail::require_first_quantized(es);
    const RegisterLayout& l = es.layout();
    require(m.rows() == l.num_orbitals() && m.cols() == l.num_orbitals(), ErrorCode::NotUnitary,
            "basis matrix must be square with the state's orbital count");
    require(padded_is_unitary(m, l.width()), ErrorCode::NotUnitary, "padded basis matrix is not unitary");
    const Circuit c = detail::register_transform_circuit(l, padded_matrix(m, l.width()));
    return {{apply_circuit(es.state, c), es.discipline, es.num_electrons}, count_gates(c)};
}

enum class QftDirection { Forward, Inverse };

/// Unitary DFT on M = 2^n orbitals; orbital p carries Fourier index p mod M.
inline BasisMatrix dft_matrix(int num_orbitals, QftDirection dir) {
    require(num_orbitals >= 2 && std::has_single_bit(static_cast<unsigned>(num_orbitals)), ErrorCode::BadDimension,
            "QFT needs a power-of-two orbital count");
    const int m = num_orbitals;
    const double sign = dir == QftDirection::Forward ? 1.0 : -1.0;
    BasisMatrix out{Eigen::MatrixXcd(m, m)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int fi = (i + 1) % m;
            const int fj = (j + 1) % m;
            const double theta = sign * 2.0 * std::numbers::pi * fi * fj / m;
            out.u(i, j) = std::polar(1.0 / std::sqrt(static_cast<double>(m)), theta);
        }
    return out;
}

/**
 * Approximate QFT on n = log2 M qubits: n Hadamards, controlled phases only up to distance
 * ceil(log2 n) (each as 2 CNOT + 3 phase), and floor(n/2) bit-reversal swaps (3 CNOT each).
 */
inline GateCount approximate_qft_count(int num_orbitals) {
    const int n = std::countr_zero(static_cast<unsigned>(num_orbitals));
    const int cutoff = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(n - 1))));
    long long cphase = 0;
    for (int q = 0; q < n; ++q) cphase += std::min(cutoff, n - 1 - q);
    GateCount c;
    c.single_qubit = n + 3 * cphase;
    c.cnot = 2 * cphase + 3LL * (n / 2);
    return c;
}

/// Fourier transform of every register; simulated exactly, counted as an approximate QFT.
inline TransformResult qft_register_transform(const EncodedState& es, QftDirection dir) {
    detail::require_first_quantized(es);
    const RegisterLayout& l = es.layout();
    const BasisMatrix f = dft_matrix(l.num_orbitals(), dir);
    const Circuit c = detail::register_transform_circuit(l, padded_matrix(f, l.width()));
    GateCount count;
    for (int r = 0; r < l.num_registers(); ++r) count += approximate_qft_count(l.num_orbitals());
    return {{apply_circuit(es.state, c), es.discipline, es.num_electrons}, count};
}

/**
 * Completes a table with orthonormal rows to a square unitary by Gram-Schmidt against the
 * canonical basis vectors in index order. The input rows stay on top.
 */
inline BasisMatrix mo_to_pw_matrix(const Eigen::MatrixXcd& table) {
    const auto r = table.rows();
    const auto c = table.cols();
    require(r >= 1 && c >= 1, ErrorCode::NotIsometry, "empty overlap table");
    require(r <= c, ErrorCode::NotIsometry, "more rows than columns cannot be orthonormal");
    const Eigen::MatrixXcd gram = table * table.adjoint();
    require((gram - Eigen::MatrixXcd::Identity(r, r)).cwiseAbs().maxCoeff() <= kIsometryTol,
            ErrorCode::NotIsometry, "overlap table rows are not orthonormal");

    std::vector<Eigen::VectorXcd> rows;
    for (Eigen::Index i = 0; i < r; ++i) rows.push_back(table.row(i).transpose());
    for (Eigen::Index k = 0; k < c && static_cast<Eigen::Index>(rows.size()) < c; ++k) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Unit(c, k);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : rows) v -= q * q.dot(v);
        const double n = v.norm();
        if (n > 1e-6) rows.push_back(v / n);
    }
    BasisMatrix out{Eigen::MatrixXcd(c, c)};
    for (Eigen::Index i = 0; i < c; ++i) out.u.row(i) = rows[static_cast<std::size_t>(i)].transpose();
    return out;
}

} // namespace hyq

// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file circuit.hpp
 * @brief Gate-level IR: gates, ordered circuits over a RegisterLayout, and gate counting.
 */

#pragma once

#include "hyquant/error.hpp"
#include "hyquant/layout.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace hyq {

using cplx = std::complex<double>;

enum class GateKind {
    X,
    Z,
    H,
    Phase,
    CNOT,
    CZ,
    Toffoli,
    MultiControlledX,
    ControlledSwap,
    GeneralSingleQubit,
    RegisterUnitary,
};

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<Qubit> controls;
    std::vector<Qubit> targets;
    /// Phase angle for Phase; otherwise unused.
    double angle = 0.0;
    /// Row-major d x d matrix for GeneralSingleQubit (d = 2) and RegisterUnitary (d = 2^targets).
    std::vector<cplx> matrix;

    friend bool operator==(const Gate&, const Gate&) = default;
};

namespace detail {

inline bool is_unitary(std::span<const cplx> m, std::size_t dim, double tol) {
    if (m.size() != dim * dim) return false;
    // ||U^dagger U - I||_F bounds the operator-norm deviation from above.
    double err = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k) acc += std::conj(m[k * dim + i]) * m[k * dim + j];
            if (i == j) acc -= 1.0;
            err += std::norm(acc);
        }
    }
    return std::sqrt(err) <= tol;
}

inline std::vector<cplx> adjoint(std::span<const cplx> m, std::size_t dim) {
    std::vector<cplx> out(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) out[j * dim + i] = std::conj(m[i * dim + j]);
    return out;
}

} // namespace detail

inline constexpr double kUnitaryTol = 1e-12;

namespace gates {

inline Gate make(GateKind kind, std::vector<Qubit> controls, std::vector<Qubit> targets, double angle = 0.0,
                 std::vector<cplx> matrix = {}) {
    return {kind, std::move(controls), std::move(targets), angle, std::move(matrix)};
}

inline Gate x(Qubit q) { return make(GateKind::X, {}, {q}); }
inline Gate z(Qubit q) { return make(GateKind::Z, {}, {q}); }
inline Gate h(Qubit q) { return make(GateKind::H, {}, {q}); }
inline Gate phase(Qubit q, double theta) { return make(GateKind::Phase, {}, {q}, theta); }
inline Gate cnot(Qubit c, Qubit t) { return make(GateKind::CNOT, {c}, {t}); }
inline Gate cz(Qubit c, Qubit t) { return make(GateKind::CZ, {c}, {t}); }
inline Gate toffoli(Qubit c0, Qubit c1, Qubit t) { return make(GateKind::Toffoli, {c0, c1}, {t}); }
inline Gate mcx(std::vector<Qubit> controls, Qubit t) { return make(GateKind::MultiControlledX, std::move(controls), {t}); }
inline Gate cswap(Qubit c, Qubit a, Qubit b) { return make(GateKind::ControlledSwap, {c}, {a, b}); }
inline Gate unitary1(Qubit q, std::vector<cplx> m) { return make(GateKind::GeneralSingleQubit, {}, {q}, 0.0, std::move(m)); }
/// `qubits` are the register bits, least significant first.
inline Gate register_unitary(std::vector<Qubit> qubits, std::vector<cplx> m) {
    return make(GateKind::RegisterUnitary, {}, std::move(qubits), 0.0, std::move(m));
}

} // namespace gates

/// Formal inverse of a single gate.
inline Gate inverse(const Gate& g) {
    Gate out = g;
    switch (g.kind) {
        case GateKind::Phase: out.angle = -g.angle; break;
        case GateKind::GeneralSingleQubit: out.matrix = detail::adjoint(g.matrix, 2); break;
        case GateKind::RegisterUnitary:
            out.matrix = detail::adjoint(g.matrix, std::size_t{1} << g.targets.size());
            break;
        default: break;  // the rest are involutions
    }
    return out;
}

inline void validate_gate(const Gate& g, int total_qubits) {
    auto in_range = [&](Qubit q) { return q >= 0 && q < total_qubits; };
    require(std::all_of(g.controls.begin(), g.controls.end(), in_range) &&
                std::all_of(g.targets.begin(), g.targets.end(), in_range),
            ErrorCode::BadParam, "gate qubit out of layout bounds");
    std::vector<Qubit> all = g.controls;
    all.insert(all.end(), g.targets.begin(), g.targets.end());
    std::sort(all.begin(), all.end());
    require(std::adjacent_find(all.begin(), all.end()) == all.end(), ErrorCode::BadParam,
            "gate controls and targets must be distinct");

    auto expect = [&](std::size_t nc, std::size_t nt) {
        require(g.controls.size() == nc && g.targets.size() == nt, ErrorCode::BadParam,
                "wrong operand count for gate");
    };
    switch (g.kind) {
        case GateKind::X:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::Phase: expect(0, 1); break;
        case GateKind::CNOT:
        case GateKind::CZ: expect(1, 1); break;
        case GateKind::Toffoli: expect(2, 1); break;
        case GateKind::MultiControlledX:
            require(g.targets.size() == 1, ErrorCode::BadParam, "MCX takes one target");
            break;
        case GateKind::ControlledSwap: expect(1, 2); break;
        case GateKind::GeneralSingleQubit:
            expect(0, 1);
            require(detail::is_unitary(g.matrix, 2, kUnitaryTol), ErrorCode::NotUnitary,
                    "single-qubit matrix is not unitary");
            break;
        case GateKind::RegisterUnitary:
            require(g.controls.empty() && !g.targets.empty() && g.targets.size() <= 16,
                    ErrorCode::BadParam,
                    "register unitary takes up to 16 target qubits and no controls");
            require(detail::is_unitary(g.matrix, std::size_t{1} << g.targets.size(), kUnitaryTol),
                    ErrorCode::NotUnitary, "register matrix is not unitary");
            break;
    }
}

class Circuit {
public:
    Circuit() = default;
    explicit Circuit(RegisterLayout layout) : layout_(layout) {}

    [[nodiscard]] const RegisterLayout& layout() const noexcept { return layout_; }
    [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

    Circuit& add(Gate g) {
        validate_gate(g, layout_.total_qubits());
        gates_.push_back(std::move(g));
        return *this;
    }

    /// Appends `other` after this circuit; layouts must agree.
    Circuit& append(const Circuit& other) {
        require(layout_.same_shape(other.layout_), ErrorCode::DimMismatch,
                "cannot compose circuits over different layouts");
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
        return *this;
    }

    /// Reversed gate list with each gate inverted.
    [[nodiscard]] Circuit inverse() const {
        Circuit out(layout_);
        out.gates_.reserve(gates_.size());
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(hyq::inverse(*it));
        return out;
    }

    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.layout_ == b.layout_ && a.gates_ == b.gates_;
    }

private:
    RegisterLayout layout_;
    std::vector<Gate> gates_;
};

/// `a` followed by `b`.
inline Circuit compose(const Circuit& a, const Circuit& b) {
    Circuit out = a;
    out.append(b);
    return out;
}

/// A circuit carrying an exact complex prefactor (e.g. the i of an even Majorana).
struct ScaledCircuit {
    cplx scalar{1.0, 0.0};
    Circuit circuit;
};

// ---------------------------------------------------------------------------
// Gate counting
// ---------------------------------------------------------------------------

struct GateCount {
    long long toffoli_equiv = 0;
    long long cnot = 0;
    long long single_qubit = 0;
    /// Sum of d^2 over RegisterUnitary gates.
    long long register_unitary_dim_sum = 0;

    GateCount& operator+=(const GateCount& o) noexcept {
        toffoli_equiv += o.toffoli_equiv;
        cnot += o.cnot;
        single_qubit += o.single_qubit;
        register_unitary_dim_sum += o.register_unitary_dim_sum;
        return *this;
    }
    friend GateCount operator+(GateCount a, const GateCount& b) noexcept { return a += b; }
    friend bool operator==(const GateCount&, const GateCount&) = default;
};

/// Counting convention: MCX(k) -> k-1 Toffolis (linear ladder), CSWAP -> 1 Toffoli + 2 CNOT.
inline GateCount count_gate(const Gate& g) noexcept {
    GateCount c;
    switch (g.kind) {
        case GateKind::X:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::Phase:
        case GateKind::GeneralSingleQubit: c.single_qubit = 1; break;
        case GateKind::CNOT:
        case GateKind::CZ: c.cnot = 1; break;
        case GateKind::Toffoli: c.toffoli_equiv = 1; break;
        case GateKind::MultiControlledX: {
            const auto k = static_cast<long long>(g.controls.size());
            if (k == 0) c.single_qubit = 1;
            else if (k == 1) c.cnot = 1;
            else c.toffoli_equiv = k - 1;
            break;
        }
        case GateKind::ControlledSwap:
            c.toffoli_equiv = 1;
            c.cnot = 2;
            break;
        case GateKind::RegisterUnitary: {
            const long long d = 1LL << g.targets.size();
            c.register_unitary_dim_sum = d * d;
            break;
        }
    }
    return c;
}

inline GateCount count_gates(const Circuit& circuit) noexcept {
    GateCount total;
    for (const Gate& g : circuit.gates()) total += count_gate(g);
    return total;
}

} // namespace hyq

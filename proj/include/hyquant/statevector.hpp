// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file statevector.hpp
 * @brief Dense statevector over a RegisterLayout and the circuit simulator.
 *
 * Basis index bit q is qubit q. The simulator defers X gates in a frame mask and
 * folds it into control/phase polarities, so the long runs of X-conjugations in the
 * comparator circuits cost nothing; dense gates flush the frame on their qubits first.
 */

#pragma once

#include "hyquant/circuit.hpp"
#include "hyquant/error.hpp"
#include "hyquant/layout.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace hyq {

using Index = std::uint64_t;

class Statevector {
public:
    Statevector() = default;

    /// |0...0> over `layout`.
    explicit Statevector(const RegisterLayout& layout) : layout_(layout) {
        require(!layout.is_counting_only(), ErrorCode::CapExceeded,
                "counting-only layouts cannot be simulated");
        require(layout.total_qubits() <= kMaxSimQubits, ErrorCode::CapExceeded,
                "statevector exceeds the qubit cap");
        amps_.assign(Index{1} << layout.total_qubits(), cplx{0.0, 0.0});
        amps_[0] = 1.0;
    }

    static Statevector basis(const RegisterLayout& layout, Index index) {
        Statevector sv(layout);
        require(index < sv.amps_.size(), ErrorCode::BadParam, "basis index out of range");
        sv.amps_[0] = 0.0;
        sv.amps_[index] = 1.0;
        return sv;
    }

    static Statevector zero(const RegisterLayout& layout) {
        Statevector sv(layout);
        sv.amps_[0] = 0.0;
        return sv;
    }

    [[nodiscard]] const RegisterLayout& layout() const noexcept { return layout_; }
    [[nodiscard]] int num_qubits() const noexcept { return layout_.total_qubits(); }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }
    [[nodiscard]] cplx operator[](Index i) const { return amps_[i]; }
    [[nodiscard]] cplx& operator[](Index i) { return amps_[i]; }

    [[nodiscard]] double norm() const noexcept {
        double s = 0.0;
        for (const cplx& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    Statevector& operator*=(cplx s) noexcept {
        for (cplx& a : amps_) a *= s;
        return *this;
    }

    /// this += s * other (same layout).
    Statevector& add_scaled(cplx s, const Statevector& other) {
        require(layout_.same_shape(other.layout_), ErrorCode::DimMismatch, "layout mismatch");
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += s * other.amps_[i];
        return *this;
    }

    void apply(const Circuit& circuit);

private:
    RegisterLayout layout_;
    std::vector<cplx> amps_;
};

/// <a|b>
inline cplx inner(const Statevector& a, const Statevector& b) {
    require(a.size() == b.size(), ErrorCode::DimMismatch, "statevector size mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// Max |a_i - b_i|.
inline double max_deviation(const Statevector& a, const Statevector& b) {
    require(a.size() == b.size(), ErrorCode::DimMismatch, "statevector size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

namespace detail {

/// Calls fn(i) for every index with (i & fixed_mask) == fixed_value.
template <typename Fn>
inline void for_each_fixed(Index dim_mask, Index fixed_mask, Index fixed_value, Fn&& fn) {
    const Index free = dim_mask & ~fixed_mask;
    Index s = 0;
    do {
        fn(s | fixed_value);
        s = (s - free) & free;
    } while (s != 0);
}

class FrameSimulator {
public:
    FrameSimulator(std::span<cplx> amps, int num_qubits)
        : a_(amps), dim_mask_((Index{1} << num_qubits) - 1) {}

    ~FrameSimulator() { flush(dim_mask_); }

    void apply(const Gate& g) {
        switch (g.kind) {
            case GateKind::X: frame_ ^= bit(g.targets[0]); break;
            case GateKind::CNOT:
            case GateKind::Toffoli:
            case GateKind::MultiControlledX: controlled_x(g.controls, g.targets[0]); break;
            case GateKind::ControlledSwap: controlled_swap(g.controls[0], g.targets[0], g.targets[1]); break;
            case GateKind::Z: diagonal(bit(g.targets[0]), cplx{-1.0, 0.0}); break;
            case GateKind::CZ: diagonal(bit(g.controls[0]) | bit(g.targets[0]), cplx{-1.0, 0.0}); break;
            case GateKind::Phase: diagonal(bit(g.targets[0]), std::polar(1.0, g.angle)); break;
            case GateKind::H: {
                const double r = 1.0 / std::sqrt(2.0);
                const cplx m[4] = {r, r, r, -r};
                single(g.targets[0], m);
                break;
            }
            case GateKind::GeneralSingleQubit: single(g.targets[0], g.matrix.data()); break;
            case GateKind::RegisterUnitary: register_unitary(g.targets, g.matrix); break;
        }
    }

private:
    static Index bit(Qubit q) { return Index{1} << q; }

    /// Applies pending X's on `bits` to the amplitude array.
    void flush(Index bits) {
        const Index m = bits & frame_;
        if (m == 0) return;
        for (Index i = 0; i <= dim_mask_; ++i) {
            const Index j = i ^ m;
            if (i < j) std::swap(a_[i], a_[j]);
        }
        frame_ &= ~m;
    }

    void controlled_x(const std::vector<Qubit>& controls, Qubit target) {
        Index cmask = 0;
        for (Qubit c : controls) cmask |= bit(c);
        const Index t = bit(target);
        // A control reads logical 1 where the physical bit differs from the frame bit.
        const Index cval = cmask & ~frame_;
        for_each_fixed(dim_mask_, cmask | t, cval, [&](Index i) { std::swap(a_[i], a_[i | t]); });
    }

    void controlled_swap(Qubit control, Qubit q0, Qubit q1) {
        const Index b0 = bit(q0);
        const Index b1 = bit(q1);
        if (((frame_ & b0) != 0) != ((frame_ & b1) != 0)) flush(b0 | b1);
        const Index c = bit(control);
        const Index cval = c & ~frame_;
        for_each_fixed(dim_mask_, c | b0 | b1, cval | b0,
                       [&](Index i) { std::swap(a_[i], a_[i ^ b0 ^ b1]); });
    }

    void diagonal(Index on_bits, cplx factor) {
        for_each_fixed(dim_mask_, on_bits, on_bits & ~frame_, [&](Index i) { a_[i] *= factor; });
    }

    void single(Qubit q, const cplx* m) {
        const Index b = bit(q);
        flush(b);
        for_each_fixed(dim_mask_, b, 0, [&](Index i) {
            const cplx v0 = a_[i];
            const cplx v1 = a_[i | b];
            a_[i] = m[0] * v0 + m[1] * v1;
            a_[i | b] = m[2] * v0 + m[3] * v1;
        });
    }

    void register_unitary(const std::vector<Qubit>& qubits, const std::vector<cplx>& m) {
        Index rmask = 0;
        for (Qubit q : qubits) rmask |= bit(q);
        flush(rmask);
        const std::size_t d = std::size_t{1} << qubits.size();
        std::vector<Index> offset(d);
        for (std::size_t v = 0; v < d; ++v) {
            Index o = 0;
            for (std::size_t k = 0; k < qubits.size(); ++k)
                if ((v >> k) & 1U) o |= bit(qubits[k]);
            offset[v] = o;
        }
        std::vector<cplx> in(d);
        for_each_fixed(dim_mask_, rmask, 0, [&](Index base) {
            for (std::size_t v = 0; v < d; ++v) in[v] = a_[base | offset[v]];
            for (std::size_t r = 0; r < d; ++r) {
                cplx acc = 0.0;
                for (std::size_t c = 0; c < d; ++c) acc += m[r * d + c] * in[c];
                a_[base | offset[r]] = acc;
            }
        });
    }

    std::span<cplx> a_;
    Index dim_mask_;
    Index frame_ = 0;
};

/// Gates that map each basis state to one basis state times a phase.
inline bool is_classical(const Gate& g) noexcept {
    switch (g.kind) {
        case GateKind::H:
        case GateKind::GeneralSingleQubit:
        case GateKind::RegisterUnitary: return false;
        default: return true;
    }
}

/// Pushes one basis index through a classical gate, accumulating its phase.
inline void classical_step(const Gate& g, Index& i, cplx& phase) {
    auto bit = [](Qubit q) { return Index{1} << q; };
    auto controls_on = [&] {
        for (Qubit c : g.controls)
            if (!(i & bit(c))) return false;
        return true;
    };
    switch (g.kind) {
        case GateKind::X:
        case GateKind::CNOT:
        case GateKind::Toffoli:
        case GateKind::MultiControlledX:
            if (controls_on()) i ^= bit(g.targets[0]);
            break;
        case GateKind::ControlledSwap: {
            const Index b0 = bit(g.targets[0]), b1 = bit(g.targets[1]);
            if (controls_on() && ((i & b0) != 0) != ((i & b1) != 0)) i ^= b0 | b1;
            break;
        }
        case GateKind::Z:
        case GateKind::CZ:
            if (controls_on() && (i & bit(g.targets[0]))) phase = -phase;
            break;
        case GateKind::Phase:
            if (i & bit(g.targets[0])) phase *= std::polar(1.0, g.angle);
            break;
        default: break;
    }
}

} // namespace detail

inline void Statevector::apply(const Circuit& circuit) {
    require(layout_.same_shape(circuit.layout()), ErrorCode::DimMismatch,
            "circuit layout does not match statevector");
    const auto& gl = circuit.gates();
    if (std::all_of(gl.begin(), gl.end(), detail::is_classical)) {
        // Sparse inputs: trace each populated basis index through the permutation.
        std::vector<std::pair<Index, cplx>> populated;
        const std::size_t limit = amps_.size() / 8;
        for (Index i = 0; i < amps_.size() && populated.size() <= limit; ++i)
            if (amps_[i] != cplx{0.0, 0.0}) populated.emplace_back(i, amps_[i]);
        if (populated.size() <= limit) {
            for (const auto& [i, a] : populated) amps_[i] = 0.0;
            for (auto [i, a] : populated) {
                cplx phase{1.0, 0.0};
                for (const Gate& g : gl) detail::classical_step(g, i, phase);
                amps_[i] = a * phase;
            }
            return;
        }
    }
    detail::FrameSimulator sim(amps_, num_qubits());
    for (const Gate& g : gl) sim.apply(g);
}

inline Statevector apply_circuit(Statevector state, const Circuit& circuit) {
    state.apply(circuit);
    return state;
}

// ---------------------------------------------------------------------------
// Register-level index helpers
// ---------------------------------------------------------------------------

[[nodiscard]] inline std::uint32_t register_value(const RegisterLayout& l, Index index, int reg) {
    return static_cast<std::uint32_t>((index >> (reg * l.width())) & ((Index{1} << l.width()) - 1));
}

[[nodiscard]] inline Index ancilla_bits(const RegisterLayout& l, Index index) {
    return index >> (l.num_registers() * l.width());
}

[[nodiscard]] inline Index compose_index(const RegisterLayout& l, std::span<const std::uint32_t> values,
                                         Index ancillas = 0) {
    require(static_cast<int>(values.size()) == l.num_registers(), ErrorCode::DimMismatch,
            "register value count does not match layout");
    Index idx = 0;
    for (std::size_t r = 0; r < values.size(); ++r) {
        require(values[r] < static_cast<std::uint32_t>(l.register_dim()), ErrorCode::BadParam,
                "register value does not fit the register width");
        idx |= Index{values[r]} << (r * l.width());
    }
    return idx | (ancillas << (l.num_registers() * l.width()));
}

/// Embeds `sv` into a layout with the same registers and more ancillas (all new ancillas |0>).
inline Statevector add_ancillas(const Statevector& sv, int extra) {
    const RegisterLayout& l = sv.layout();
    Statevector out = Statevector::zero(l.resized(l.num_registers(), l.num_ancillas() + extra));
    std::copy(sv.amplitudes().begin(), sv.amplitudes().end(), out.amplitudes().begin());
    return out;
}

/**
 * Drops every ancilla qubit, which must be back in |0>: any amplitude with a set
 * ancilla bit above `tol` is a DimMismatch.
 */
inline Statevector drop_ancillas(const Statevector& sv, double tol = 1e-10) {
    const RegisterLayout& l = sv.layout();
    Statevector out = Statevector::zero(l.resized(l.num_registers(), 0));
    for (Index i = 0; i < sv.size(); ++i) {
        if (ancilla_bits(l, i) == 0) out[i] = sv[i];
        else require(std::abs(sv[i]) <= tol, ErrorCode::DimMismatch, "ancilla left entangled or set");
    }
    return out;
}

} // namespace hyq

// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file majorana.hpp
 * @brief Fermionic operators on the sorted-list encoding.
 *
 *   E(gamma_{2p-1}) = bit-flip(p) sgn-rank(p-1)
 *   E(gamma_{2p})   = i bit-flip(p) sgn-rank(p)
 *   a_p^dagger = (gamma_{2p-1} - i gamma_{2p}) / 2,   a_p = (gamma_{2p-1} + i gamma_{2p}) / 2
 *
 * which reproduces the Jordan-Wigner sign (-1)^{#occupied q < p}.
 */

#pragma once

#include "hyquant/circuit.hpp"
#include "hyquant/comparators.hpp"
#include "hyquant/encodings.hpp"
#include "hyquant/error.hpp"
#include "hyquant/statevector.hpp"

#include <span>
#include <string>

namespace hyq {

/// gamma_mu, mu in 1..2M; mu = 2p-1 is the odd member of orbital p, mu = 2p the even one.
struct MajoranaIndex {
    int mu = 1;

    [[nodiscard]] int orbital() const noexcept { return (mu + 1) / 2; }
    [[nodiscard]] bool is_odd() const noexcept { return mu % 2 == 1; }

    static MajoranaIndex odd(int p) { return {2 * p - 1}; }
    static MajoranaIndex even(int p) { return {2 * p}; }
};

/// Ancilla qubits the operator circuits below need (one flag, shared).
inline constexpr int kMajoranaAncillas = 1;

/**
 * Multiplies each basis state by (-1)^{#registers holding a value <= p}. `target` is a
 * clean ancilla and is restored; p = 0 is the identity.
 */
inline Circuit sgn_rank_circuit(const RegisterLayout& l, int p, Qubit target, std::span<const Qubit> work = {}) {
    require(p >= 0 && p <= l.num_orbitals(), ErrorCode::BadConstant,
            "sgn-rank constant " + std::to_string(p) + " outside 0..M");
    Circuit c(l);
    if (p == 0) return c;
    for (int r = 0; r < l.num_registers(); ++r) {
        const Circuit test = lt_const_circuit(l, r, static_cast<std::uint32_t>(p), target, CompareMode::LessEqual, work);
        c.append(test);
        c.add(gates::z(target));
        c.append(test);
    }
    return c;
}

/**
 * Toggles the occupation of orbital p while keeping the list sorted:
 * bubble p (if present) up to the last register, exchange p <-> sentinel there, then
 * bubble back down. Each half is the inverse of the other, so the circuit is an involution.
 * Inserting p requires the last register to hold the sentinel.
 */
inline Circuit bit_flip_circuit(const RegisterLayout& l, int p, Qubit flag, std::span<const Qubit> work = {}) {
    require(p >= 1 && p <= l.num_orbitals(), ErrorCode::BadConstant,
            "bit-flip orbital " + std::to_string(p) + " outside 1..M");
    const auto value = static_cast<std::uint32_t>(p);
    Circuit sweep(l);
    for (int r = 0; r + 1 < l.num_registers(); ++r) sweep.append(bubble_circuit(l, r, r + 1, value, flag, work));
    Circuit c = sweep;
    c.append(swap_values_circuit(l, l.num_registers() - 1, value, l.sentinel()));
    c.append(sweep.inverse());
    return c;
}

inline ScaledCircuit majorana_circuit(MajoranaIndex mu, const RegisterLayout& l, Qubit ancilla,
                                      std::span<const Qubit> work = {}) {
    require(mu.mu >= 1 && mu.mu <= 2 * l.num_orbitals(), ErrorCode::BadConstant,
            "Majorana index " + std::to_string(mu.mu) + " outside 1..2M");
    const int p = mu.orbital();
    ScaledCircuit out;
    out.circuit = sgn_rank_circuit(l, mu.is_odd() ? p - 1 : p, ancilla, work);
    out.circuit.append(bit_flip_circuit(l, p, ancilla, work));
    out.scalar = mu.is_odd() ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
    return out;
}

/// NoSlack unless every populated component either holds p or ends in a sentinel register.
inline void require_slack(const EncodedState& es, int p) {
    const RegisterLayout& l = es.layout();
    for (Index i = 0; i < es.state.size(); ++i) {
        if (std::abs(es.state[i]) <= kAmplitudeTol) continue;
        const auto x = decode_sorted_list(l, i);
        require(x.occupied(p) || x.count() < l.num_registers(), ErrorCode::NoSlack,
                "no free register to insert orbital " + std::to_string(p));
    }
}

inline Statevector apply_scaled(const Statevector& registers_only, const ScaledCircuit& sc) {
    Statevector work = add_ancillas(registers_only, sc.circuit.layout().num_ancillas());
    work.apply(sc.circuit);
    work *= sc.scalar;
    return drop_ancillas(work);
}

/// gamma_mu applied to a sorted-list state (unitary, Hermitian).
inline EncodedState apply_majorana(const EncodedState& es, MajoranaIndex mu) {
    require(es.discipline == Discipline::SortedList, ErrorCode::DisciplineMismatch,
            "Majorana operators act on sorted-list states");
    require(es.layout().num_ancillas() == 0, ErrorCode::BadParam, "expected a register-only state");
    require(mu.mu >= 1 && mu.mu <= 2 * es.layout().num_orbitals(), ErrorCode::BadConstant, "Majorana index out of range");
    require_slack(es, mu.orbital());
    const RegisterLayout l = es.layout().resized(es.layout().num_registers(), kMajoranaAncillas);
    const ScaledCircuit sc = majorana_circuit(mu, l, l.ancilla(0));
    return {apply_scaled(es.state, sc), Discipline::SortedList, -1};
}

/**
 * a_p^dagger or a_p as the linear combination of the two Majorana circuit applications.
 * The result is not normalized; a zero vector means the whole state was annihilated.
 */
inline EncodedState apply_ladder(const EncodedState& es, int p, LadderKind kind) {
    require(p >= 1 && p <= es.layout().num_orbitals(), ErrorCode::BadConstant, "orbital out of range");
    const EncodedState odd = apply_majorana(es, MajoranaIndex::odd(p));
    const EncodedState even = apply_majorana(es, MajoranaIndex::even(p));
    const cplx i_sign = kind == LadderKind::Create ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
    Statevector out = odd.state;
    out.add_scaled(i_sign, even.state);
    out *= 0.5;
    int n = -1;
    if (es.num_electrons >= 0) n = es.num_electrons + (kind == LadderKind::Create ? 1 : -1);
    return {std::move(out), Discipline::SortedList, n};
}

} // namespace hyq

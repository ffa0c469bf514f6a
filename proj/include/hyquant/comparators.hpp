// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file comparators.hpp
 * @brief Reversible register primitives: constant comparisons, the bubble gate U_p,
 *        value transpositions, and the register-register compare-and-swap.
 *
 * Constant comparisons have two constructions. Without work qubits the predicate is
 * written as a disjoint sum of cubes (bit patterns) and each cube flips the target
 * through one multi-controlled X, costing O(b^2) Toffoli-equivalents. With b-1 work
 * qubits a prefix-equality chain brings this down to O(b).
 */

#pragma once

#include "hyquant/circuit.hpp"
#include "hyquant/error.hpp"
#include "hyquant/layout.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hyq {

enum class CompareMode { Less, LessEqual, Greater };

namespace detail {

struct Literal {
    Qubit qubit;
    bool value;
};
using Cube = std::vector<Literal>;

inline bool bit_of(std::uint32_t v, int k) { return ((v >> k) & 1U) != 0; }

/// target ^= AND of the cube's literals.
inline void flip_on_cube(Circuit& c, const Cube& cube, Qubit target) {
    for (const Literal& l : cube)
        if (!l.value) c.add(gates::x(l.qubit));
    std::vector<Qubit> controls;
    controls.reserve(cube.size());
    for (const Literal& l : cube) controls.push_back(l.qubit);
    if (controls.empty()) c.add(gates::x(target));
    else if (controls.size() == 1) c.add(gates::cnot(controls[0], target));
    else if (controls.size() == 2) c.add(gates::toffoli(controls[0], controls[1], target));
    else c.add(gates::mcx(std::move(controls), target));
    for (const Literal& l : cube)
        if (!l.value) c.add(gates::x(l.qubit));
}

inline Cube eq_cube(const RegisterLayout& l, int reg, std::uint32_t p) {
    Cube cube;
    for (int k = 0; k < l.width(); ++k) cube.push_back({l.reg_qubit(reg, k), bit_of(p, k)});
    return cube;
}

/// Disjoint cubes covering {v : v < p} (or v > p when `greater`).
inline std::vector<Cube> order_cubes(const RegisterLayout& l, int reg, std::uint32_t p, bool greater) {
    std::vector<Cube> cubes;
    const int b = l.width();
    for (int k = b - 1; k >= 0; --k) {
        // v agrees with p above bit k and differs at bit k in the right direction.
        if (bit_of(p, k) == greater) continue;
        Cube cube;
        for (int j = b - 1; j > k; --j) cube.push_back({l.reg_qubit(reg, j), bit_of(p, j)});
        cube.push_back({l.reg_qubit(reg, k), greater});
        cubes.push_back(std::move(cube));
    }
    return cubes;
}

inline std::vector<Cube> compare_cubes(const RegisterLayout& l, int reg, std::uint32_t p, CompareMode mode) {
    switch (mode) {
        case CompareMode::Less: return order_cubes(l, reg, p, false);
        case CompareMode::Greater: return order_cubes(l, reg, p, true);
        case CompareMode::LessEqual: {
            auto cubes = order_cubes(l, reg, p, false);
            cubes.push_back(eq_cube(l, reg, p));
            return cubes;
        }
    }
    return {};
}

inline Cube concat(const Cube& a, const Cube& b) {
    Cube out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

/**
 * Prefix-equality chain: work[j-1] holds [v_i == p_i for all i >= j], j = b-1..1.
 * Applying the returned circuit twice restores the work qubits.
 */
inline Circuit prefix_chain(const RegisterLayout& l, int reg, std::uint32_t p, std::span<const Qubit> work) {
    Circuit c(l);
    const int b = l.width();
    auto match = [&](int j, auto&& body) {
        const Qubit q = l.reg_qubit(reg, j);
        if (!bit_of(p, j)) c.add(gates::x(q));
        body(q);
        if (!bit_of(p, j)) c.add(gates::x(q));
    };
    match(b - 1, [&](Qubit q) { c.add(gates::cnot(q, work[b - 2])); });
    for (int j = b - 2; j >= 1; --j)
        match(j, [&](Qubit q) { c.add(gates::toffoli(work[j], q, work[j - 1])); });
    return c;
}

} // namespace detail

/// target ^= [value(reg) == p]. Constant must be an orbital index or the sentinel.
inline Circuit eq_const_circuit(const RegisterLayout& l, int reg, std::uint32_t p, Qubit target) {
    require((p >= 1 && p <= static_cast<std::uint32_t>(l.num_orbitals())) || p == l.sentinel(),
            ErrorCode::BadConstant, "=p constant " + std::to_string(p) + " is neither orbital nor sentinel");
    Circuit c(l);
    detail::flip_on_cube(c, detail::eq_cube(l, reg, p), target);
    return c;
}

/**
 * target ^= [value(reg) (<, <=, >) p], p in [0, 2^b - 1].
 *
 * Passing at least b-1 clean work qubits selects the linear-cost chain construction;
 * the work qubits are returned to |0>.
 */
inline Circuit lt_const_circuit(const RegisterLayout& l, int reg, std::uint32_t p, Qubit target, CompareMode mode,
                                std::span<const Qubit> work = {}) {
    require(p <= l.sentinel(), ErrorCode::BadConstant, "comparison constant does not fit the register");
    const int b = l.width();
    Circuit c(l);
    if (static_cast<int>(work.size()) < b - 1) {
        for (const auto& cube : detail::compare_cubes(l, reg, p, mode)) detail::flip_on_cube(c, cube, target);
        return c;
    }
    const bool greater = mode == CompareMode::Greater;
    const Circuit chain = detail::prefix_chain(l, reg, p, work);
    c.append(chain);
    // Terms for bit k: prefix above k matches, bit k decides the order.
    for (int k = b - 1; k >= 0; --k) {
        if (detail::bit_of(p, k) == greater) continue;
        const Qubit q = l.reg_qubit(reg, k);
        if (!greater) c.add(gates::x(q));
        if (k == b - 1) c.add(gates::cnot(q, target));
        else c.add(gates::toffoli(work[k], q, target));
        if (!greater) c.add(gates::x(q));
    }
    if (mode == CompareMode::LessEqual) {
        const Qubit q = l.reg_qubit(reg, 0);
        if (!detail::bit_of(p, 0)) c.add(gates::x(q));
        c.add(gates::toffoli(work[0], q, target));
        if (!detail::bit_of(p, 0)) c.add(gates::x(q));
    }
    c.append(chain.inverse());
    return c;
}

/**
 * The bubble gate U_p: exchanges registers a and b when one holds p and the other
 * holds a larger value. The predicate is symmetric in (a, b), so U_p moves p past a
 * larger neighbour in whichever direction that neighbour sits, and U_p is an involution.
 *
 * `flag` must be |0>; it is restored. With at least b+1 work qubits the comparisons use
 * the chain construction (two work qubits hold the =p and >p results).
 */
inline Circuit bubble_circuit(const RegisterLayout& l, int reg_a, int reg_b, std::uint32_t p, Qubit flag,
                              std::span<const Qubit> work = {}) {
    require(reg_a != reg_b, ErrorCode::BadParam, "bubble needs two distinct registers");
    require(p >= 1 && p <= static_cast<std::uint32_t>(l.num_orbitals()), ErrorCode::BadConstant,
            "bubble constant must be an orbital index");
    const int b = l.width();
    Circuit predicate(l);
    if (static_cast<int>(work.size()) >= b + 1) {
        const Qubit eq = work[0];
        const Qubit gt = work[1];
        const auto chain = work.subspan(2);
        for (auto [x, y] : {std::pair{reg_a, reg_b}, std::pair{reg_b, reg_a}}) {
            Circuit half = eq_const_circuit(l, x, p, eq);
            half.append(lt_const_circuit(l, y, p, gt, CompareMode::Greater, chain));
            predicate.append(half);
            predicate.add(gates::toffoli(eq, gt, flag));
            predicate.append(half.inverse());
        }
    } else {
        // [a == p][b > p] and [b == p][a > p] are disjoint, so their XOR is their OR.
        for (auto [x, y] : {std::pair{reg_a, reg_b}, std::pair{reg_b, reg_a}}) {
            const auto eq = detail::eq_cube(l, x, p);
            for (const auto& gt : detail::compare_cubes(l, y, p, CompareMode::Greater))
                detail::flip_on_cube(predicate, detail::concat(eq, gt), flag);
        }
    }
    Circuit c = predicate;
    for (int k = 0; k < b; ++k) c.add(gates::cswap(flag, l.reg_qubit(reg_a, k), l.reg_qubit(reg_b, k)));
    // The swapped pair satisfies the same symmetric predicate, which clears the flag.
    c.append(predicate);
    return c;
}

/**
 * |a> <-> |b> on one register, all other values fixed. Ancilla-free: CNOTs from a pivot
 * bit k (where a and b differ) fold the pair onto {a, a ^ e_k}, a multi-controlled X on
 * bit k exchanges those two, and the CNOTs are undone.
 */
inline Circuit swap_values_circuit(const RegisterLayout& l, int reg, std::uint32_t a, std::uint32_t b) {
    require(a != b, ErrorCode::BadConstant, "swap-values constants must differ");
    require(a <= l.sentinel() && b <= l.sentinel(), ErrorCode::BadConstant, "swap-values constant too wide");
    const int w = l.width();
    const std::uint32_t d = a ^ b;
    int k = 0;
    while (!detail::bit_of(d, k)) ++k;
    // Orient so that `lo` has bit k clear.
    const std::uint32_t lo = detail::bit_of(a, k) ? b : a;
    Circuit fold(l);
    for (int j = 0; j < w; ++j)
        if (j != k && detail::bit_of(d, j)) fold.add(gates::cnot(l.reg_qubit(reg, k), l.reg_qubit(reg, j)));
    Circuit c = fold;
    detail::Cube cube;
    for (int j = 0; j < w; ++j)
        if (j != k) cube.push_back({l.reg_qubit(reg, j), detail::bit_of(lo, j)});
    detail::flip_on_cube(c, cube, l.reg_qubit(reg, k));
    c.append(fold.inverse());
    return c;
}

/**
 * record ^= [value(reg_i) > value(reg_j)]; the registers are exchanged when the record is
 * set, and with `apply_z` the exchange picks up a -1 phase. Equal values never swap.
 *
 * The comparison is the carry-out of v_i + ~v_j through a majority ripple (one clean
 * `carry` qubit, restored). The top carry is written straight into the record, so the
 * comparison costs 2b-1 Toffolis and the swap b controlled swaps.
 */
inline Circuit compare_swap_with_z(const RegisterLayout& l, int reg_i, int reg_j, Qubit record, Qubit carry,
                                   bool apply_z = true) {
    require(reg_i != reg_j, ErrorCode::BadParam, "comparator needs two distinct registers");
    const int b = l.width();
    Circuit c(l);
    auto a = [&](int k) { return l.reg_qubit(reg_i, k); };
    auto y = [&](int k) { return l.reg_qubit(reg_j, k); };
    auto cin = [&](int k) { return k == 0 ? carry : a(k - 1); };

    for (int k = 0; k < b; ++k) c.add(gates::x(y(k)));
    Circuit ripple(l);
    for (int k = 0; k < b - 1; ++k) {
        ripple.add(gates::cnot(a(k), y(k)));
        ripple.add(gates::cnot(a(k), cin(k)));
        ripple.add(gates::toffoli(cin(k), y(k), a(k)));
    }
    c.append(ripple);
    const int top = b - 1;
    c.add(gates::cnot(a(top), y(top)));
    c.add(gates::cnot(a(top), cin(top)));
    c.add(gates::cnot(a(top), record));
    c.add(gates::toffoli(cin(top), y(top), record));
    c.add(gates::cnot(a(top), cin(top)));
    c.add(gates::cnot(a(top), y(top)));
    c.append(ripple.inverse());
    for (int k = 0; k < b; ++k) c.add(gates::x(y(k)));

    for (int k = 0; k < b; ++k) c.add(gates::cswap(record, a(k), y(k)));
    if (apply_z) c.add(gates::z(record));
    return c;
}

} // namespace hyq

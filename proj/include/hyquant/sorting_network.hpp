// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hyquant/circuit.hpp"
#include "hyquant/comparators.hpp"
#include "hyquant/error.hpp"
#include "hyquant/layout.hpp"

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

namespace hyq {

/// One compare-and-swap between positions lo < hi of the list being sorted.
struct Comparator {
    int lo = 0;
    int hi = 0;
    friend bool operator==(const Comparator&, const Comparator&) = default;
};

/**
 * Batcher odd-even mergesort schedule for n wires (any n >= 1).
 *
 * Comparators that would touch a wire past n are dropped; padding wires behave as +inf
 * at the top end, so those comparators never fire.
 */
inline std::vector<Comparator> batcher_schedule(int n) {
    require(n >= 1, ErrorCode::BadParam, "sorting network needs at least one wire");
    std::vector<Comparator> out;
    for (int p = 1; p < n; p <<= 1) {
        for (int k = p; k >= 1; k >>= 1) {
            for (int j = k % p; j + k < n; j += 2 * k) {
                for (int i = 0; i < std::min(k, n - j - k); ++i) {
                    if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) out.push_back({i + j, i + j + k});
                }
            }
        }
    }
    return out;
}

struct SortingNetworkSpec {
    /// Layout registers being sorted, in list order.
    std::vector<int> registers;
    std::vector<Comparator> schedule;

    static SortingNetworkSpec batcher(std::vector<int> registers) {
        SortingNetworkSpec s;
        s.schedule = batcher_schedule(static_cast<int>(registers.size()));
        s.registers = std::move(registers);
        return s;
    }

    /// Batcher network over registers [first, first + count).
    static SortingNetworkSpec batcher_range(int first, int count) {
        std::vector<int> regs(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) regs[static_cast<std::size_t>(i)] = first + i;
        return batcher(std::move(regs));
    }

    [[nodiscard]] int num_comparators() const noexcept { return static_cast<int>(schedule.size()); }
};

/**
 * Coherent sort of the registers listed in `spec`. Comparator c writes its outcome to records[c];
 * the records are left holding the outcomes. With `apply_z` each swap contributes -1,
 * so the accumulated phase on a distinct-valued input is the sign of its permutation.
 */
inline Circuit sorting_network_circuit(const RegisterLayout& l, const SortingNetworkSpec& spec,
                                       std::span<const Qubit> records, Qubit carry, bool apply_z = true) {
    require(static_cast<int>(records.size()) >= spec.num_comparators(), ErrorCode::CapExceeded,
            "not enough record ancillas for the sorting network");
    Circuit c(l);
    for (std::size_t k = 0; k < spec.schedule.size(); ++k) {
        const Comparator& cmp = spec.schedule[k];
        c.append(compare_swap_with_z(l, spec.registers[static_cast<std::size_t>(cmp.lo)],
                                     spec.registers[static_cast<std::size_t>(cmp.hi)], records[k], carry, apply_z));
    }
    return c;
}

/**
 * Replays recorded swaps in reverse order (controlled swaps only, optional -1 per swap).
 * Driven by the records of a sort, this maps a sorted list back to the sort's input order.
 */
inline Circuit unsort_circuit(const RegisterLayout& l, const SortingNetworkSpec& spec, std::span<const Qubit> records,
                              bool apply_z = true) {
    require(static_cast<int>(records.size()) >= spec.num_comparators(), ErrorCode::CapExceeded,
            "not enough record ancillas for the sorting network");
    Circuit c(l);
    for (int k = spec.num_comparators() - 1; k >= 0; --k) {
        const Comparator& cmp = spec.schedule[static_cast<std::size_t>(k)];
        const int ri = spec.registers[static_cast<std::size_t>(cmp.lo)];
        const int rj = spec.registers[static_cast<std::size_t>(cmp.hi)];
        const Qubit rec = records[static_cast<std::size_t>(k)];
        for (int bit = 0; bit < l.width(); ++bit) c.add(gates::cswap(rec, l.reg_qubit(ri, bit), l.reg_qubit(rj, bit)));
        if (apply_z) c.add(gates::z(rec));
    }
    return c;
}

} // namespace hyq

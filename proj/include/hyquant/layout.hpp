// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file layout.hpp
 * @brief Placement of orbital-index registers and ancillas on a linear qubit array.
 *
 * Register r occupies qubits [r*b, (r+1)*b), least significant bit first.
 * Ancillas follow the last register. Orbital indices are 1-based; binary 0 is
 * never a valid orbital and the all-ones value 2^b - 1 is the sentinel.
 */

#pragma once

#include "hyquant/error.hpp"

#include <bit>
#include <cstdint>
#include <string>

namespace hyq {

using Qubit = int;

/// Largest qubit count a Statevector may be allocated for (about 1 GiB of amplitudes).
inline constexpr int kMaxSimQubits = 26;

/// Bits needed so that the sentinel 2^b - 1 is strictly above every orbital index 1..M.
[[nodiscard]] constexpr int register_width(int num_orbitals) noexcept {
    // ceil(log2(M + 2))
    return std::bit_width(static_cast<unsigned>(num_orbitals + 1));
}

class RegisterLayout {
public:
    RegisterLayout() = default;

    /// Simulatable layout; throws CapExceeded above kMaxSimQubits.
    static RegisterLayout build(int num_orbitals, int num_registers, int num_ancillas) {
        RegisterLayout l = make(num_orbitals, num_registers, num_ancillas, false);
        require(l.total_qubits() <= kMaxSimQubits, ErrorCode::CapExceeded,
                "layout needs " + std::to_string(l.total_qubits()) + " qubits, cap is " +
                    std::to_string(kMaxSimQubits));
        return l;
    }

    /// Layout for gate counting only; no qubit cap, cannot back a Statevector.
    static RegisterLayout counting_only(int num_orbitals, int num_registers, int num_ancillas) {
        return make(num_orbitals, num_registers, num_ancillas, true);
    }

    [[nodiscard]] int num_orbitals() const noexcept { return orbitals_; }
    [[nodiscard]] int num_registers() const noexcept { return registers_; }
    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int num_ancillas() const noexcept { return ancillas_; }
    [[nodiscard]] bool is_counting_only() const noexcept { return counting_only_; }
    [[nodiscard]] int total_qubits() const noexcept { return registers_ * width_ + ancillas_; }
    [[nodiscard]] std::uint32_t sentinel() const noexcept { return (1u << width_) - 1u; }
    [[nodiscard]] int register_dim() const noexcept { return 1 << width_; }

    [[nodiscard]] Qubit reg_qubit(int reg, int bit) const {
        require(reg >= 0 && reg < registers_ && bit >= 0 && bit < width_, ErrorCode::BadParam,
                "register bit out of range");
        return reg * width_ + bit;
    }

    [[nodiscard]] Qubit ancilla(int i) const {
        require(i >= 0 && i < ancillas_, ErrorCode::BadParam,
                "ancilla " + std::to_string(i) + " out of range");
        return registers_ * width_ + i;
    }

    /// Same orbitals and width with a different register / ancilla count.
    [[nodiscard]] RegisterLayout resized(int num_registers, int num_ancillas) const {
        return counting_only_ ? counting_only(orbitals_, num_registers, num_ancillas)
                              : build(orbitals_, num_registers, num_ancillas);
    }

    [[nodiscard]] bool same_shape(const RegisterLayout& o) const noexcept {
        return orbitals_ == o.orbitals_ && registers_ == o.registers_ && width_ == o.width_ &&
               ancillas_ == o.ancillas_;
    }

    friend bool operator==(const RegisterLayout& a, const RegisterLayout& b) noexcept {
        return a.same_shape(b) && a.counting_only_ == b.counting_only_;
    }

private:
    static RegisterLayout make(int m, int nreg, int nanc, bool counting) {
        require(m >= 2, ErrorCode::BadParam, "orbital count must be >= 2");
        require(nreg >= 1, ErrorCode::BadParam, "register count must be >= 1");
        require(nanc >= 0, ErrorCode::BadParam, "ancilla count must be >= 0");
        RegisterLayout l;
        l.orbitals_ = m;
        l.registers_ = nreg;
        l.width_ = register_width(m);
        l.ancillas_ = nanc;
        l.counting_only_ = counting;
        return l;
    }

    int orbitals_ = 2;
    int registers_ = 1;
    int width_ = 2;
    int ancillas_ = 0;
    bool counting_only_ = false;
};

inline RegisterLayout build_layout(int num_orbitals, int num_registers, int num_ancillas) {
    return RegisterLayout::build(num_orbitals, num_registers, num_ancillas);
}

} // namespace hyq

// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file conversion.hpp
 * @brief Conversion between the first-quantized and sorted-list encodings, and the
 *        tensor-product merge of two sorted-list states.
 *
 * first -> second: sort the registers with a Z per swap. Every ordering of a determinant
 * lands on the ascending list with phase +1, and the comparator records end up in a state
 * that depends only on N, so they factor out and are discarded.
 *
 * second -> first: prepare that same record state from a seed register (uniform seeds,
 * sorted, collisions rejected by measurement), then replay the swaps backwards with a Z
 * each. The records are a function of the resulting register order and are erased by
 * recomputing them into fresh ancillas.
 */

#pragma once

#include "hyquant/circuit.hpp"
#include "hyquant/comparators.hpp"
#include "hyquant/encodings.hpp"
#include "hyquant/error.hpp"
#include "hyquant/layout.hpp"
#include "hyquant/sorting_network.hpp"
#include "hyquant/statevector.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace hyq {

enum class ConversionDirection { FirstToSecond, SecondToFirst };

struct ConversionReport {
    ConversionDirection direction = ConversionDirection::FirstToSecond;
    GateCount gate_count;
    int record_ancillas = 0;
    /// 1 for first -> second; product of the accepted collision checks for second -> first.
    double success_probability = 1.0;
    /// Seed preparations tried (second -> first only).
    int attempts = 1;
};

/// Register block plus its ancillas: N sorted registers, K comparator records, one carry.
struct SortLayout {
    RegisterLayout layout;
    SortingNetworkSpec spec;
    std::vector<Qubit> records;
    Qubit carry = 0;
};

inline SortLayout make_sort_layout(int num_orbitals, int num_electrons, bool counting_only = false) {
    SortLayout s;
    s.spec = SortingNetworkSpec::batcher_range(0, num_electrons);
    const int k = s.spec.num_comparators();
    s.layout = counting_only ? RegisterLayout::counting_only(num_orbitals, num_electrons, k + 1)
                             : RegisterLayout::build(num_orbitals, num_electrons, k + 1);
    for (int i = 0; i < k; ++i) s.records.push_back(s.layout.ancilla(i));
    s.carry = s.layout.ancilla(k);
    return s;
}

inline Circuit first_to_second_circuit(const SortLayout& s) {
    return sorting_network_circuit(s.layout, s.spec, s.records, s.carry, true);
}

/// Gate count of the first -> second circuit without allocating any state.
inline GateCount first_to_second_gate_count(int num_orbitals, int num_electrons) {
    return count_gates(first_to_second_circuit(make_sort_layout(num_orbitals, num_electrons, true)));
}

// ---------------------------------------------------------------------------
// Register / ancilla factorization
// ---------------------------------------------------------------------------

struct Factorization {
    /// Register part, carrying the full norm of the input.
    Statevector registers;
    /// Normalized ancilla state, indexed by the ancilla bits.
    std::vector<cplx> ancillas;
    /// ||psi - registers (x) ancillas||
    double residual = 0.0;
};

/**
 * Best product approximation psi ~ phi (x) chi seeded from the ancilla pattern with the
 * largest weight (lowest pattern on ties). Exact whenever psi is a product.
 */
inline Factorization factor_registers(const Statevector& sv) {
    const RegisterLayout& l = sv.layout();
    const int reg_bits = l.num_registers() * l.width();
    const Index reg_dim = Index{1} << reg_bits;
    const Index anc_dim = Index{1} << l.num_ancillas();
    std::vector<double> weight(anc_dim, 0.0);
    for (Index i = 0; i < sv.size(); ++i) weight[i >> reg_bits] += std::norm(sv[i]);
    Index best = 0;
    for (Index a = 1; a < anc_dim; ++a)
        if (weight[a] > weight[best]) best = a;

    Factorization f;
    f.registers = Statevector::zero(l.resized(l.num_registers(), 0));
    f.ancillas.assign(anc_dim, cplx{0.0, 0.0});
    const double col_norm = std::sqrt(weight[best]);
    if (col_norm == 0.0) return f;
    // phi_hat = column / ||column||; chi_a = <phi_hat | column_a>
    for (Index r = 0; r < reg_dim; ++r) f.registers[r] = sv[r | (best << reg_bits)] / col_norm;
    double chi_norm = 0.0;
    for (Index a = 0; a < anc_dim; ++a) {
        cplx s = 0.0;
        for (Index r = 0; r < reg_dim; ++r) s += std::conj(f.registers[r]) * sv[r | (a << reg_bits)];
        f.ancillas[a] = s;
        chi_norm += std::norm(s);
    }
    double res = 0.0;
    for (Index i = 0; i < sv.size(); ++i)
        res += std::norm(sv[i] - f.registers[i & (reg_dim - 1)] * f.ancillas[i >> reg_bits]);
    f.residual = std::sqrt(res);
    chi_norm = std::sqrt(chi_norm);
    for (cplx& c : f.ancillas) c /= chi_norm;
    f.registers *= chi_norm;
    return f;
}

/// Re-embeds a register-only state into `target` registers, filling new registers with sentinels.
inline Statevector pad_with_sentinels(const Statevector& sv, int target_registers) {
    const RegisterLayout& l = sv.layout();
    require(l.num_ancillas() == 0, ErrorCode::BadParam, "padding expects a register-only state");
    require(target_registers >= l.num_registers(), ErrorCode::BadParam, "cannot pad to fewer registers");
    if (target_registers == l.num_registers()) return sv;
    const RegisterLayout out_l = l.resized(target_registers, 0);
    Index fill = 0;
    for (int r = l.num_registers(); r < target_registers; ++r) fill |= Index{l.sentinel()} << (r * l.width());
    Statevector out = Statevector::zero(out_l);
    for (Index i = 0; i < sv.size(); ++i) out[i | fill] = sv[i];
    return out;
}

/// Drops trailing registers that hold the sentinel in every populated component.
inline Statevector truncate_registers(const Statevector& sv, int keep) {
    const RegisterLayout& l = sv.layout();
    require(l.num_ancillas() == 0, ErrorCode::BadParam, "truncation expects a register-only state");
    require(keep >= 1 && keep <= l.num_registers(), ErrorCode::BadParam, "bad register count");
    const RegisterLayout out_l = l.resized(keep, 0);
    const Index mask = (Index{1} << (keep * l.width())) - 1;
    Statevector out = Statevector::zero(out_l);
    for (Index i = 0; i < sv.size(); ++i) {
        if (std::abs(sv[i]) <= kAmplitudeTol) continue;
        for (int r = keep; r < l.num_registers(); ++r)
            require(register_value(l, i, r) == l.sentinel(), ErrorCode::MixedParticleNumber,
                    "occupied register beyond the electron count");
        out[i & mask] += sv[i];
    }
    return out;
}

/// Electron count shared by every populated component of a sorted-list state.
inline int fixed_particle_number(const EncodedState& es) {
    require(es.discipline == Discipline::SortedList, ErrorCode::DisciplineMismatch, "expected sorted-list state");
    int n = -1;
    for (Index i = 0; i < es.state.size(); ++i) {
        if (std::abs(es.state[i]) <= kAmplitudeTol) continue;
        const int c = decode_sorted_list(es.layout(), i).count();
        require(n < 0 || n == c, ErrorCode::MixedParticleNumber, "components differ in electron count");
        n = c;
    }
    return n < 0 ? 0 : n;
}

// ---------------------------------------------------------------------------
// First -> second
// ---------------------------------------------------------------------------

struct SortedState {
    SortLayout sort;
    /// Registers, records and carry after the sorting network.
    Statevector state;
    GateCount gate_count;
};

/// Runs the Z-on-swap sort on a first-quantized state and keeps every ancilla.
inline SortedState sort_with_records(const EncodedState& fq) {
    require(fq.discipline == Discipline::FirstQuantized, ErrorCode::DisciplineMismatch,
            "expected first-quantized state");
    const RegisterLayout& in = fq.layout();
    require(in.num_ancillas() == 0, ErrorCode::BadParam, "expected a register-only state");
    SortedState out;
    out.sort = make_sort_layout(in.num_orbitals(), in.num_registers());
    const Circuit c = first_to_second_circuit(out.sort);
    out.gate_count = count_gates(c);
    out.state = add_ancillas(fq.state, out.sort.layout.num_ancillas());
    out.state.apply(c);
    return out;
}

/**
 * First-quantized -> sorted-list. `num_registers` (default N) pads the output with sentinel
 * registers. Inputs that fail validation, or whose records do not factor out, are refused.
 */
inline std::pair<EncodedState, ConversionReport> first_to_second(const EncodedState& fq, int num_registers = -1,
                                                                 double tol = 1e-9) {
    require(fq.discipline == Discipline::FirstQuantized, ErrorCode::DisciplineMismatch,
            "expected first-quantized state");
    require(validate(fq).ok(), ErrorCode::NotAntisymmetric, "input is not a valid antisymmetric state");
    const int n = fq.layout().num_registers();
    if (num_registers < 0) num_registers = n;
    require(num_registers >= n, ErrorCode::TooManyElectrons, "fewer output registers than electrons");

    ConversionReport report;
    report.direction = ConversionDirection::FirstToSecond;
    Statevector regs = fq.state;
    if (n > 1) {
        const SortedState sorted = sort_with_records(fq);
        const Factorization f = factor_registers(sorted.state);
        require(f.residual <= tol * std::max(1.0, fq.state.norm()), ErrorCode::NotAntisymmetric,
                "comparator records stayed entangled with the registers");
        regs = f.registers;
        report.gate_count = sorted.gate_count;
        report.record_ancillas = sorted.sort.spec.num_comparators();
    }
    return {{pad_with_sentinels(regs, num_registers), Discipline::SortedList, n}, report};
}

// ---------------------------------------------------------------------------
// Second -> first
// ---------------------------------------------------------------------------

namespace detail {

/// P(qubit = 1).
inline double probability_one(const Statevector& sv, Qubit q) {
    double p = 0.0;
    const Index bit = Index{1} << q;
    for (Index i = 0; i < sv.size(); ++i)
        if (i & bit) p += std::norm(sv[i]);
    return p;
}

/// Projects onto qubit = 0 and renormalizes.
inline void project_zero(Statevector& sv, Qubit q, double p_one) {
    const Index bit = Index{1} << q;
    const double scale = 1.0 / std::sqrt(1.0 - p_one);
    for (Index i = 0; i < sv.size(); ++i) sv[i] = (i & bit) ? cplx{0.0, 0.0} : sv[i] * scale;
}

struct RecordSeed {
    /// Normalized state of the K record qubits.
    std::vector<cplx> records;
    double success_probability = 1.0;
    int attempts = 0;
    GateCount gate_count;
};

/**
 * Uniform seeds on N registers, sorted (no phase), adjacent collisions measured away.
 * What remains on the records is (1/sqrt(N!)) sum_sigma |rec(sigma)>.
 */
inline RecordSeed prepare_record_seed(int num_orbitals, int n, std::mt19937_64& rng, int retry_budget) {
    SortLayout s = make_sort_layout(num_orbitals, n);
    const int k = s.spec.num_comparators();
    const RegisterLayout l = s.layout.resized(n, k + 2);
    const Qubit flag = l.ancilla(k + 1);

    Circuit prep(l);
    for (int r = 0; r < n; ++r)
        for (int bit = 0; bit < l.width(); ++bit) prep.add(gates::h(l.reg_qubit(r, bit)));
    prep.append(sorting_network_circuit(l, s.spec, s.records, s.carry, false));

    std::vector<Circuit> fold, test;
    for (int r = 0; r + 1 < n; ++r) {
        Circuit f(l);
        for (int bit = 0; bit < l.width(); ++bit) f.add(gates::cnot(l.reg_qubit(r, bit), l.reg_qubit(r + 1, bit)));
        Circuit t(l);
        flip_on_cube(t, eq_cube(l, r + 1, 0), flag);
        fold.push_back(std::move(f));
        test.push_back(std::move(t));
    }

    RecordSeed seed;
    seed.gate_count = count_gates(prep);
    for (std::size_t r = 0; r < fold.size(); ++r) seed.gate_count += count_gates(fold[r]) + count_gates(test[r]) + count_gates(fold[r]);

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int attempt = 1; attempt <= retry_budget; ++attempt) {
        seed.attempts = attempt;
        Statevector sv(l);
        sv.apply(prep);
        double success = 1.0;
        bool collided = false;
        for (std::size_t r = 0; r < fold.size() && !collided; ++r) {
            sv.apply(fold[r]);
            sv.apply(test[r]);
            const double p1 = probability_one(sv, flag);
            if (coin(rng) < p1) {
                collided = true;
                break;
            }
            project_zero(sv, flag, p1);
            success *= 1.0 - p1;
            sv.apply(fold[r]);
        }
        if (collided) continue;
        const Factorization f = factor_registers(sv);
        require(f.residual <= 1e-9, ErrorCode::DimMismatch, "seed registers did not decouple from the records");
        seed.records.assign(Index{1} << k, cplx{0.0, 0.0});
        for (Index a = 0; a < f.ancillas.size(); ++a) {
            if (a >> k) {
                require(std::abs(f.ancillas[a]) <= 1e-10, ErrorCode::DimMismatch, "carry or flag left set");
                continue;
            }
            seed.records[a] = f.ancillas[a];
        }
        seed.success_probability = success;
        return seed;
    }
    fail(ErrorCode::RetryBudgetExceeded,
         "seed collisions persisted through " + std::to_string(retry_budget) + " attempts");
}

} // namespace detail

/**
 * Sorted-list -> first-quantized for a fixed electron count N. `rng` drives the
 * collision measurements; the same seed gives the same result.
 */
inline std::pair<EncodedState, ConversionReport> second_to_first(const EncodedState& sl, int num_electrons,
                                                                 std::mt19937_64& rng, int retry_budget = 16) {
    require(sl.discipline == Discipline::SortedList, ErrorCode::DisciplineMismatch, "expected sorted-list state");
    require(sl.layout().num_ancillas() == 0, ErrorCode::BadParam, "expected a register-only state");
    require(validate(sl).ok(), ErrorCode::MalformedComponent, "input is not a valid sorted-list state");
    require(num_electrons >= 1, ErrorCode::BadParam, "first-quantized states need at least one electron");
    require(num_electrons <= sl.layout().num_registers(), ErrorCode::TooManyElectrons,
            "electron count exceeds the register count");
    require(retry_budget >= 1, ErrorCode::BadParam, "retry budget must be positive");
    for (Index i = 0; i < sl.state.size(); ++i) {
        if (std::abs(sl.state[i]) <= kAmplitudeTol) continue;
        require(decode_sorted_list(sl.layout(), i).count() == num_electrons, ErrorCode::MixedParticleNumber,
                "component with a different electron count");
    }
    const int n = num_electrons;
    const Statevector sorted = truncate_registers(sl.state, n);

    ConversionReport report;
    report.direction = ConversionDirection::SecondToFirst;
    if (n == 1) {
        report.attempts = 0;
        return {{sorted, Discipline::FirstQuantized, 1}, report};
    }

    const int m = sl.layout().num_orbitals();
    const detail::RecordSeed seed = detail::prepare_record_seed(m, n, rng, retry_budget);

    // Main block: N target registers, K records, K fresh records, carry.
    const SortingNetworkSpec spec = SortingNetworkSpec::batcher_range(0, n);
    const int k = spec.num_comparators();
    const RegisterLayout l = sorted.layout().resized(n, 2 * k + 1);
    std::vector<Qubit> records, fresh;
    for (int i = 0; i < k; ++i) records.push_back(l.ancilla(i));
    for (int i = 0; i < k; ++i) fresh.push_back(l.ancilla(k + i));
    const Qubit carry = l.ancilla(2 * k);

    Statevector sv = Statevector::zero(l);
    const int reg_bits = n * l.width();
    for (Index r = 0; r < sorted.size(); ++r) {
        if (sorted[r] == cplx{0.0, 0.0}) continue;
        for (Index a = 0; a < seed.records.size(); ++a) sv[r | (a << reg_bits)] = sorted[r] * seed.records[a];
    }

    Circuit main(l);
    main.append(unsort_circuit(l, spec, records, true));
    const Circuit recompute = sorting_network_circuit(l, spec, fresh, carry, false);
    main.append(recompute);
    for (int i = 0; i < k; ++i) main.add(gates::cnot(fresh[static_cast<std::size_t>(i)], records[static_cast<std::size_t>(i)]));
    main.append(recompute.inverse());
    sv.apply(main);

    report.gate_count = seed.gate_count + count_gates(main);
    report.record_ancillas = k;
    report.success_probability = seed.success_probability;
    report.attempts = seed.attempts;
    return {{drop_ancillas(sv), Discipline::FirstQuantized, n}, report};
}

// ---------------------------------------------------------------------------
// Tensor-product merge
// ---------------------------------------------------------------------------

struct MergeResult {
    /// R merged registers followed by: K records, carry, R-1 pair ancillas, flag.
    Statevector state;
    Qubit flag = 0;
    /// False for the vacuum shortcuts, which carry no ancillas.
    bool has_flag = false;
    /// Electron count of the merged list (R).
    int num_electrons = 0;
    GateCount gate_count;

    [[nodiscard]] double duplicate_probability() const {
        return has_flag ? detail::probability_one(state, flag) : 0.0;
    }

    /// Flag = 0 branch (unnormalized), all ancillas kept.
    [[nodiscard]] Statevector flag_zero_branch() const {
        Statevector out = state;
        if (!has_flag) return out;
        const Index bit = Index{1} << flag;
        for (Index i = 0; i < out.size(); ++i)
            if (i & bit) out[i] = 0.0;
        return out;
    }

    /**
     * Register state of the flag = 0 branch as a sorted-list state with `num_registers`
     * registers (sentinel padded). The comparator records must factor out, which holds for
     * determinant inputs; entangled records are a DimMismatch.
     */
    [[nodiscard]] EncodedState extract_registers(int num_registers = -1, double tol = 1e-9) const {
        const Statevector branch = flag_zero_branch();
        const Factorization f = factor_registers(branch);
        require(f.residual <= tol, ErrorCode::DimMismatch, "merge records are entangled with the registers");
        const int out_regs = num_registers < 0 ? std::max(1, num_electrons) : num_registers;
        return {pad_with_sentinels(f.registers, out_regs), Discipline::SortedList, num_electrons};
    }
};

/**
 * Concatenates the occupied registers of `a` and `b` (fixed electron counts), sorts them with
 * a Z per swap, and sets `flag` on every component holding a repeated orbital.
 */
inline MergeResult tensor_product_merge(const EncodedState& a, const EncodedState& b) {
    require(a.discipline == Discipline::SortedList && b.discipline == Discipline::SortedList,
            ErrorCode::DisciplineMismatch, "merge takes sorted-list states");
    require(a.layout().num_orbitals() == b.layout().num_orbitals(), ErrorCode::BasisMismatch,
            "inputs use different orbital counts");
    require(a.layout().num_ancillas() == 0 && b.layout().num_ancillas() == 0, ErrorCode::BadParam,
            "expected register-only states");
    const int na = fixed_particle_number(a);
    const int nb = fixed_particle_number(b);
    const int r = na + nb;

    MergeResult out;
    out.num_electrons = r;
    auto vacuum_amplitude = [](const EncodedState& es) {
        const RegisterLayout& l = es.layout();
        return es.state[compose_index(
            l, std::vector<std::uint32_t>(static_cast<std::size_t>(l.num_registers()), l.sentinel()))];
    };
    if (r == 0) {
        out.state = Statevector::zero(RegisterLayout::build(a.layout().num_orbitals(), 1, 0));
        out.state[Index{out.state.layout().sentinel()}] = vacuum_amplitude(a) * vacuum_amplitude(b);
        return out;
    }
    if (na == 0 || nb == 0) {
        out.state = truncate_registers(na == 0 ? b.state : a.state, r);
        out.state *= na == 0 ? vacuum_amplitude(a) : vacuum_amplitude(b);
        return out;
    }

    const Statevector sa = truncate_registers(a.state, na);
    const Statevector sb = truncate_registers(b.state, nb);
    const SortingNetworkSpec spec = SortingNetworkSpec::batcher_range(0, r);
    const int k = spec.num_comparators();
    const RegisterLayout l = RegisterLayout::build(a.layout().num_orbitals(), r, k + 1 + (r - 1) + 1);
    std::vector<Qubit> records;
    for (int i = 0; i < k; ++i) records.push_back(l.ancilla(i));
    const Qubit carry = l.ancilla(k);
    std::vector<Qubit> pair;
    for (int i = 0; i < r - 1; ++i) pair.push_back(l.ancilla(k + 1 + i));
    out.flag = l.ancilla(k + r);
    out.has_flag = true;

    Statevector sv = Statevector::zero(l);
    const int shift = na * l.width();
    for (Index i = 0; i < sa.size(); ++i) {
        if (sa[i] == cplx{0.0, 0.0}) continue;
        for (Index j = 0; j < sb.size(); ++j) sv[i | (j << shift)] = sa[i] * sb[j];
    }

    Circuit c(l);
    c.append(sorting_network_circuit(l, spec, records, carry, true));
    Circuit pairs(l);
    for (int p = 0; p + 1 < r; ++p) {
        Circuit fold(l);
        for (int bit = 0; bit < l.width(); ++bit) fold.add(gates::cnot(l.reg_qubit(p, bit), l.reg_qubit(p + 1, bit)));
        pairs.append(fold);
        detail::flip_on_cube(pairs, detail::eq_cube(l, p + 1, 0), pair[static_cast<std::size_t>(p)]);
        pairs.append(fold);
    }
    c.append(pairs);
    // flag = OR of the pair ancillas
    Circuit neg(l);
    for (Qubit w : pair) neg.add(gates::x(w));
    c.append(neg);
    if (pair.size() == 1) c.add(gates::cnot(pair[0], out.flag));
    else if (pair.size() == 2) c.add(gates::toffoli(pair[0], pair[1], out.flag));
    else c.add(gates::mcx(pair, out.flag));
    c.append(neg);
    c.add(gates::x(out.flag));
    c.append(pairs);

    out.gate_count = count_gates(c);
    sv.apply(c);
    out.state = std::move(sv);
    return out;
}

} // namespace hyq

// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file encodings.hpp
 * @brief First-quantized and sorted-list encodings of fermionic states.
 *
 * Sorted-list: registers hold the occupied orbital indices in strictly ascending
 * order followed by sentinel registers. First-quantized: N registers hold an ordered
 * tuple of distinct orbitals (a Hartree product); physical states are antisymmetric
 * superpositions of such tuples. The ascending ordering of a determinant carries +1
 * in both encodings.
 */

#pragma once

#include "hyquant/error.hpp"
#include "hyquant/layout.hpp"
#include "hyquant/statevector.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hyq {

inline constexpr double kAmplitudeTol = 1e-12;

/// Slater determinant as an occupation bitstring; bit p-1 set <=> orbital p occupied.
class OccupationBitstring {
public:
    OccupationBitstring() = default;
    OccupationBitstring(int num_orbitals, std::uint64_t bits) : m_(num_orbitals), bits_(bits) {
        require(num_orbitals >= 1 && num_orbitals <= 63, ErrorCode::BadParam,
                "orbital count must be in 1..63");
        require((bits >> num_orbitals) == 0, ErrorCode::BadParam, "bits set beyond orbital M");
    }

    static OccupationBitstring from_orbitals(int num_orbitals, const std::vector<int>& orbitals) {
        std::uint64_t bits = 0;
        for (int p : orbitals) {
            require(p >= 1 && p <= num_orbitals, ErrorCode::BadParam,
                    "orbital " + std::to_string(p) + " outside 1.." + std::to_string(num_orbitals));
            require(((bits >> (p - 1)) & 1U) == 0, ErrorCode::BadParam,
                    "orbital " + std::to_string(p) + " listed twice");
            bits |= std::uint64_t{1} << (p - 1);
        }
        return {num_orbitals, bits};
    }

    [[nodiscard]] int num_orbitals() const noexcept { return m_; }
    [[nodiscard]] std::uint64_t bits() const noexcept { return bits_; }
    [[nodiscard]] int count() const noexcept { return std::popcount(bits_); }
    [[nodiscard]] bool occupied(int p) const noexcept { return ((bits_ >> (p - 1)) & 1U) != 0; }

    [[nodiscard]] std::vector<int> orbitals() const {
        std::vector<int> out;
        for (int p = 1; p <= m_; ++p)
            if (occupied(p)) out.push_back(p);
        return out;
    }

    friend bool operator==(const OccupationBitstring&, const OccupationBitstring&) = default;

private:
    int m_ = 1;
    std::uint64_t bits_ = 0;
};

/// `M=<int> occ={p1,p2,...}` with ascending p.
inline std::string to_string(const OccupationBitstring& x) {
    std::string s = "M=" + std::to_string(x.num_orbitals()) + " occ={";
    bool first = true;
    for (int p : x.orbitals()) {
        if (!first) s += ',';
        s += std::to_string(p);
        first = false;
    }
    return s + "}";
}

namespace detail {

inline std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
        if (pos >= text.size()) break;
        int v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        require(ec == std::errc{}, ErrorCode::ParseError, "bad integer in list '" + std::string(text) + "'");
        pos = static_cast<std::size_t>(ptr - text.data());
        out.push_back(v);
    }
    return out;
}

} // namespace detail

inline OccupationBitstring parse_occupation(std::string_view text) {
    const auto mpos = text.find("M=");
    const auto open = text.find("occ={");
    const auto close = text.find('}');
    require(mpos != std::string_view::npos && open != std::string_view::npos &&
                close != std::string_view::npos && close > open,
            ErrorCode::ParseError, "expected 'M=<int> occ={...}'");
    int m = 0;
    auto [ptr, ec] = std::from_chars(text.data() + mpos + 2, text.data() + text.size(), m);
    require(ec == std::errc{}, ErrorCode::ParseError, "bad orbital count");
    std::vector<int> occ = detail::parse_int_list(text.substr(open + 5, close - open - 5));
    require(std::is_sorted(occ.begin(), occ.end()), ErrorCode::ParseError, "occupation list must ascend");
    return OccupationBitstring::from_orbitals(m, occ);
}

// ---------------------------------------------------------------------------
// Encoded states
// ---------------------------------------------------------------------------

enum class Discipline { FirstQuantized, SortedList };

enum class LadderKind { Create, Annihilate };

inline std::string_view to_string(Discipline d) noexcept {
    return d == Discipline::FirstQuantized ? "fq" : "sl";
}

struct EncodedState {
    Statevector state;
    Discipline discipline = Discipline::SortedList;
    /// Electron count when fixed; -1 for a sorted-list state of unknown particle number.
    int num_electrons = -1;

    [[nodiscard]] const RegisterLayout& layout() const noexcept { return state.layout(); }
};

/// Signature of a permutation given as an ordered list of distinct values (inversion count).
inline int permutation_sign(const std::vector<int>& order) {
    int inversions = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (order[i] > order[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

inline std::vector<std::uint32_t> sorted_list_registers(const OccupationBitstring& x, const RegisterLayout& l) {
    std::vector<std::uint32_t> values(static_cast<std::size_t>(l.num_registers()), l.sentinel());
    const auto occ = x.orbitals();
    for (std::size_t i = 0; i < occ.size(); ++i) values[i] = static_cast<std::uint32_t>(occ[i]);
    return values;
}

inline EncodedState encode_sorted_list(const OccupationBitstring& x, int num_registers) {
    require(x.count() <= num_registers, ErrorCode::TooManyElectrons,
            std::to_string(x.count()) + " electrons do not fit in " + std::to_string(num_registers) +
                " registers");
    RegisterLayout l = RegisterLayout::build(x.num_orbitals(), num_registers, 0);
    const auto values = sorted_list_registers(x, l);
    return {Statevector::basis(l, compose_index(l, values)), Discipline::SortedList, x.count()};
}

/**
 * Reference (classical) constructor of a first-quantized Slater determinant:
 * sum over orderings sigma of sgn(sigma)/sqrt(N!) |i_sigma(1), ..., i_sigma(N)>.
 */
inline EncodedState encode_first_quantized_determinant(const OccupationBitstring& x) {
    const int n = x.count();
    require(n >= 1, ErrorCode::BadParam, "first-quantized determinant needs at least one electron");
    RegisterLayout l = RegisterLayout::build(x.num_orbitals(), n, 0);
    Statevector sv = Statevector::zero(l);
    std::vector<int> order = x.orbitals();
    double nfact = 1.0;
    for (int k = 2; k <= n; ++k) nfact *= k;
    const double amp = 1.0 / std::sqrt(nfact);
    std::vector<std::uint32_t> values(order.size());
    do {
        std::copy(order.begin(), order.end(), values.begin());
        sv[compose_index(l, values)] = amp * permutation_sign(order);
    } while (std::next_permutation(order.begin(), order.end()));
    return {std::move(sv), Discipline::FirstQuantized, n};
}

// ---------------------------------------------------------------------------
// Decoding and validation
// ---------------------------------------------------------------------------

/// Registers of a sorted-list component -> occupation. Ancilla bits are ignored.
inline OccupationBitstring decode_sorted_list(const RegisterLayout& l, Index component) {
    std::uint64_t bits = 0;
    std::uint32_t prev = 0;
    bool in_sentinels = false;
    for (int r = 0; r < l.num_registers(); ++r) {
        const std::uint32_t v = register_value(l, component, r);
        if (v == l.sentinel()) {
            in_sentinels = true;
            continue;
        }
        require(!in_sentinels, ErrorCode::MalformedComponent, "orbital after sentinel");
        require(v != 0, ErrorCode::MalformedComponent, "register holds value 0");
        require(v <= static_cast<std::uint32_t>(l.num_orbitals()), ErrorCode::MalformedComponent,
                "register value " + std::to_string(v) + " exceeds M and is not the sentinel");
        require(v > prev, ErrorCode::MalformedComponent, "registers not strictly ascending");
        prev = v;
        bits |= std::uint64_t{1} << (v - 1);
    }
    return {l.num_orbitals(), bits};
}

/// Registers of a first-quantized component -> ordered orbital tuple.
inline std::vector<int> decode_first_quantized(const RegisterLayout& l, Index component) {
    std::vector<int> order;
    std::uint64_t seen = 0;
    for (int r = 0; r < l.num_registers(); ++r) {
        const std::uint32_t v = register_value(l, component, r);
        require(v >= 1 && v <= static_cast<std::uint32_t>(l.num_orbitals()), ErrorCode::MalformedComponent,
                "register value " + std::to_string(v) + " is not an orbital index");
        require(((seen >> v) & 1U) == 0, ErrorCode::MalformedComponent, "duplicate orbital index");
        seen |= std::uint64_t{1} << v;
        order.push_back(static_cast<int>(v));
    }
    return order;
}

struct DecodedComponent {
    OccupationBitstring occupation;
    /// Register order; for sorted-list components this is the ascending orbital list.
    std::vector<int> order;
};

inline DecodedComponent decode_basis_component(Index component, Discipline discipline, const RegisterLayout& l) {
    if (discipline == Discipline::SortedList) {
        auto occ = decode_sorted_list(l, component);
        return {occ, occ.orbitals()};
    }
    auto order = decode_first_quantized(l, component);
    return {OccupationBitstring::from_orbitals(l.num_orbitals(), order), order};
}

struct Violation {
    Index component = 0;
    std::string reason;
};

struct ValidationReport {
    std::vector<Violation> violations;
    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Index with registers r and s exchanged.
inline Index swap_registers(const RegisterLayout& l, Index idx, int r, int s) {
    const Index mask = (Index{1} << l.width()) - 1;
    const Index vr = (idx >> (r * l.width())) & mask;
    const Index vs = (idx >> (s * l.width())) & mask;
    idx &= ~((mask << (r * l.width())) | (mask << (s * l.width())));
    return idx | (vr << (s * l.width())) | (vs << (r * l.width()));
}

inline ValidationReport validate(const EncodedState& es, double antisym_tol = 1e-10) {
    ValidationReport report;
    const RegisterLayout& l = es.layout();
    const Statevector& sv = es.state;
    for (Index i = 0; i < sv.size(); ++i) {
        if (std::abs(sv[i]) <= kAmplitudeTol) continue;
        try {
            (void)decode_basis_component(i, es.discipline, l);
        } catch (const Error& e) {
            report.violations.push_back({i, e.what()});
            continue;
        }
        if (es.discipline != Discipline::FirstQuantized) continue;
        for (int r = 0; r < l.num_registers(); ++r) {
            for (int s = r + 1; s < l.num_registers(); ++s) {
                const Index j = swap_registers(l, i, r, s);
                if (std::abs(sv[j] + sv[i]) > antisym_tol) {
                    report.violations.push_back(
                        {i, "antisymmetry violated under exchange of registers " + std::to_string(r) +
                                " and " + std::to_string(s)});
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Encoding map to and from the occupation (Fock) basis
// ---------------------------------------------------------------------------

/// Fock-space amplitudes (index = occupation bits) of a sorted-list state; invalid components throw.
inline std::vector<cplx> sorted_list_to_fock(const EncodedState& es) {
    require(es.discipline == Discipline::SortedList, ErrorCode::DisciplineMismatch, "expected sorted-list state");
    const RegisterLayout& l = es.layout();
    std::vector<cplx> out(std::size_t{1} << l.num_orbitals(), cplx{0.0, 0.0});
    for (Index i = 0; i < es.state.size(); ++i) {
        if (std::abs(es.state[i]) <= kAmplitudeTol) continue;
        require(ancilla_bits(l, i) == 0, ErrorCode::MalformedComponent, "ancilla set in encoded component");
        out[decode_sorted_list(l, i).bits()] += es.state[i];
    }
    return out;
}

/**
 * Fock-space amplitudes of a first-quantized state: the coefficient of determinant I is
 * the overlap with the normalized antisymmetrized tuple, <antisym(I)|psi>.
 */
inline std::vector<cplx> first_quantized_to_fock(const EncodedState& es) {
    require(es.discipline == Discipline::FirstQuantized, ErrorCode::DisciplineMismatch,
            "expected first-quantized state");
    const RegisterLayout& l = es.layout();
    const int n = l.num_registers();
    double nfact = 1.0;
    for (int k = 2; k <= n; ++k) nfact *= k;
    const double norm = 1.0 / std::sqrt(nfact);
    std::vector<cplx> out(std::size_t{1} << l.num_orbitals(), cplx{0.0, 0.0});
    for (Index i = 0; i < es.state.size(); ++i) {
        if (std::abs(es.state[i]) <= kAmplitudeTol) continue;
        std::vector<int> order;
        try {
            order = decode_first_quantized(l, i);
        } catch (const Error&) {
            continue;  // components with repeated indices have no determinant overlap
        }
        const auto occ = OccupationBitstring::from_orbitals(l.num_orbitals(), order);
        out[occ.bits()] += norm * permutation_sign(order) * es.state[i];
    }
    return out;
}

/// Sorted-list state for a Fock-space vector; every populated determinant must fit.
inline EncodedState fock_to_sorted_list(std::span<const cplx> fock, int num_orbitals, int num_registers) {
    RegisterLayout l = RegisterLayout::build(num_orbitals, num_registers, 0);
    require(fock.size() == (std::size_t{1} << num_orbitals), ErrorCode::DimMismatch, "Fock vector size");
    Statevector sv = Statevector::zero(l);
    int n = -2;
    for (std::size_t bits = 0; bits < fock.size(); ++bits) {
        if (std::abs(fock[bits]) <= kAmplitudeTol) continue;
        OccupationBitstring x(num_orbitals, bits);
        require(x.count() <= num_registers, ErrorCode::TooManyElectrons, "determinant exceeds register count");
        sv[compose_index(l, sorted_list_registers(x, l))] = fock[bits];
        n = (n == -2 || n == x.count()) ? x.count() : -1;
    }
    return {std::move(sv), Discipline::SortedList, n < 0 ? -1 : n};
}

/// First-quantized state for a fixed-N Fock-space vector via the reference constructor.
inline EncodedState fock_to_first_quantized(std::span<const cplx> fock, int num_orbitals, int num_electrons) {
    require(fock.size() == (std::size_t{1} << num_orbitals), ErrorCode::DimMismatch, "Fock vector size");
    RegisterLayout l = RegisterLayout::build(num_orbitals, num_electrons, 0);
    Statevector sv = Statevector::zero(l);
    for (std::size_t bits = 0; bits < fock.size(); ++bits) {
        if (std::abs(fock[bits]) <= kAmplitudeTol) continue;
        OccupationBitstring x(num_orbitals, bits);
        require(x.count() == num_electrons, ErrorCode::MixedParticleNumber,
                "determinant with a different electron count");
        sv.add_scaled(fock[bits], encode_first_quantized_determinant(x).state);
    }
    return {std::move(sv), Discipline::FirstQuantized, num_electrons};
}

} // namespace hyq

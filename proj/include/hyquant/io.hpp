// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief Text formats: encoded states, circuits, toy Hamiltonians and basis matrices.
 *
 * State file:
 *   STATE discipline=sl M=4 NREG=3 B=3
 *   (001,011,111) 1.0+0.0i
 * Circuit file:
 *   LAYOUT M=4 NREG=3 B=3 NANC=0
 *   CNOT controls=[0] targets=[3] params=[]
 * Hamiltonian file: `H1 p q re im` and `H2 p q r s re im` lines, optional `M <int>`.
 * Basis matrix file: `DIM M1 M2` then M1*M2 row-major `re im` pairs.
 *
 * Reals are written in shortest round-trip form, so every format reads back bit-exactly.
 * Blank lines and lines starting with '#' are skipped.
 */

#pragma once

#include "hyquant/basis_transform.hpp"
#include "hyquant/circuit.hpp"
#include "hyquant/encodings.hpp"
#include "hyquant/error.hpp"
#include "hyquant/fci_oracle.hpp"
#include "hyquant/layout.hpp"
#include "hyquant/statevector.hpp"

#include <Eigen/Dense>

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hyq::io {

// ---------------------------------------------------------------------------
// Numbers
// ---------------------------------------------------------------------------

/// Shortest round-trip decimal, always with a '.' or exponent; -0 prints as 0.0.
inline std::string format_real(double v) {
    if (v == 0.0) return "0.0";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    std::string s(buf.data(), res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

/// `re+imi` / `re-imi`.
inline std::string format_amplitude(cplx a) {
    const double im = a.imag() == 0.0 ? 0.0 : a.imag();
    return format_real(a.real()) + (std::signbit(im) ? "-" : "+") + format_real(std::abs(im)) + "i";
}

inline double parse_real(std::string_view s) {
    double v = 0.0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    require(res.ec == std::errc{} && res.ptr == s.data() + s.size(), ErrorCode::ParseError,
            "bad number '" + std::string(s) + "'");
    return v;
}

inline int parse_int(std::string_view s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    require(res.ec == std::errc{} && res.ptr == s.data() + s.size(), ErrorCode::ParseError,
            "bad integer '" + std::string(s) + "'");
    return v;
}

inline cplx parse_amplitude(std::string_view s) {
    require(s.size() >= 2 && s.back() == 'i', ErrorCode::ParseError, "amplitude must look like a+bi: " + std::string(s));
    s.remove_suffix(1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    require(split != std::string_view::npos, ErrorCode::ParseError, "amplitude must look like a+bi: " + std::string(s));
    return {parse_real(s.substr(0, split)), parse_real(s.substr(split))};
}

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream is{std::string(line)};
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

inline bool skippable(std::string_view line) {
    const auto p = line.find_first_not_of(" \t\r");
    return p == std::string_view::npos || line[p] == '#';
}

/// Value of `KEY=value` among the tokens.
inline std::string keyed(const std::vector<std::string>& toks, std::string_view key) {
    for (const auto& t : toks)
        if (t.size() > key.size() && t.compare(0, key.size(), key) == 0 && t[key.size()] == '=')
            return t.substr(key.size() + 1);
    fail(ErrorCode::ParseError, "missing " + std::string(key) + "= in header");
}

inline std::string bits_of(std::uint32_t v, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int k = 0; k < width; ++k)
        if ((v >> k) & 1U) s[static_cast<std::size_t>(width - 1 - k)] = '1';
    return s;
}

inline std::uint32_t parse_bits(std::string_view s, int width) {
    require(static_cast<int>(s.size()) == width, ErrorCode::ParseError,
            "register '" + std::string(s) + "' must have " + std::to_string(width) + " bits");
    std::uint32_t v = 0;
    for (char c : s) {
        require(c == '0' || c == '1', ErrorCode::ParseError, "register bits must be 0 or 1");
        v = (v << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return v;
}

/// Electron count shared by every component of a sorted-list state, or -1.
inline int sorted_list_particle_number(const Statevector& sv) {
    int n = -2;
    for (Index i = 0; i < sv.size(); ++i) {
        if (std::abs(sv[i]) <= kAmplitudeTol) continue;
        const int c = decode_sorted_list(sv.layout(), i).count();
        if (n == -2) n = c;
        else if (n != c) return -1;
    }
    return n == -2 ? 0 : n;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Encoded states
// ---------------------------------------------------------------------------

inline void write_state(std::ostream& os, const EncodedState& es) {
    const RegisterLayout& l = es.layout();
    require(l.num_ancillas() == 0, ErrorCode::BadParam, "state files hold register-only states");
    os << "STATE discipline=" << to_string(es.discipline) << " M=" << l.num_orbitals() << " NREG=" << l.num_registers()
       << " B=" << l.width() << '\n';
    for (Index i = 0; i < es.state.size(); ++i) {
        const cplx a = es.state[i];
        if (std::abs(a) <= kAmplitudeTol) continue;
        os << '(';
        for (int r = 0; r < l.num_registers(); ++r)
            os << (r ? "," : "") << detail::bits_of(register_value(l, i, r), l.width());
        os << ") " << format_amplitude(a) << '\n';
    }
}

inline std::string state_to_string(const EncodedState& es) {
    std::ostringstream os;
    write_state(os, es);
    return os.str();
}

inline EncodedState read_state(std::istream& is) {
    std::string line;
    bool have_header = false;
    RegisterLayout layout;
    Discipline discipline = Discipline::SortedList;
    Statevector sv;
    while (std::getline(is, line)) {
        if (detail::skippable(line)) continue;
        const auto toks = detail::split_ws(line);
        if (!have_header) {
            require(toks[0] == "STATE", ErrorCode::ParseError, "state file must start with a STATE header");
            const std::string d = detail::keyed(toks, "discipline");
            require(d == "sl" || d == "fq", ErrorCode::ParseError, "discipline must be sl or fq");
            discipline = d == "fq" ? Discipline::FirstQuantized : Discipline::SortedList;
            layout = build_layout(parse_int(detail::keyed(toks, "M")), parse_int(detail::keyed(toks, "NREG")), 0);
            require(parse_int(detail::keyed(toks, "B")) == layout.width(), ErrorCode::ParseError,
                    "header B does not match the register width for M");
            sv = Statevector::zero(layout);
            have_header = true;
            continue;
        }
        require(toks.size() == 2 && toks[0].size() >= 2 && toks[0].front() == '(' && toks[0].back() == ')',
                ErrorCode::ParseError, "component line must be '(r1,...,rk) a+bi': " + line);
        const std::string_view inner = std::string_view(toks[0]).substr(1, toks[0].size() - 2);
        std::vector<std::uint32_t> values;
        std::size_t start = 0;
        for (;;) {
            const auto comma = inner.find(',', start);
            values.push_back(detail::parse_bits(inner.substr(start, comma - start), layout.width()));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        require(static_cast<int>(values.size()) == layout.num_registers(), ErrorCode::ParseError,
                "component has the wrong number of registers: " + line);
        sv[compose_index(layout, values)] += parse_amplitude(toks[1]);
    }
    require(have_header, ErrorCode::ParseError, "empty state file");
    const int n = discipline == Discipline::FirstQuantized ? layout.num_registers() : detail::sorted_list_particle_number(sv);
    return {std::move(sv), discipline, n};
}

inline EncodedState state_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_state(is);
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

inline std::string_view kind_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::Phase: return "Phase";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::Toffoli: return "Toffoli";
        case GateKind::MultiControlledX: return "MultiControlledX";
        case GateKind::ControlledSwap: return "ControlledSwap";
        case GateKind::GeneralSingleQubit: return "GeneralSingleQubit";
        case GateKind::RegisterUnitary: return "RegisterUnitary";
    }
    return "?";
}

inline GateKind parse_kind(std::string_view s) {
    for (GateKind k : {GateKind::X, GateKind::Z, GateKind::H, GateKind::Phase, GateKind::CNOT, GateKind::CZ,
                       GateKind::Toffoli, GateKind::MultiControlledX, GateKind::ControlledSwap,
                       GateKind::GeneralSingleQubit, GateKind::RegisterUnitary})
        if (kind_name(k) == s) return k;
    fail(ErrorCode::ParseError, "unknown gate kind '" + std::string(s) + "'");
}

namespace detail {

template <typename T, typename Fmt>
std::string bracketed(const std::vector<T>& v, Fmt fmt) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s + "]";
}

inline std::vector<std::string> bracket_items(const std::string& tok, std::string_view key) {
    const std::string prefix = std::string(key) + "=[";
    require(tok.size() >= prefix.size() + 1 && tok.compare(0, prefix.size(), prefix) == 0 && tok.back() == ']',
            ErrorCode::ParseError, "expected " + prefix + "...]");
    const std::string body = tok.substr(prefix.size(), tok.size() - prefix.size() - 1);
    std::vector<std::string> out;
    if (body.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = body.find(',', start);
        out.push_back(body.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace detail

inline void write_circuit(std::ostream& os, const Circuit& c) {
    const RegisterLayout& l = c.layout();
    os << "LAYOUT M=" << l.num_orbitals() << " NREG=" << l.num_registers() << " B=" << l.width()
       << " NANC=" << l.num_ancillas() << '\n';
    auto q = [](Qubit v) { return std::to_string(v); };
    for (const Gate& g : c.gates()) {
        std::vector<double> params;
        if (g.kind == GateKind::Phase) params.push_back(g.angle);
        for (const cplx& m : g.matrix) {
            params.push_back(m.real());
            params.push_back(m.imag());
        }
        os << kind_name(g.kind) << " controls=" << detail::bracketed(g.controls, q)
           << " targets=" << detail::bracketed(g.targets, q)
           << " params=" << detail::bracketed(params, [](double v) { return format_real(v); }) << '\n';
    }
}

inline std::string circuit_to_string(const Circuit& c) {
    std::ostringstream os;
    write_circuit(os, c);
    return os.str();
}

/// Layouts above the qubit cap read back as counting-only.
inline Circuit read_circuit(std::istream& is) {
    std::string line;
    std::optional<Circuit> c;
    while (std::getline(is, line)) {
        if (detail::skippable(line)) continue;
        const auto toks = detail::split_ws(line);
        if (!c) {
            require(toks[0] == "LAYOUT", ErrorCode::ParseError, "circuit file must start with a LAYOUT header");
            const int m = parse_int(detail::keyed(toks, "M"));
            const int nreg = parse_int(detail::keyed(toks, "NREG"));
            const int nanc = parse_int(detail::keyed(toks, "NANC"));
            RegisterLayout l = RegisterLayout::counting_only(m, nreg, nanc);
            if (l.total_qubits() <= kMaxSimQubits) l = build_layout(m, nreg, nanc);
            require(parse_int(detail::keyed(toks, "B")) == l.width(), ErrorCode::ParseError,
                    "header B does not match the register width for M");
            c.emplace(l);
            continue;
        }
        require(toks.size() == 4, ErrorCode::ParseError, "gate line must be 'KIND controls=[..] targets=[..] params=[..]'");
        Gate g;
        g.kind = parse_kind(toks[0]);
        for (const auto& s : detail::bracket_items(toks[1], "controls")) g.controls.push_back(parse_int(s));
        for (const auto& s : detail::bracket_items(toks[2], "targets")) g.targets.push_back(parse_int(s));
        std::vector<double> params;
        for (const auto& s : detail::bracket_items(toks[3], "params")) params.push_back(parse_real(s));
        if (g.kind == GateKind::Phase) {
            require(params.size() == 1, ErrorCode::ParseError, "Phase takes one angle");
            g.angle = params[0];
        } else if (g.kind == GateKind::GeneralSingleQubit || g.kind == GateKind::RegisterUnitary) {
            require(params.size() % 2 == 0, ErrorCode::ParseError, "matrix params come in re,im pairs");
            for (std::size_t k = 0; k < params.size(); k += 2) g.matrix.emplace_back(params[k], params[k + 1]);
            const std::size_t d = g.kind == GateKind::GeneralSingleQubit ? 2 : std::size_t{1} << g.targets.size();
            require(g.matrix.size() == d * d, ErrorCode::ParseError, "matrix has the wrong size");
        } else {
            require(params.empty(), ErrorCode::ParseError, std::string(kind_name(g.kind)) + " takes no params");
        }
        c->add(std::move(g));
    }
    require(c.has_value(), ErrorCode::ParseError, "empty circuit file");
    return std::move(*c);
}

inline Circuit circuit_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_circuit(is);
}

// ---------------------------------------------------------------------------
// Toy Hamiltonians
// ---------------------------------------------------------------------------

/// Entries are taken as listed; the Hermiticity check rejects missing partners.
inline oracle::ToyHamiltonian read_hamiltonian(std::istream& is) {
    struct Entry {
        std::vector<int> idx;
        cplx v;
    };
    std::vector<Entry> entries;
    int m = 0, declared = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (detail::skippable(line)) continue;
        const auto toks = detail::split_ws(line);
        if (toks[0] == "M") {
            require(toks.size() == 2, ErrorCode::ParseError, "expected 'M <int>'");
            declared = parse_int(toks[1]);
            continue;
        }
        const std::size_t k = toks[0] == "H1" ? 2 : toks[0] == "H2" ? 4 : 0;
        require(k != 0 && toks.size() == k + 3, ErrorCode::ParseError, "bad Hamiltonian line: " + line);
        Entry e;
        for (std::size_t j = 0; j < k; ++j) {
            e.idx.push_back(parse_int(toks[1 + j]));
            require(e.idx.back() >= 1, ErrorCode::ParseError, "orbital indices start at 1");
            m = std::max(m, e.idx.back());
        }
        e.v = {parse_real(toks[k + 1]), parse_real(toks[k + 2])};
        entries.push_back(std::move(e));
    }
    if (declared != 0) {
        require(declared >= m, ErrorCode::ParseError, "entry index exceeds declared M");
        m = declared;
    }
    require(m >= 1, ErrorCode::ParseError, "Hamiltonian file has no entries");
    oracle::ToyHamiltonian h(m);
    for (const auto& e : entries) {
        if (e.idx.size() == 2) h.set_h1(e.idx[0], e.idx[1], e.v);
        else h.set_h2(e.idx[0], e.idx[1], e.idx[2], e.idx[3], e.v);
    }
    h.validate();
    return h;
}

inline void write_hamiltonian(std::ostream& os, const oracle::ToyHamiltonian& h) {
    const int m = h.num_orbitals();
    os << "M " << m << '\n';
    for (int p = 1; p <= m; ++p)
        for (int q = 1; q <= m; ++q)
            if (h.h1(p, q) != cplx{0.0, 0.0})
                os << "H1 " << p << ' ' << q << ' ' << format_real(h.h1(p, q).real()) << ' '
                   << format_real(h.h1(p, q).imag()) << '\n';
    for (int p = 1; p <= m; ++p)
        for (int q = 1; q <= m; ++q)
            for (int r = 1; r <= m; ++r)
                for (int s = 1; s <= m; ++s) {
                    const cplx v = h.h2(p, q, r, s);
                    if (v != cplx{0.0, 0.0})
                        os << "H2 " << p << ' ' << q << ' ' << r << ' ' << s << ' ' << format_real(v.real()) << ' '
                           << format_real(v.imag()) << '\n';
                }
}

// ---------------------------------------------------------------------------
// Basis matrices
// ---------------------------------------------------------------------------

inline BasisMatrix read_basis_matrix(std::istream& is) {
    std::vector<std::string> toks;
    std::string line;
    while (std::getline(is, line)) {
        if (detail::skippable(line)) continue;
        for (auto& t : detail::split_ws(line)) toks.push_back(std::move(t));
    }
    require(toks.size() >= 3 && toks[0] == "DIM", ErrorCode::ParseError, "basis matrix file must start with DIM M1 M2");
    const int r = parse_int(toks[1]);
    const int c = parse_int(toks[2]);
    require(r >= 1 && c >= 1, ErrorCode::ParseError, "matrix dimensions must be positive");
    require(toks.size() == 3 + 2 * static_cast<std::size_t>(r) * static_cast<std::size_t>(c), ErrorCode::ParseError,
            "expected " + std::to_string(r * c) + " re/im pairs");
    BasisMatrix out{Eigen::MatrixXcd(r, c)};
    std::size_t k = 3;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j, k += 2) out.u(i, j) = {parse_real(toks[k]), parse_real(toks[k + 1])};
    return out;
}

inline void write_basis_matrix(std::ostream& os, const BasisMatrix& m) {
    os << "DIM " << m.rows() << ' ' << m.cols() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j)
            os << (j ? "  " : "") << format_real(m.u(i, j).real()) << ' ' << format_real(m.u(i, j).imag());
        os << '\n';
    }
}

} // namespace hyq::io

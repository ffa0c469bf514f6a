// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

// hyquant command line. Exit codes: 0 ok, 2 usage or parse error, 3 precondition failure,
// 4 verification mismatch, 5 qubit cap exceeded.

#include "hyquant/basis_transform.hpp"
#include "hyquant/conversion.hpp"
#include "hyquant/encodings.hpp"
#include "hyquant/fci_oracle.hpp"
#include "hyquant/io.hpp"
#include "hyquant/resource_report.hpp"

#include "CLI11.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hyq;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitVerify = 4;
constexpr int kExitCap = 5;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerifyFailure {
    std::string what;
    double deviation;
};

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(fileno(stderr)) != 0; }

void report_error(std::string_view label, const std::string& msg) {
    if (use_color()) std::cerr << "\033[1;31m" << label << "\033[0m " << msg << '\n';
    else std::cerr << label << ' ' << msg << '\n';
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    return in;
}

EncodedState load_state(const std::string& path) {
    auto in = open_input(path);
    return io::read_state(in);
}

/// Writes to `path`, or stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::SinkUnwritable, "cannot open " + path + " for writing");
    out << text;
    require(static_cast<bool>(out.flush()), ErrorCode::SinkUnwritable, "write to " + path + " failed");
}

std::string count_lines(const GateCount& c) {
    return "toffoli_equiv " + std::to_string(c.toffoli_equiv) + "\ncnot " + std::to_string(c.cnot) + "\nsingle_qubit " +
           std::to_string(c.single_qubit) + "\nregister_unitary_dim_sum " + std::to_string(c.register_unitary_dim_sum) +
           "\n";
}

oracle::FockVector to_fock(const EncodedState& es) {
    const auto v = es.discipline == Discipline::SortedList ? sorted_list_to_fock(es) : first_quantized_to_fock(es);
    return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct Comparison {
    double fidelity;
    double deviation;
};

/// Fidelity and max deviation after removing the global phase of <expect|got>.
Comparison compare(const oracle::FockVector& expect, const oracle::FockVector& got) {
    const cplx ov = expect.dot(got);
    const double ne = expect.norm(), ng = got.norm();
    const double fid = ne > 0 && ng > 0 ? std::norm(ov) / (ne * ne * ng * ng) : 0.0;
    const cplx phase = std::abs(ov) > 0 ? std::conj(ov) / std::abs(ov) : cplx{1.0, 0.0};
    return {fid, (expect - phase * got).cwiseAbs().maxCoeff()};
}

void verify(const Comparison& c, double tol, std::string& out) {
    out += "fidelity " + fixed6(c.fidelity) + "\n";
    if (c.deviation > tol) throw VerifyFailure{"circuit result disagrees with the Fock-space oracle", c.deviation};
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct EncodeArgs {
    bool sl = false, fq = false;
    int m = 0;
    std::string occ;
    int nreg = -1;
    std::string out;
};

int cmd_encode(const EncodeArgs& a) {
    if (a.sl == a.fq) throw UsageError("pass exactly one of --sl / --fq");
    std::vector<int> orbitals;
    try {
        orbitals = detail::parse_int_list(a.occ);
    } catch (const Error&) {
        throw UsageError("--occ must be a comma-separated orbital list");
    }
    const auto x = OccupationBitstring::from_orbitals(a.m, orbitals);
    const EncodedState es = a.sl ? encode_sorted_list(x, a.nreg < 0 ? std::max(1, x.count()) : a.nreg)
                                 : encode_first_quantized_determinant(x);
    emit(a.out, io::state_to_string(es));
    return kExitOk;
}

struct ConvertArgs {
    std::string dir, in, out;
    int nreg = -1;
    int electrons = -1;
    std::uint64_t seed = 1;
    int budget = 16;
    bool verify = false;
    double tol = 1e-9;
};

int cmd_convert(const ConvertArgs& a) {
    const EncodedState in = load_state(a.in);
    std::string log;
    EncodedState result;
    ConversionReport rep;
    if (a.dir == "fq2sl") {
        std::tie(result, rep) = first_to_second(in, a.nreg);
    } else {
        std::mt19937_64 rng(a.seed);
        const int n = a.electrons >= 0 ? a.electrons : in.num_electrons;
        require(n >= 1, ErrorCode::MixedParticleNumber, "pass --N; the input has no single electron count");
        std::tie(result, rep) = second_to_first(in, n, rng, a.budget);
    }
    log += count_lines(rep.gate_count);
    log += "record_ancillas " + std::to_string(rep.record_ancillas) + "\n";
    log += "success_probability " + fixed6(rep.success_probability) + "\n";
    log += "attempts " + std::to_string(rep.attempts) + "\n";
    emit(a.out, io::state_to_string(result));
    if (a.verify) {
        const Comparison c = compare(to_fock(in), to_fock(result));
        try {
            verify(c, a.tol, log);
        } catch (const VerifyFailure&) {
            std::cout << log;
            throw;
        }
    }
    std::cout << log;
    return kExitOk;
}

struct RdmArgs {
    int k = 1;
    std::string state, out;
    bool verify = false;
    double tol = 1e-8;
};

int cmd_rdm(const RdmArgs& a) {
    require(a.k == 1 || a.k == 2, ErrorCode::BadParam, "--k must be 1 or 2");
    const EncodedState es = load_state(a.state);
    const int m = es.layout().num_orbitals();
    const oracle::FockSpace space(m);
    const oracle::FockVector psi = to_fock(es);
    require(std::abs(psi.norm() - 1.0) <= 1e-8, ErrorCode::BadParam, "state must be normalized");

    std::ostringstream csv;
    cplx trace = 0.0;
    if (a.k == 1) {
        csv << "p,q,re,im\r\n";
        for (int p = 1; p <= m; ++p)
            for (int q = 1; q <= m; ++q) {
                const std::array<int, 1> pp{p}, qq{q};
                const cplx v = oracle::k_rdm(psi, pp, qq, space);
                if (p == q) trace += v;
                csv << p << ',' << q << ',' << io::format_real(v.real()) << ',' << io::format_real(v.imag()) << "\r\n";
            }
    } else {
        csv << "p1,p2,q1,q2,re,im\r\n";
        for (int p1 = 1; p1 <= m; ++p1)
            for (int p2 = 1; p2 <= m; ++p2)
                for (int q1 = 1; q1 <= m; ++q1)
                    for (int q2 = 1; q2 <= m; ++q2) {
                        const std::array<int, 2> pp{p1, p2}, qq{q1, q2};
                        const cplx v = oracle::k_rdm(psi, pp, qq, space);
                        if (p1 == q1 && p2 == q2) trace += v;
                        csv << p1 << ',' << p2 << ',' << q1 << ',' << q2 << ',' << io::format_real(v.real()) << ','
                            << io::format_real(v.imag()) << "\r\n";
                    }
    }
    emit(a.out, csv.str());
    // Sum rule: tr 1D = N, tr 2D = N(N-1).
    double n = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) n += std::norm(psi(i)) * std::popcount(static_cast<std::uint64_t>(i));
    const double expect = a.k == 1 ? n : n * (n - 1.0);
    std::cout << "trace = " << fixed6(trace.real()) << "\n";
    if (a.verify && std::abs(trace - expect) > a.tol)
        throw VerifyFailure{"RDM trace breaks the particle-number sum rule", std::abs(trace - expect)};
    return kExitOk;
}

struct TensorArgs {
    std::string a, b, out;
    bool verify = false;
    double tol = 1e-9;
};

/// Sum over determinant pairs of a^dag_{x...} |y>, the merge target in the Fock basis.
oracle::FockVector merge_oracle(const oracle::FockVector& fa, const oracle::FockVector& fb, const oracle::FockSpace& space) {
    oracle::FockVector out = oracle::FockVector::Zero(space.dim());
    for (Eigen::Index x = 0; x < fa.size(); ++x) {
        if (fa(x) == cplx{0.0, 0.0}) continue;
        for (Eigen::Index y = 0; y < fb.size(); ++y) {
            if (fb(y) == cplx{0.0, 0.0}) continue;
            oracle::FockVector v = space.basis_vector(static_cast<std::uint64_t>(y));
            for (int p = space.num_orbitals(); p >= 1; --p)
                if ((x >> (p - 1)) & 1) v = oracle::apply_ladder(v, p, LadderKind::Create, space);
            out += fa(x) * fb(y) * v;
        }
    }
    return out;
}

int cmd_tensor(const TensorArgs& a) {
    const EncodedState sa = load_state(a.a);
    const EncodedState sb = load_state(a.b);
    const MergeResult r = tensor_product_merge(sa, sb);
    const double dup = r.duplicate_probability();
    std::string log = count_lines(r.gate_count) + "duplicate_probability " + fixed6(dup) + "\n";
    if (dup < 1.0 - 1e-12) {
        const EncodedState merged = r.extract_registers();
        emit(a.out, io::state_to_string(merged));
        if (a.verify) {
            const oracle::FockSpace space(sa.layout().num_orbitals());
            oracle::FockVector got = to_fock(merged);
            const oracle::FockVector expect = merge_oracle(to_fock(sa), to_fock(sb), space);
            // The flag-zero branch carries norm sqrt(1 - dup); compare unnormalized amplitudes.
            got *= std::sqrt(1.0 - dup) / got.norm();
            const Comparison c{compare(expect, got).fidelity, (expect - got).cwiseAbs().maxCoeff()};
            try {
                verify(c, a.tol, log);
            } catch (const VerifyFailure&) {
                std::cout << log;
                throw;
            }
        }
    }
    std::cout << log;
    return kExitOk;
}

struct BasisArgs {
    std::string in, matrix, qft, out;
    bool complete = false;
    bool verify = false;
    double tol = 1e-10;
};

int cmd_basis(const BasisArgs& a) {
    if (a.matrix.empty() == a.qft.empty()) throw UsageError("pass exactly one of --matrix / --qft");
    const EncodedState in = load_state(a.in);
    TransformResult r;
    Eigen::MatrixXcd u;
    if (!a.matrix.empty()) {
        auto f = open_input(a.matrix);
        BasisMatrix m = io::read_basis_matrix(f);
        if (a.complete) m = mo_to_pw_matrix(m.u);
        u = m.u;
        r = apply_register_transform(in, m);
    } else {
        if (a.qft != "forward" && a.qft != "inverse") throw UsageError("--qft takes forward or inverse");
        const auto dir = a.qft == "forward" ? QftDirection::Forward : QftDirection::Inverse;
        r = qft_register_transform(in, dir);
        u = dft_matrix(in.layout().num_orbitals(), dir).u;
    }
    emit(a.out, io::state_to_string(r.state));
    std::string log = count_lines(r.gate_count);
    if (a.verify) {
        const oracle::FockSpace space(in.layout().num_orbitals());
        const Comparison c = compare(oracle::rotate_determinants(to_fock(in), u, space), to_fock(r.state));
        try {
            verify(c, a.tol, log);
        } catch (const VerifyFailure&) {
            std::cout << log;
            throw;
        }
    }
    std::cout << log;
    return kExitOk;
}

struct CountArgs {
    std::string circuit;
    int m = 0, n = 0;
};

int cmd_count(const CountArgs& a) {
    if (!a.circuit.empty()) {
        auto f = open_input(a.circuit);
        std::cout << count_lines(count_gates(io::read_circuit(f)));
        return kExitOk;
    }
    if (a.m <= 0 || a.n <= 0) throw UsageError("pass --circuit, or --M and --N for a conversion circuit");
    std::cout << count_lines(first_to_second_gate_count(a.m, a.n));
    return kExitOk;
}

struct ScalingArgs {
    std::string grid = "default";
    std::string out;
    std::vector<std::string> bindings;
};

std::vector<int> parse_axis(const std::string& s) {
    try {
        return detail::parse_int_list(s);
    } catch (const Error&) {
        throw UsageError("bad grid axis '" + s + "'");
    }
}

int cmd_scaling_report(const ScalingArgs& a) {
    std::vector<report::ScalingSample> grid;
    if (a.grid == "default") {
        grid = report::default_conversion_grid();
    } else {
        // N=2,4,8;M=8,16,32
        const auto semi = a.grid.find(';');
        if (semi == std::string::npos || a.grid.rfind("N=", 0) != 0 || a.grid.compare(semi + 1, 2, "M=") != 0)
            throw UsageError("--grid takes 'default' or 'N=..;M=..'");
        grid = report::conversion_scaling_samples(parse_axis(a.grid.substr(2, semi - 2)), parse_axis(a.grid.substr(semi + 3)));
    }
    report::Bindings b{{"N", 10},      {"M_MO", 100}, {"M_PW", 10000}, {"eps_QPE", 0.001}, {"eps_RDM", 0.01},
                       {"eps_HAD", 0.01}, {"k", 2},   {"Mobs", 10},    {"N_ion", 10},      {"Omega", 100},
                       {"eta", 1},     {"delta", 0.01}, {"eps", 0.01},   {"a", 0.5},         {"M", 10000},
                       {"M1", 100},    {"M2", 10000}};
    for (const auto& kv : a.bindings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--bind takes name=value");
        try {
            b[kv.substr(0, eq)] = io::parse_real(kv.substr(eq + 1));
        } catch (const Error&) {
            throw UsageError("bad value in --bind " + kv);
        }
    }
    const auto catalog = report::cost_catalog();
    std::vector<report::FormulaRow> rows;
    for (const auto& f : catalog) rows.push_back({&f, b});
    const std::vector<report::ScalingFit> fits{report::fit_scaling(grid, report::batcher_conversion_model()),
                                               report::fit_scaling(grid, report::nlogn_conversion_model())};
    const auto text = report::emit_report(rows, fits, a.out);
    std::cout << text.table;
    const auto x = report::find_crossover(report::find_formula(catalog, "whole.first.simulation"),
                                          report::find_formula(catalog, "whole.second.simulation"), "M_PW", b, 1,
                                          1LL << 52);
    std::cout << "crossover M_PW " << (x ? std::to_string(*x) : std::string("none")) << '\n';
    if (a.out.empty()) std::cout << text.csv;
    return kExitOk;
}

struct IonizeArgs {
    std::string hamiltonian, out;
    int orbital = 1;
    int n0 = 1;
    bool verify = false;
    double tol = 1e-8;
};

int cmd_ionize(const IonizeArgs& a) {
    auto f = open_input(a.hamiltonian);
    const auto h = io::read_hamiltonian(f);
    const auto t = oracle::ionization_attachment_probabilities(h, a.orbital, a.n0);
    std::ostringstream csv;
    csv << "channel,n,lambda\r\n";
    double sh = 0.0, sp = 0.0;
    for (std::size_t n = 0; n < t.lambda_h.size(); ++n) {
        csv << "h," << n << ',' << io::format_real(t.lambda_h[n]) << "\r\n";
        sh += t.lambda_h[n];
    }
    for (std::size_t n = 0; n < t.lambda_p.size(); ++n) {
        csv << "p," << n << ',' << io::format_real(t.lambda_p[n]) << "\r\n";
        sp += t.lambda_p[n];
    }
    emit(a.out, csv.str());
    std::cout << "ground_energy " << fixed6(t.ground_energy) << "\noccupation " << fixed6(t.occupation) << "\nsum_h "
              << fixed6(sh) << "\nsum_p " << fixed6(sp) << "\n";
    const double dev = std::max(std::abs(sh - t.occupation), std::abs(sp - (1.0 - t.occupation)));
    if (a.verify && dev > a.tol) throw VerifyFailure{"ionization sums break the completeness rule", dev};
    return kExitOk;
}

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError: return kExitUsage;
        case ErrorCode::CapExceeded: return kExitCap;
        default: return kExitPrecondition;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyquant: first/second quantization conversion toolkit"};
    app.require_subcommand(1);

    EncodeArgs enc;
    auto* s_enc = app.add_subcommand("encode", "Encode an occupation bitstring as a state file");
    s_enc->add_flag("--sl", enc.sl, "Sorted-list encoding");
    s_enc->add_flag("--fq", enc.fq, "First-quantized determinant");
    s_enc->add_option("--M", enc.m, "Orbital count")->required();
    s_enc->add_option("--occ", enc.occ, "Occupied orbitals, e.g. 1,3");
    s_enc->add_option("--nreg", enc.nreg, "Register count (sorted list)");
    s_enc->add_option("--out", enc.out, "Output file (default stdout)");

    ConvertArgs conv;
    auto* s_conv = app.add_subcommand("convert", "Convert between the encodings");
    s_conv->add_option("--dir", conv.dir, "fq2sl or sl2fq")->required()->check(CLI::IsMember({"fq2sl", "sl2fq"}));
    s_conv->add_option("--in", conv.in, "Input state file")->required();
    s_conv->add_option("--out", conv.out, "Output state file (default stdout)");
    s_conv->add_option("--nreg", conv.nreg, "Output register count (fq2sl)");
    s_conv->add_option("--N", conv.electrons, "Electron count (sl2fq)");
    s_conv->add_option("--seed", conv.seed, "RNG seed for the record preparation");
    s_conv->add_option("--budget", conv.budget, "Seed preparation attempts");
    s_conv->add_flag("--verify", conv.verify, "Cross-check against the Fock-space oracle");
    s_conv->add_option("--tol", conv.tol, "Verification tolerance");

    RdmArgs rdm;
    auto* s_rdm = app.add_subcommand("rdm", "k-RDM of a state file as CSV");
    s_rdm->add_option("--k", rdm.k, "RDM order (1 or 2)");
    s_rdm->add_option("--state", rdm.state, "State file")->required();
    s_rdm->add_option("--out", rdm.out, "CSV output (default stdout)");
    s_rdm->add_flag("--verify", rdm.verify, "Check the trace sum rule");
    s_rdm->add_option("--tol", rdm.tol, "Verification tolerance");

    TensorArgs ten;
    auto* s_ten = app.add_subcommand("tensor", "Merge two sorted-list states");
    s_ten->add_option("--a", ten.a, "Left state file")->required();
    s_ten->add_option("--b", ten.b, "Right state file")->required();
    s_ten->add_option("--out", ten.out, "Merged state (default stdout)");
    s_ten->add_flag("--verify", ten.verify, "Cross-check against the ladder-string oracle");
    s_ten->add_option("--tol", ten.tol, "Verification tolerance");

    BasisArgs bas;
    auto* s_bas = app.add_subcommand("basis", "Register-wise basis transformation of a first-quantized state");
    s_bas->add_option("--in", bas.in, "Input state file")->required();
    s_bas->add_option("--matrix", bas.matrix, "Basis matrix file");
    s_bas->add_flag("--complete", bas.complete, "Complete a rectangular table to a unitary first");
    s_bas->add_option("--qft", bas.qft, "forward or inverse register QFT");
    s_bas->add_option("--out", bas.out, "Output state file (default stdout)");
    s_bas->add_flag("--verify", bas.verify, "Cross-check against the determinant-rotation oracle");
    s_bas->add_option("--tol", bas.tol, "Verification tolerance");

    CountArgs cnt;
    auto* s_cnt = app.add_subcommand("count", "Gate counts of a circuit file or a conversion circuit");
    s_cnt->add_option("--circuit", cnt.circuit, "Circuit file");
    s_cnt->add_option("--M", cnt.m, "Orbital count (conversion circuit)");
    s_cnt->add_option("--N", cnt.n, "Electron count (conversion circuit)");

    ScalingArgs sca;
    auto* s_sca = app.add_subcommand("scaling-report", "Cost formulas and conversion scaling fits");
    s_sca->add_option("--grid", sca.grid, "'default' or 'N=2,4,8;M=8,16,32,64'");
    s_sca->add_option("--out", sca.out, "CSV output (default stdout after the table)");
    s_sca->add_option("--bind", sca.bindings, "Override a formula parameter, name=value");

    IonizeArgs ion;
    auto* s_ion = app.add_subcommand("ionize", "Ionization and attachment probabilities of a toy Hamiltonian");
    s_ion->add_option("--ham", ion.hamiltonian, "Hamiltonian file")->required();
    s_ion->add_option("--orbital", ion.orbital, "Orbital i");
    s_ion->add_option("--n0", ion.n0, "Electron count of the ground state");
    s_ion->add_option("--out", ion.out, "CSV output (default stdout)");
    s_ion->add_flag("--verify", ion.verify, "Check the completeness sum rules");
    s_ion->add_option("--tol", ion.tol, "Verification tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (s_enc->parsed()) return cmd_encode(enc);
        if (s_conv->parsed()) return cmd_convert(conv);
        if (s_rdm->parsed()) return cmd_rdm(rdm);
        if (s_ten->parsed()) return cmd_tensor(ten);
        if (s_bas->parsed()) return cmd_basis(bas);
        if (s_cnt->parsed()) return cmd_count(cnt);
        if (s_sca->parsed()) return cmd_scaling_report(sca);
        if (s_ion->parsed()) return cmd_ionize(ion);
    } catch (const UsageError& e) {
        report_error("usage:", e.what());
        return kExitUsage;
    } catch (const VerifyFailure& v) {
        report_error("verify:", v.what);
        std::cout << "max deviation " << sci(v.deviation) << '\n';
        return kExitVerify;
    } catch (const Error& e) {
        report_error("error:", e.what());
        return exit_code_for(e.code());
    }
    return kExitUsage;
}

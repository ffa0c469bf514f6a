// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file resource_report.hpp
 * @brief Big-O cost formulas as expression trees, crossover search, log-log scaling fits
 *        and CSV / table reports.
 *
 * Formulas use unit constants; only ratios and crossovers between them mean anything.
 * log() is base 2 and ln() natural, both floored at 1 so every formula stays positive and
 * all-ones bindings give 1 for pure power laws.
 */

#pragma once

#include "hyquant/conversion.hpp"
#include "hyquant/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hyq::report {

using Bindings = std::map<std::string, double, std::less<>>;

// ---------------------------------------------------------------------------
// Expression trees
// ---------------------------------------------------------------------------

struct Expr {
    enum class Kind { Number, Param, Add, Sub, Mul, Div, Pow, Log, Ln, Sqrt };
    Kind kind = Kind::Number;
    double number = 0.0;
    std::string name;
    std::shared_ptr<const Expr> lhs, rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        skip();
        require(pos_ == s_.size(), ErrorCode::ParseError, "trailing input in formula: " + std::string(s_));
        return e;
    }

private:
    static ExprPtr node(Expr::Kind k, ExprPtr a, ExprPtr b = nullptr) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->lhs = std::move(a);
        e->rhs = std::move(b);
        return e;
    }

    void skip() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr sum() {
        ExprPtr e = product();
        for (;;) {
            if (eat('+')) e = node(Expr::Kind::Add, e, product());
            else if (eat('-')) e = node(Expr::Kind::Sub, e, product());
            else return e;
        }
    }

    ExprPtr product() {
        ExprPtr e = power();
        for (;;) {
            if (eat('*')) e = node(Expr::Kind::Mul, e, power());
            else if (eat('/')) e = node(Expr::Kind::Div, e, power());
            else return e;
        }
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (eat('^')) return node(Expr::Kind::Pow, base, power());
        return base;
    }

    ExprPtr atom() {
        skip();
        require(pos_ < s_.size(), ErrorCode::ParseError, "formula ends early: " + std::string(s_));
        if (eat('(')) {
            ExprPtr e = sum();
            require(eat(')'), ErrorCode::ParseError, "missing ')' in formula: " + std::string(s_));
            return e;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0 || s_[pos_] == '.')) ++pos_;
            auto e = std::make_shared<Expr>();
            e->number = std::stod(std::string(s_.substr(start, pos_ - start)));
            return e;
        }
        require(std::isalpha(static_cast<unsigned char>(c)) != 0, ErrorCode::ParseError,
                "unexpected character in formula: " + std::string(s_));
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) != 0 || s_[pos_] == '_')) ++pos_;
        const std::string id(s_.substr(start, pos_ - start));
        if (id == "log" || id == "ln" || id == "sqrt") {
            require(eat('('), ErrorCode::ParseError, id + " needs an argument");
            ExprPtr arg = sum();
            require(eat(')'), ErrorCode::ParseError, "missing ')' after " + id);
            return node(id == "log" ? Expr::Kind::Log : id == "ln" ? Expr::Kind::Ln : Expr::Kind::Sqrt, arg);
        }
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Param;
        e->name = id;
        return e;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

inline int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Pow: return 3;
        default: return 4;
    }
}

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline void collect(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == Expr::Kind::Param && std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
    if (e.lhs) collect(*e.lhs, out);
    if (e.rhs) collect(*e.rhs, out);
}

} // namespace detail

inline ExprPtr parse_expression(std::string_view text) { return detail::Parser(text).parse(); }

/// Canonical text: ' + ' and ' - ' spaced, '*', '/', '^' tight, minimal parentheses.
inline std::string render(const Expr& e) {
    using K = Expr::Kind;
    auto wrap = [](const Expr& child, bool need) { return need ? "(" + render(child) + ")" : render(child); };
    const int p = detail::precedence(e.kind);
    switch (e.kind) {
        case K::Number: return detail::format_number(e.number);
        case K::Param: return e.name;
        case K::Log: return "log(" + render(*e.lhs) + ")";
        case K::Ln: return "ln(" + render(*e.lhs) + ")";
        case K::Sqrt: return "sqrt(" + render(*e.lhs) + ")";
        case K::Add:
        case K::Sub:
            return wrap(*e.lhs, detail::precedence(e.lhs->kind) < p) + (e.kind == K::Add ? " + " : " - ") +
                   wrap(*e.rhs, detail::precedence(e.rhs->kind) <= p && e.kind == K::Sub);
        case K::Mul:
        case K::Div:
            return wrap(*e.lhs, detail::precedence(e.lhs->kind) < p) + (e.kind == K::Mul ? "*" : "/") +
                   wrap(*e.rhs, detail::precedence(e.rhs->kind) < p ||
                                    (e.kind == K::Div && detail::precedence(e.rhs->kind) == p));
        case K::Pow: return wrap(*e.lhs, detail::precedence(e.lhs->kind) <= p) + "^" + wrap(*e.rhs, detail::precedence(e.rhs->kind) < p);
    }
    return {};
}

inline double evaluate(const Expr& e, const Bindings& b) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Number: return e.number;
        case K::Param: {
            const auto it = b.find(e.name);
            require(it != b.end(), ErrorCode::UnboundParameter, "parameter " + e.name + " is not bound");
            return it->second;
        }
        case K::Add: return evaluate(*e.lhs, b) + evaluate(*e.rhs, b);
        case K::Sub: return evaluate(*e.lhs, b) - evaluate(*e.rhs, b);
        case K::Mul: return evaluate(*e.lhs, b) * evaluate(*e.rhs, b);
        case K::Div: return evaluate(*e.lhs, b) / evaluate(*e.rhs, b);
        case K::Pow: return std::pow(evaluate(*e.lhs, b), evaluate(*e.rhs, b));
        case K::Log: return std::max(1.0, std::log2(evaluate(*e.lhs, b)));
        case K::Ln: return std::max(1.0, std::log(evaluate(*e.lhs, b)));
        case K::Sqrt: return std::sqrt(evaluate(*e.lhs, b));
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Formulas and the catalog
// ---------------------------------------------------------------------------

struct CostFormula {
    std::string name;
    /// Where the row sits among the cost tables, in descriptive words.
    std::string citation;
    ExprPtr expr;

    CostFormula(std::string n, std::string c, std::string_view text)
        : name(std::move(n)), citation(std::move(c)), expr(parse_expression(text)) {}

    [[nodiscard]] std::string expression() const { return render(*expr); }

    /// In order of first appearance.
    [[nodiscard]] std::vector<std::string> parameters() const {
        std::vector<std::string> out;
        detail::collect(*expr, out);
        return out;
    }
};

/// Unit-constant value; every parameter must be bound and positive.
inline double evaluate_formula(const CostFormula& f, const Bindings& b) {
    for (const auto& p : f.parameters()) {
        const auto it = b.find(p);
        require(it != b.end(), ErrorCode::UnboundParameter, f.name + ": parameter " + p + " is not bound");
        require(it->second > 0.0, ErrorCode::BadParam, f.name + ": parameter " + p + " must be positive");
    }
    return evaluate(*f.expr, b);
}

/**
 * Parameters: N electrons, M_MO / M_PW orbitals, eps_QPE / eps_RDM / eps_HAD errors, k RDM
 * order, Mobs local observables, N_ion ions, Omega cell volume, eta spectral gap bound,
 * delta failure probability, eps target error, a initial-state overlap, M1 / M2 basis sizes.
 */
inline std::vector<CostFormula> cost_catalog() {
    const std::string whole = "ground state, whole molecular system";
    const std::string defect = "ground state, defect or adsorbate in a periodic cell";
    const std::string excited = "excited-state characterization";
    const std::string dynamic = "Born-Oppenheimer dynamics, per time step";
    const std::string aimd = "Born-Oppenheimer dynamics breakdown";
    const std::string green = "Green's function resolvent block-encoding";
    const std::string circuits = "hybrid-quantization circuits";
    return {
        {"whole.first.simulation", whole + "; first quantization; Hamiltonian simulation", "N^(4/3)*M_PW^(2/3)/eps_QPE"},
        {"whole.first.measurement", whole + "; first quantization; measurement", "k^k*N^k*log(M_PW)/eps_RDM"},
        {"whole.second.simulation", whole + "; second quantization; Hamiltonian simulation", "M_MO^2.1/eps_QPE"},
        {"whole.second.measurement", whole + "; second quantization; measurement", "M_MO^k/eps_RDM"},
        {"whole.hybrid.simulation", whole + "; hybrid; Hamiltonian simulation", "M_MO^2.1/eps_QPE"},
        {"whole.hybrid.measurement", whole + "; hybrid; measurement",
         "N*log(N)*log(M_MO) + k^k*N^k*log(M_MO)/eps_RDM"},
        {"defect.first.simulation", defect + "; first quantization; Hamiltonian simulation", "N^(4/3)*M_PW^(2/3)/eps_QPE"},
        {"defect.first.measurement", defect + "; first quantization; measurement", "k^k*N^k*log(M_PW)/eps_RDM"},
        {"defect.second.simulation", defect + "; second quantization; Hamiltonian simulation", "M_MO^2.1/eps_QPE"},
        {"defect.second.measurement", defect + "; second quantization; measurement", "sqrt(Mobs)/eps_RDM"},
        {"defect.hybrid.simulation", defect + "; hybrid; Hamiltonian simulation", "N^(4/3)*M_PW^(2/3)/eps_QPE"},
        {"defect.hybrid.measurement", defect + "; hybrid; measurement", "N*Mobs*M_PW + sqrt(Mobs)/eps_RDM"},
        {"excited.second.simulation", excited + "; second quantization; Hamiltonian simulation", "M_PW^(7/3)"},
        {"excited.second.measurement", excited + "; second quantization; measurement", "1/eps_HAD^2"},
        {"excited.hybrid.simulation", excited + "; hybrid; Hamiltonian simulation", "N*M_PW^(2/3)"},
        {"excited.hybrid.measurement", excited + "; hybrid; measurement", "1/eps_HAD^2"},
        {"dynamic.first.classical", dynamic + "; first quantization; classical", "M_PW^4"},
        {"dynamic.first.quantum", dynamic + "; first quantization; quantum",
         "N^(4/3)*M_PW^(2/3)/eps_QPE + N^2*log(M_PW)/eps_RDM^2"},
        {"dynamic.second.classical", dynamic + "; second quantization; classical", "M_MO^6"},
        {"dynamic.second.quantum", dynamic + "; second quantization; quantum", "M_MO^2.1/eps_QPE + M_MO^2/eps_RDM"},
        {"dynamic.hybrid.classical", dynamic + "; hybrid; classical", "M_MO^4"},
        {"dynamic.hybrid.quantum", dynamic + "; hybrid; quantum",
         "N^(4/3)*M_PW^(2/3)/eps_QPE + N*M_MO*M_PW + M_MO^2/eps_RDM"},
        {"aimd.prep.mo", aimd + "; ground-state preparation; MO basis", "M_MO^2.1/a"},
        {"aimd.prep.pw", aimd + "; ground-state preparation; PW and hybrid bases",
         "N^(8/3)*M_PW^(1/3)/a + N^(4/3)*M_PW^(2/3)/a"},
        {"aimd.forces.quantum.mo", aimd + "; forces, quantum; MO basis", "M_MO^2/eps_RDM"},
        {"aimd.forces.quantum.pw", aimd + "; forces, quantum; PW basis", "N^2*log(M_PW)/eps_RDM^2"},
        {"aimd.forces.quantum.hybrid.transform", aimd + "; forces, quantum; hybrid basis, PW to MO", "N*M_MO*M_PW"},
        {"aimd.forces.quantum.hybrid.conversion", aimd + "; forces, quantum; hybrid basis, first to second",
         "N*log(N)*log(M_MO)"},
        {"aimd.forces.quantum.hybrid.rdm", aimd + "; forces, quantum; hybrid basis, RDMs", "M_MO^2/eps_RDM"},
        {"aimd.forces.classical.mo", aimd + "; forces, classical; MO basis", "N_ion*M_MO^4"},
        {"aimd.forces.classical.pw", aimd + "; forces, classical; PW basis", "N_ion*M_PW^3"},
        {"aimd.forces.classical.hybrid", aimd + "; forces, classical; hybrid basis", "N_ion*M_MO^4"},
        {"aimd.ions.mo", aimd + "; ion propagation; MO basis", "N_ion^2"},
        {"aimd.ions.pw", aimd + "; ion propagation; PW basis", "N_ion^2"},
        {"aimd.ions.hybrid", aimd + "; ion propagation; hybrid basis", "N_ion^2"},
        {"aimd.update.classical.mo", aimd + "; Hamiltonian update, classical; MO basis", "M_MO^6"},
        {"aimd.update.quantum.mo", aimd + "; Hamiltonian update, quantum; MO basis", "M_MO^2"},
        {"green.preconditioned.first", green + "; preconditioned inversion; first quantization",
         "N^6*M_PW*ln(1/delta)/(Omega*eta^2*eps)"},
        {"green.preconditioned.second", green + "; preconditioned inversion; second quantization, dual basis",
         "M_PW^5*ln(1/delta)/(Omega^2*eta^2*eps)"},
        {"green.direct.first", green + "; direct inversion; first quantization",
         "N*M_PW^(2/3)/(Omega^(2/3)*eta^2*eps) + N^2*M_PW^(1/3)/(Omega^(1/3)*eta^2*eps)"},
        {"green.direct.second", green + "; direct inversion; second quantization, dual basis",
         "M_PW^(7/3)/(Omega^(2/3)*eta^2*eps)"},
        {"circuits.conversion", circuits + "; first/second quantization conversion", "N*log(N)*log(M)"},
        {"circuits.conversion.batcher", circuits + "; conversion as built, Batcher sorting network",
         "N*log(N)^2*log(M)"},
        {"circuits.basis_transform", circuits + "; register-wise basis transformation, worst case", "N*M1*M2"},
        {"circuits.qft", circuits + "; plane-wave to dual basis by register QFT", "N*log(M)*log(log(M))"},
    };
}

inline const CostFormula& find_formula(const std::vector<CostFormula>& catalog, std::string_view name) {
    const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const CostFormula& f) { return f.name == name; });
    require(it != catalog.end(), ErrorCode::BadParam, "no cost formula named " + std::string(name));
    return *it;
}

/**
 * Smallest integer value of `var` in [lo, hi] where `rising` exceeds `fixed`, by bisection.
 * Assumes rising - fixed is increasing in `var`; nothing if it never crosses.
 */
inline std::optional<long long> find_crossover(const CostFormula& rising, const CostFormula& fixed, const std::string& var,
                                               Bindings b, long long lo, long long hi) {
    require(lo >= 1 && lo <= hi, ErrorCode::BadParam, "crossover search range");
    auto exceeds = [&](long long x) {
        b[var] = static_cast<double>(x);
        return evaluate_formula(rising, b) > evaluate_formula(fixed, b);
    };
    if (!exceeds(hi)) return std::nullopt;
    if (exceeds(lo)) return lo;
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        (exceeds(mid) ? hi : lo) = mid;
    }
    return hi;
}

// ---------------------------------------------------------------------------
// Scaling fits
// ---------------------------------------------------------------------------

struct ScalingSample {
    double n = 0.0;
    double m = 0.0;
    double count = 0.0;
};

/// count ~ c * N^a * log2(N)^b * M^c * log2(M)^d with fixed exponents.
struct ScalingModel {
    double n_power = 0.0;
    double log_n_power = 0.0;
    double m_power = 0.0;
    double log_m_power = 0.0;

    [[nodiscard]] double operator()(double n, double m) const {
        return std::pow(n, n_power) * std::pow(std::log2(n), log_n_power) * std::pow(m, m_power) *
               std::pow(std::log2(m), log_m_power);
    }

    [[nodiscard]] std::string describe() const {
        std::string out;
        auto term = [&](const std::string& base, double p) {
            if (p == 0.0) return;
            if (!out.empty()) out += "*";
            out += p == 1.0 ? base : base + "^" + detail::format_number(p);
        };
        term("N", n_power);
        term("log(N)", log_n_power);
        term("M", m_power);
        term("log(M)", log_m_power);
        return out.empty() ? "1" : out;
    }
};

struct ScalingFit {
    ScalingModel model;
    /// c in count ~ c * model, geometric least squares.
    double coefficient = 0.0;
    /// Of log(count) against log(c * model), clamped to [0, 1].
    double r_squared = 0.0;
    /// Slope of an unconstrained regression of log(count) on log(model); 1 means the exponents fit.
    double free_slope = 0.0;
    std::vector<ScalingSample> grid;
};

inline ScalingFit fit_scaling(const std::vector<ScalingSample>& samples, const ScalingModel& model) {
    require(samples.size() >= 6, ErrorCode::DegenerateGrid, "scaling fit needs at least 6 grid points");
    std::vector<double> y, x;
    for (const auto& s : samples) {
        require(s.count > 0.0 && s.n > 1.0 && s.m > 1.0, ErrorCode::DegenerateGrid,
                "scaling samples need N, M > 1 and positive counts");
        y.push_back(std::log(s.count));
        x.push_back(std::log(model(s.n, s.m)));
    }
    const double k = static_cast<double>(y.size());
    double mean_y = 0.0, mean_x = 0.0, offset = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        mean_y += y[i] / k;
        mean_x += x[i] / k;
        offset += (y[i] - x[i]) / k;
    }
    double ss_res = 0.0, ss_tot = 0.0, sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_res += std::pow(y[i] - (x[i] + offset), 2);
        ss_tot += std::pow(y[i] - mean_y, 2);
        sxy += (x[i] - mean_x) * (y[i] - mean_y);
        sxx += std::pow(x[i] - mean_x, 2);
    }
    ScalingFit fit;
    fit.model = model;
    fit.coefficient = std::exp(offset);
    fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 0.0;
    fit.free_slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.grid = samples;
    return fit;
}

inline ScalingModel batcher_conversion_model() { return {1.0, 2.0, 0.0, 1.0}; }
inline ScalingModel nlogn_conversion_model() { return {1.0, 1.0, 0.0, 1.0}; }

/// Toffoli-equivalent counts of counting-only first -> second circuits.
inline std::vector<ScalingSample> conversion_scaling_samples(const std::vector<int>& ns, const std::vector<int>& ms) {
    std::vector<ScalingSample> out;
    for (int n : ns)
        for (int m : ms)
            out.push_back({static_cast<double>(n), static_cast<double>(m),
                           static_cast<double>(first_to_second_gate_count(m, n).toffoli_equiv)});
    return out;
}

inline std::vector<ScalingSample> default_conversion_grid() {
    return conversion_scaling_samples({2, 4, 8}, {8, 16, 32, 64});
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct FormulaRow {
    const CostFormula* formula = nullptr;
    Bindings bindings;
};

/// RFC 4180 field: quoted when it holds a comma, quote or line break.
inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string describe_bindings(const CostFormula& f, const Bindings& b) {
    std::string out;
    for (const auto& p : f.parameters()) {
        if (!out.empty()) out += ";";
        const auto it = b.find(p);
        out += p + "=" + (it == b.end() ? std::string("?") : detail::format_number(it->second));
    }
    return out;
}

inline std::string describe_grid(const std::vector<ScalingSample>& grid) {
    std::vector<double> ns, ms;
    for (const auto& s : grid) {
        if (std::find(ns.begin(), ns.end(), s.n) == ns.end()) ns.push_back(s.n);
        if (std::find(ms.begin(), ms.end(), s.m) == ms.end()) ms.push_back(s.m);
    }
    auto join = [](const std::vector<double>& v) {
        std::string out;
        for (double d : v) out += (out.empty() ? "" : ";") + detail::format_number(d);
        return out;
    };
    return "N=" + join(ns) + " M=" + join(ms);
}

inline constexpr std::string_view kCsvHeader = "name,citation,parameters,value,expression,r_squared";

inline void write_csv(std::ostream& os, const std::vector<FormulaRow>& rows, const std::vector<ScalingFit>& fits) {
    os << kCsvHeader << "\r\n";
    for (const auto& r : rows)
        os << csv_field(r.formula->name) << ',' << csv_field(r.formula->citation) << ','
           << csv_field(describe_bindings(*r.formula, r.bindings)) << ','
           << format_value(evaluate_formula(*r.formula, r.bindings)) << ',' << csv_field(r.formula->expression()) << ",\r\n";
    for (const auto& f : fits)
        os << csv_field("fit:" + f.model.describe()) << ',' << csv_field("least-squares fit of measured Toffoli counts") << ','
           << csv_field(describe_grid(f.grid)) << ',' << format_value(f.coefficient) << ','
           << csv_field(f.model.describe()) << ',' << format_value(f.r_squared) << "\r\n";
}

inline void write_table(std::ostream& os, const std::vector<FormulaRow>& rows, const std::vector<ScalingFit>& fits) {
    os << "Unit constants throughout: only ratios and crossovers are meaningful.\n";
    std::size_t w_name = 4, w_expr = 10;
    for (const auto& r : rows) {
        w_name = std::max(w_name, r.formula->name.size());
        w_expr = std::max(w_expr, r.formula->expression().size());
    }
    os << std::left << std::setw(static_cast<int>(w_name)) << "name" << "  " << std::setw(static_cast<int>(w_expr))
       << "expression" << "  " << std::setw(12) << "value" << "  citation\n";
    for (const auto& r : rows)
        os << std::setw(static_cast<int>(w_name)) << r.formula->name << "  " << std::setw(static_cast<int>(w_expr))
           << r.formula->expression() << "  " << std::setw(12) << format_value(evaluate_formula(*r.formula, r.bindings))
           << "  " << r.formula->citation << '\n';
    for (const auto& f : fits)
        os << "fit " << f.model.describe() << " over " << describe_grid(f.grid) << ": c=" << format_value(f.coefficient)
           << " R^2=" << std::fixed << std::setprecision(4) << f.r_squared << " free slope=" << f.free_slope
           << std::defaultfloat << std::setprecision(6) << '\n';
    os << std::right;
}

struct ReportText {
    std::string csv;
    std::string table;
};

/// Both renderings; writes the CSV to `csv_path` when given.
inline ReportText emit_report(const std::vector<FormulaRow>& rows, const std::vector<ScalingFit>& fits,
                              const std::string& csv_path = {}) {
    std::ostringstream csv, table;
    write_csv(csv, rows, fits);
    write_table(table, rows, fits);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        require(static_cast<bool>(out), ErrorCode::SinkUnwritable, "cannot open " + csv_path + " for writing");
        out << csv.str();
        out.flush();
        require(static_cast<bool>(out), ErrorCode::SinkUnwritable, "write to " + csv_path + " failed");
    }
    return {csv.str(), table.str()};
}

} // namespace hyq::report

// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

#include "hyquant/resource_report.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>

namespace {

using namespace hyq;
using namespace hyq::report;
using hyq::testing::error_code_of;

TEST(Expression, RendersCatalogTextVerbatim) {
    for (const std::string text : {"N^(4/3)*M_PW^(2/3)/eps_QPE", "k^k*N^k*log(M_PW)/eps_RDM", "M_MO^2.1/eps_QPE",
                                   "N*log(N)^2*log(M)", "1/eps_HAD^2", "N^6*M_PW*ln(1/delta)/(Omega*eta^2*eps)",
                                   "a - (b - c)", "(a + b)*c", "(a^b)^c", "a^b^c"})
        EXPECT_EQ(render(*parse_expression(text)), text);
    EXPECT_EQ(render(*parse_expression("((N)) * (M)")), "N*M");
}

TEST(Expression, ParseErrors) {
    for (const char* bad : {"", "N +", "(N", "N $ M", "log N", "N)"})
        EXPECT_EQ(error_code_of([&] { parse_expression(bad); }), ErrorCode::ParseError) << bad;
}

TEST(Expression, Evaluation) {
    const Bindings b{{"N", 8.0}, {"M", 2.0}};
    EXPECT_DOUBLE_EQ(evaluate(*parse_expression("N^(1/3) + log(N)*sqrt(M^2)"), b), 2.0 + 6.0);
    EXPECT_DOUBLE_EQ(evaluate(*parse_expression("log(1) + ln(1)"), b), 2.0);  // both floored
    EXPECT_DOUBLE_EQ(evaluate(*parse_expression("N - M/2"), b), 7.0);
}

TEST(Formula, HybridRdmWorkedExample) {
    const auto catalog = cost_catalog();
    const auto& f = find_formula(catalog, "whole.hybrid.measurement");
    const double v = evaluate_formula(f, {{"N", 10}, {"M_MO", 100}, {"k", 1}, {"eps_RDM", 0.1}});
    // 10*log2(10)*log2(100) + 10*log2(100)/0.1
    EXPECT_NEAR(v, 885.0, 1.0);
    EXPECT_NEAR(v, 10 * 3.321928094887362 * 6.643856189774724 + 10 * 6.643856189774724 / 0.1, 1e-9);
}

TEST(Formula, AllOnesBindings) {
    for (const auto& f : cost_catalog()) {
        Bindings ones;
        for (const auto& p : f.parameters()) ones[p] = 1.0;
        const double v = evaluate_formula(f, ones);
        EXPECT_GT(v, 0.0) << f.name;
        if (f.expression().find('+') == std::string::npos) {
            EXPECT_DOUBLE_EQ(v, 1.0) << f.name;
        }
    }
}

TEST(Formula, UnboundAndNonPositiveParameters) {
    const auto catalog = cost_catalog();
    const auto& f = find_formula(catalog, "whole.first.simulation");
    EXPECT_EQ(error_code_of([&] { evaluate_formula(f, {{"N", 2}, {"M_PW", 4}}); }), ErrorCode::UnboundParameter);
    EXPECT_EQ(error_code_of([&] { evaluate_formula(f, {{"N", 2}, {"M_PW", 0}, {"eps_QPE", 1}}); }), ErrorCode::BadParam);
    EXPECT_EQ(error_code_of([&] { find_formula(catalog, "nope"); }), ErrorCode::BadParam);
}

TEST(Formula, MonotoneInEachParameter) {
    // Error budgets and the overlap a sit in denominators; everything else grows the cost.
    const std::vector<std::string> decreasing{"eps_QPE", "eps_RDM", "eps_HAD", "eps", "a", "Omega", "eta", "delta"};
    for (const auto& f : cost_catalog()) {
        Bindings base;
        for (const auto& p : f.parameters()) base[p] = 3.0;
        if (base.count("delta") != 0) base["delta"] = 0.01;
        const double v0 = evaluate_formula(f, base);
        for (const auto& p : f.parameters()) {
            Bindings up = base;
            up[p] *= 2.0;
            const double v1 = evaluate_formula(f, up);
            if (std::find(decreasing.begin(), decreasing.end(), p) != decreasing.end()) {
                EXPECT_LE(v1, v0) << f.name << " " << p;
            } else {
                EXPECT_GE(v1, v0) << f.name << " " << p;
            }
        }
    }
}

TEST(Crossover, MatchesClosedForm) {
    const auto catalog = cost_catalog();
    const auto& first = find_formula(catalog, "whole.first.simulation");
    const auto& second = find_formula(catalog, "whole.second.simulation");
    for (auto [n, m_mo] : std::vector<std::pair<double, double>>{{10, 100}, {4, 20}, {30, 60}}) {
        const auto x = find_crossover(first, second, "M_PW", {{"N", n}, {"M_MO", m_mo}, {"eps_QPE", 0.01}}, 1, 1LL << 40);
        ASSERT_TRUE(x.has_value());
        const double threshold = std::pow(std::pow(m_mo, 2.1) / std::pow(n, 4.0 / 3.0), 1.5);
        EXPECT_EQ(*x, static_cast<long long>(std::floor(threshold)) + 1);
    }
    EXPECT_FALSE(find_crossover(first, second, "M_PW", {{"N", 1}, {"M_MO", 1000}, {"eps_QPE", 1}}, 1, 100).has_value());
}

TEST(ScalingFitTest, ExactSyntheticData) {
    std::vector<ScalingSample> s;
    for (double n : {2.0, 4.0, 8.0})
        for (double m : {8.0, 16.0, 64.0}) s.push_back({n, m, 7.0 * n * std::pow(std::log2(n), 2) * std::log2(m)});
    const auto fit = fit_scaling(s, batcher_conversion_model());
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    EXPECT_NEAR(fit.coefficient, 7.0, 1e-9);
    EXPECT_NEAR(fit.free_slope, 1.0, 1e-9);
}

TEST(ScalingFitTest, ConstantCountsHaveNoExplainedVariance) {
    std::vector<ScalingSample> s;
    for (double n : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) s.push_back({n, 8.0, 5.0});
    EXPECT_NEAR(fit_scaling(s, batcher_conversion_model()).r_squared, 0.0, 1e-12);
}

TEST(ScalingFitTest, DegenerateGrids) {
    std::vector<ScalingSample> s(5, {2.0, 8.0, 1.0});
    EXPECT_EQ(error_code_of([&] { fit_scaling(s, batcher_conversion_model()); }), ErrorCode::DegenerateGrid);
    s.assign(6, {2.0, 8.0, 0.0});
    EXPECT_EQ(error_code_of([&] { fit_scaling(s, batcher_conversion_model()); }), ErrorCode::DegenerateGrid);
}

TEST(ScalingFitTest, ConversionCircuitsFollowBatcherModel) {
    const auto grid = default_conversion_grid();
    ASSERT_EQ(grid.size(), 12U);
    const auto fit = fit_scaling(grid, batcher_conversion_model());
    EXPECT_GE(fit.r_squared, 0.95);
    // Counts are (Batcher comparators) x (3b - 1); the N=2 row is a single comparator.
    EXPECT_EQ(grid[0].count, 1 * (3 * 4 - 1));
}

TEST(Report, CsvShapes) {
    EXPECT_EQ(emit_report({}, {}).csv, std::string(kCsvHeader) + "\r\n");
    const auto catalog = cost_catalog();
    const auto& f = find_formula(catalog, "whole.hybrid.measurement");
    const auto text = emit_report({{&f, {{"N", 10}, {"M_MO", 100}, {"k", 1}, {"eps_RDM", 0.1}}}}, {}).csv;
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    EXPECT_NE(text.find("\"ground state, whole molecular system; hybrid; measurement\""), std::string::npos);
    EXPECT_NE(text.find("N*log(N)*log(M_MO) + k^k*N^k*log(M_MO)/eps_RDM"), std::string::npos);
    EXPECT_NE(text.find("N=10;M_MO=100;k=1;eps_RDM=0.1"), std::string::npos);
}

TEST(Report, EveryCitationAppearsVerbatim) {
    const auto catalog = cost_catalog();
    std::vector<FormulaRow> rows;
    for (const auto& f : catalog) {
        Bindings b;
        for (const auto& p : f.parameters()) b[p] = 2.0;
        rows.push_back({&f, b});
    }
    const auto r = emit_report(rows, {fit_scaling(default_conversion_grid(), batcher_conversion_model())});
    for (const auto& f : catalog) {
        EXPECT_NE(r.csv.find(csv_field(f.citation)), std::string::npos) << f.name;
        EXPECT_NE(r.table.find(f.citation), std::string::npos) << f.name;
        EXPECT_NE(r.table.find(f.expression()), std::string::npos) << f.name;
    }
    EXPECT_NE(r.table.find("only ratios and crossovers are meaningful"), std::string::npos);
    EXPECT_NE(r.csv.find("fit:N*log(N)^2*log(M)"), std::string::npos);
}

TEST(Report, CsvQuoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Report, UnwritableSink) {
    EXPECT_EQ(error_code_of([&] { emit_report({}, {}, "/nonexistent-dir/report.csv"); }), ErrorCode::SinkUnwritable);
    const auto path = std::filesystem::temp_directory_path() / "hyquant_report_test.csv";
    emit_report({}, {}, path.string());
    EXPECT_TRUE(std::filesystem::exists(path));
    std::filesystem::remove(path);
}

} // namespace

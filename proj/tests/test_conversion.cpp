// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

#include "hyquant/conversion.hpp"
#include "hyquant/fci_oracle.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace {

using namespace hyq;
using hyq::testing::error_code_of;

OccupationBitstring occ(int m, std::vector<int> o) { return OccupationBitstring::from_orbitals(m, o); }

TEST(FirstToSecond, Examples) {
    const auto fq = encode_first_quantized_determinant(occ(4, {1, 3}));
    const auto [sl, report] = first_to_second(fq);
    EXPECT_EQ(sl.discipline, Discipline::SortedList);
    EXPECT_NEAR(ref::overlap(sl.state, encode_sorted_list(occ(4, {1, 3}), 2).state), 1.0, 1e-12);
    EXPECT_EQ(report.record_ancillas, 1);
    EXPECT_EQ(report.success_probability, 1.0);

    const auto one = encode_first_quantized_determinant(occ(4, {2}));
    const auto [sl1, r1] = first_to_second(one);
    EXPECT_EQ(max_deviation(sl1.state, one.state), 0.0);
    EXPECT_EQ(r1.record_ancillas, 0);
    EXPECT_EQ(r1.gate_count, GateCount{});
}

TEST(FirstToSecond, SuperpositionKeepsCoefficients) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    const cplx alpha{g(rng), g(rng)}, beta{g(rng), g(rng)};
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    Statevector in = encode_first_quantized_determinant(occ(4, {1, 2})).state;
    in *= alpha / n;
    in.add_scaled(beta / n, encode_first_quantized_determinant(occ(4, {1, 3})).state);
    const auto [sl, report] = first_to_second({in, Discipline::FirstQuantized, 2}, 3);
    Statevector expect = encode_sorted_list(occ(4, {1, 2}), 3).state;
    expect *= alpha / n;
    expect.add_scaled(beta / n, encode_sorted_list(occ(4, {1, 3}), 3).state);
    EXPECT_NEAR(std::abs(inner(expect, sl.state)), 1.0, 1e-12);
    EXPECT_TRUE(validate(sl).ok());
}

TEST(FirstToSecond, RefusesNonAntisymmetricInput) {
    const auto l = build_layout(4, 2, 0);
    Statevector sv = Statevector::basis(l, compose_index(l, std::vector<std::uint32_t>{3, 1}));
    EXPECT_EQ(error_code_of([&] { first_to_second({sv, Discipline::FirstQuantized, 2}); }), ErrorCode::NotAntisymmetric);
}

TEST(FirstToSecond, RecordStateIsInputIndependent) {
    for (int n = 2; n <= 3; ++n) {
        std::vector<Eigen::MatrixXcd> rhos;
        for (int m = n; m <= 5; ++m) {
            if (m < 2) continue;
            for (auto bits : ref::determinants(m, n)) {
                const auto sorted = sort_with_records(encode_first_quantized_determinant(OccupationBitstring(m, bits)));
                rhos.push_back(ref::ancilla_density(sorted.state));
            }
        }
        for (std::size_t i = 1; i < rhos.size(); ++i) EXPECT_GE(ref::fidelity(rhos[0], rhos[i]), 1.0 - 1e-9);
    }
}

TEST(SecondToFirst, Examples) {
    std::mt19937_64 rng(1);
    const auto sl = encode_sorted_list(occ(4, {1, 3}), 2);
    const auto [fq, report] = second_to_first(sl, 2, rng);
    EXPECT_EQ(fq.discipline, Discipline::FirstQuantized);
    EXPECT_NEAR(ref::overlap(fq.state, encode_first_quantized_determinant(occ(4, {1, 3})).state), 1.0, 1e-12);
    EXPECT_TRUE(validate(fq).ok());
    EXPECT_GT(report.success_probability, 0.4);
    EXPECT_LE(report.success_probability, 1.0);
    EXPECT_EQ(report.record_ancillas, 1);

    const auto single = encode_sorted_list(occ(4, {2}), 1);
    const auto [fq1, r1] = second_to_first(single, 1, rng);
    EXPECT_EQ(max_deviation(fq1.state, single.state), 0.0);
}

TEST(SecondToFirst, TrailingSentinelRegistersAreDropped) {
    std::mt19937_64 rng(5);
    const auto sl = encode_sorted_list(occ(5, {2, 4}), 4);
    const auto [fq, report] = second_to_first(sl, 2, rng);
    EXPECT_EQ(fq.layout().num_registers(), 2);
    EXPECT_NEAR(ref::overlap(fq.state, encode_first_quantized_determinant(occ(5, {2, 4})).state), 1.0, 1e-12);
}

TEST(SecondToFirst, Errors) {
    std::mt19937_64 rng(1);
    Statevector mixed = encode_sorted_list(occ(4, {1}), 2).state;
    mixed.add_scaled(1.0, encode_sorted_list(occ(4, {1, 2}), 2).state);
    mixed *= 1.0 / std::sqrt(2.0);
    EXPECT_EQ(error_code_of([&] { second_to_first({mixed, Discipline::SortedList, -1}, 2, rng); }),
              ErrorCode::MixedParticleNumber);

    // With a budget of one attempt some seed must hit a collision.
    bool exceeded = false;
    for (std::uint64_t s = 0; s < 64 && !exceeded; ++s) {
        std::mt19937_64 r(s);
        try {
            second_to_first(encode_sorted_list(occ(3, {1, 2, 3}), 3), 3, r, 1);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::RetryBudgetExceeded);
            exceeded = true;
        }
    }
    EXPECT_TRUE(exceeded);
}

TEST(SecondToFirst, SeededRunsAreReproducible) {
    const auto sl = encode_sorted_list(occ(5, {1, 2, 5}), 3);
    std::mt19937_64 a(42), b(42);
    const auto [x, rx] = second_to_first(sl, 3, a);
    const auto [y, ry] = second_to_first(sl, 3, b);
    EXPECT_EQ(max_deviation(x.state, y.state), 0.0);
    EXPECT_EQ(rx.attempts, ry.attempts);
    EXPECT_EQ(rx.success_probability, ry.success_probability);
}

TEST(RoundTrip, AllDeterminantsUpToFourOrbitals) {
    std::mt19937_64 rng(3);
    for (int m = 2; m <= 4; ++m)
        for (int n = 1; n <= std::min(3, m); ++n)
            for (auto bits : ref::determinants(m, n)) {
                const auto sl = encode_sorted_list(OccupationBitstring(m, bits), n);
                const auto [fq, r1] = second_to_first(sl, n, rng);
                ASSERT_TRUE(validate(fq).ok());
                const auto [back, r2] = first_to_second(fq);
                ASSERT_NEAR(ref::overlap(back.state, sl.state), 1.0, 1e-10);
            }
}

TEST(Linearity, ThreeTermSuperpositions) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        const auto fock = ref::random_fock_sector(5, 2, rng, 3);
        const auto fq = fock_to_first_quantized(fock, 5, 2);
        const auto [sl, r] = first_to_second(fq);
        const auto expect = fock_to_sorted_list(fock, 5, 2);
        EXPECT_NEAR(std::abs(inner(expect.state, sl.state)), 1.0, 1e-10);

        const auto [fq2, r2] = second_to_first(expect, 2, rng);
        EXPECT_NEAR(std::abs(inner(fq.state, fq2.state)), 1.0, 1e-10);
    }
}

TEST(GateCount, CountingOnlyMatchesSimulatedBuild) {
    const auto fq = encode_first_quantized_determinant(occ(5, {1, 2, 4}));
    const auto [sl, report] = first_to_second(fq);
    EXPECT_EQ(report.gate_count, first_to_second_gate_count(5, 3));
    // Far beyond the simulation cap.
    EXPECT_GT(first_to_second_gate_count(64, 8).toffoli_equiv, 0);
    EXPECT_EQ(first_to_second_gate_count(64, 8).toffoli_equiv, 19 * (3 * 7 - 1));
}

// Merged state of two determinants computed independently in the Fock basis.
oracle::FockVector product_oracle(int m, std::uint64_t a, std::uint64_t b) {
    const oracle::FockSpace space(m);
    std::vector<int> order = OccupationBitstring(m, a).orbitals();
    const auto tail = OccupationBitstring(m, b).orbitals();
    order.insert(order.end(), tail.begin(), tail.end());
    return ref::creation_string(order, space);
}

TEST(Merge, Examples) {
    auto merged = [](int m, std::vector<int> a, std::vector<int> b) {
        return tensor_product_merge(encode_sorted_list(occ(m, a), static_cast<int>(a.size()) + 1),
                                    encode_sorted_list(occ(m, b), static_cast<int>(b.size())));
    };
    auto r = merged(4, {1}, {2, 4});
    EXPECT_NEAR(r.duplicate_probability(), 0.0, 1e-12);
    auto es = r.extract_registers(3);
    EXPECT_NEAR(std::abs(inner(encode_sorted_list(occ(4, {1, 2, 4}), 3).state, es.state) - 1.0), 0.0, 1e-12);

    r = merged(4, {3}, {1});
    es = r.extract_registers(2);
    EXPECT_NEAR(std::abs(inner(encode_sorted_list(occ(4, {1, 3}), 2).state, es.state) + 1.0), 0.0, 1e-12);

    r = merged(4, {2}, {2, 4});
    EXPECT_NEAR(r.duplicate_probability(), 1.0, 1e-12);

    const auto other = encode_sorted_list(occ(5, {1}), 1);
    EXPECT_EQ(error_code_of([&] { tensor_product_merge(encode_sorted_list(occ(4, {2}), 1), other); }),
              ErrorCode::BasisMismatch);
}

TEST(Merge, MatchesLadderStringOracleExhaustively) {
    for (int m = 2; m <= 4; ++m) {
        const oracle::FockSpace space(m);
        for (int na = 0; na <= 2; ++na)
            for (int nb = 0; nb <= 2; ++nb)
                for (auto a : ref::determinants(m, na))
                    for (auto b : ref::determinants(m, nb)) {
                        const auto r = tensor_product_merge(encode_sorted_list(OccupationBitstring(m, a), std::max(1, na)),
                                                            encode_sorted_list(OccupationBitstring(m, b), std::max(1, nb)));
                        if (a & b) {
                            ASSERT_NEAR(r.duplicate_probability(), 1.0, 1e-12);
                            continue;
                        }
                        ASSERT_NEAR(r.duplicate_probability(), 0.0, 1e-12);
                        const int regs = std::max(1, na + nb);
                        const auto fock = sorted_list_to_fock(r.extract_registers(regs));
                        const auto expect = product_oracle(m, a, b);
                        for (Eigen::Index i = 0; i < expect.size(); ++i)
                            ASSERT_NEAR(std::abs(fock[static_cast<std::size_t>(i)] - expect(i)), 0.0, 1e-10);
                    }
    }
}

TEST(Merge, MixedParticleNumberRejected) {
    Statevector mixed = encode_sorted_list(occ(4, {1}), 2).state;
    mixed.add_scaled(1.0, encode_sorted_list(occ(4, {1, 2}), 2).state);
    EXPECT_EQ(error_code_of([&] {
                  tensor_product_merge({mixed, Discipline::SortedList, -1}, encode_sorted_list(occ(4, {3}), 1));
              }),
              ErrorCode::MixedParticleNumber);
}

} // namespace

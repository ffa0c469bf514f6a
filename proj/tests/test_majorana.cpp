// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

#include "hyquant/fci_oracle.hpp"
#include "hyquant/majorana.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <functional>

namespace {

using namespace hyq;
using hyq::testing::basis_image;
using hyq::testing::error_code_of;
using oracle::FockSpace;
using oracle::Matrix;

EncodedState determinant(int m, std::uint64_t bits, int nreg) { return encode_sorted_list(OccupationBitstring(m, bits), nreg); }

/// Matrix of a sorted-list operator in the Fock basis, read back through the encoding map.
Matrix encoded_matrix(int m, int nreg, const std::function<EncodedState(const EncodedState&)>& op) {
    const auto dim = Eigen::Index{1} << m;
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto image = sorted_list_to_fock(op(determinant(m, static_cast<std::uint64_t>(col), nreg)));
        for (Eigen::Index row = 0; row < dim; ++row) out(row, col) = image[static_cast<std::size_t>(row)];
    }
    return out;
}

Matrix oracle_majorana(int mu, const FockSpace& space) {
    const int p = (mu + 1) / 2;
    const Matrix c = oracle::ladder_matrix(p, LadderKind::Create, space);
    const Matrix a = oracle::ladder_matrix(p, LadderKind::Annihilate, space);
    // gamma_{2p-1} = a^dagger + a,  gamma_{2p} = i (a^dagger - a)
    return mu % 2 == 1 ? Matrix(c + a) : Matrix(cplx{0.0, 1.0} * (c - a));
}

TEST(SgnRank, Examples) {
    const auto l = build_layout(4, 3, 1);
    auto phase = [&](std::vector<int> occ, int p) {
        const auto x = OccupationBitstring::from_orbitals(4, occ);
        const Index in = compose_index(l, sorted_list_registers(x, l));
        const auto img = basis_image(sgn_rank_circuit(l, p, l.ancilla(0)), in);
        EXPECT_TRUE(img.is_basis);
        EXPECT_EQ(img.index, in);
        return img.phase.real();
    };
    EXPECT_NEAR(phase({1, 3}, 2), -1.0, 1e-12);
    EXPECT_NEAR(phase({1, 2}, 3), 1.0, 1e-12);
    EXPECT_NEAR(phase({1, 2, 4}, 4), -1.0, 1e-12);
    EXPECT_TRUE(sgn_rank_circuit(l, 0, l.ancilla(0)).empty());
    EXPECT_EQ(error_code_of([&] { sgn_rank_circuit(l, 5, l.ancilla(0)); }), ErrorCode::BadConstant);
}

TEST(SgnRank, MatchesParityCountExhaustive) {
    for (int m = 2; m <= 5; ++m) {
        const auto l = build_layout(m, m, 1);
        for (int p = 0; p <= m; ++p) {
            const Circuit c = sgn_rank_circuit(l, p, l.ancilla(0));
            for (std::uint64_t bits = 0; bits < (1u << m); ++bits) {
                const OccupationBitstring x(m, bits);
                const Index in = compose_index(l, sorted_list_registers(x, l));
                const auto img = basis_image(c, in);
                const int below = std::popcount(bits & ((std::uint64_t{1} << p) - 1));
                ASSERT_EQ(img.index, in);
                ASSERT_NEAR(img.phase.real(), below % 2 ? -1.0 : 1.0, 1e-12);
            }
        }
    }
}

TEST(BitFlip, Examples) {
    const auto l = build_layout(4, 3, 1);
    const Circuit c = bit_flip_circuit(l, 2, l.ancilla(0));
    auto idx = [&](std::vector<int> occ) {
        return compose_index(l, sorted_list_registers(OccupationBitstring::from_orbitals(4, occ), l));
    };
    EXPECT_EQ(basis_image(c, idx({1, 3})).index, idx({1, 2, 3}));
    EXPECT_EQ(basis_image(c, idx({1, 2, 3})).index, idx({1, 3}));
    EXPECT_EQ(basis_image(c, idx({})).index, idx({2}));
    EXPECT_EQ(basis_image(c, idx({4})).index, idx({2, 4}));
}

TEST(BitFlip, TogglesOccupationAndIsAnInvolutionExhaustive) {
    for (int m = 2; m <= 5; ++m) {
        const auto l = build_layout(m, m, 1);
        for (int p = 1; p <= m; ++p) {
            const Circuit c = bit_flip_circuit(l, p, l.ancilla(0));
            const Circuit twice = compose(c, c);
            for (std::uint64_t bits = 0; bits < (1u << m); ++bits) {
                const OccupationBitstring x(m, bits);
                const Index in = compose_index(l, sorted_list_registers(x, l));
                const auto img = basis_image(c, in);
                ASSERT_TRUE(img.is_basis);
                ASSERT_NEAR(img.phase.real(), 1.0, 1e-12);
                const auto back = basis_image(twice, in);
                ASSERT_EQ(back.index, in);
                ASSERT_NEAR(back.phase.real(), 1.0, 1e-12);
                const bool room = x.occupied(p) || x.count() < m;
                if (!room) continue;
                const OccupationBitstring flipped(m, bits ^ (std::uint64_t{1} << (p - 1)));
                ASSERT_EQ(img.index, compose_index(l, sorted_list_registers(flipped, l)));
            }
        }
    }
}

TEST(Majorana, VacuumExamples) {
    const auto vac = determinant(2, 0, 2);
    const auto g1 = apply_majorana(vac, MajoranaIndex::odd(1));
    const auto g2 = apply_majorana(vac, MajoranaIndex::even(1));
    const auto one = determinant(2, 1, 2);
    EXPECT_NEAR(std::abs(inner(one.state, g1.state) - cplx(1.0, 0.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(one.state, g2.state) - cplx(0.0, 1.0)), 0.0, 1e-12);
    EXPECT_EQ(majorana_circuit(MajoranaIndex{2}, build_layout(2, 2, 1), 4).scalar, cplx(0.0, 1.0));
}

TEST(Majorana, MatchesOracleAndAnticommutes) {
    for (int m = 2; m <= 3; ++m) {
        const FockSpace space(m);
        const int nreg = m + 2;
        std::vector<Matrix> gamma;
        for (int mu = 1; mu <= 2 * m; ++mu) {
            gamma.push_back(encoded_matrix(m, nreg, [&](const EncodedState& s) { return apply_majorana(s, {mu}); }));
            EXPECT_LE((gamma.back() - oracle_majorana(mu, space)).cwiseAbs().maxCoeff(), 1e-10) << "mu=" << mu;
            EXPECT_LE((gamma.back() - gamma.back().adjoint()).cwiseAbs().maxCoeff(), 1e-10);
        }
        const Matrix id = Matrix::Identity(space.dim(), space.dim());
        for (std::size_t a = 0; a < gamma.size(); ++a)
            for (std::size_t b = 0; b < gamma.size(); ++b) {
                const Matrix ac = gamma[a] * gamma[b] + gamma[b] * gamma[a];
                EXPECT_LE((ac - (a == b ? 2.0 : 0.0) * id).cwiseAbs().maxCoeff(), 1e-10);
            }
    }
}

TEST(Ladder, Examples) {
    const auto vac = determinant(4, 0, 3);
    const auto c2 = apply_ladder(vac, 2, LadderKind::Create);
    EXPECT_NEAR(c2.state.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(determinant(4, 0b10, 3).state, c2.state) - 1.0), 0.0, 1e-12);

    const auto one = determinant(4, 0b1, 3);
    const auto c2one = apply_ladder(one, 2, LadderKind::Create);
    EXPECT_NEAR(std::abs(inner(determinant(4, 0b11, 3).state, c2one.state) + 1.0), 0.0, 1e-12);

    EXPECT_NEAR(apply_ladder(one, 1, LadderKind::Create).state.norm(), 0.0, 1e-12);
    EXPECT_NEAR(apply_ladder(vac, 3, LadderKind::Annihilate).state.norm(), 0.0, 1e-12);
}

TEST(Ladder, NoSlackWhenRegistersAreFull) {
    const auto full = determinant(4, 0b0101, 2);
    EXPECT_EQ(error_code_of([&] { apply_ladder(full, 2, LadderKind::Create); }), ErrorCode::NoSlack);
    // Removing an occupied orbital needs no slack.
    EXPECT_NEAR(apply_ladder(full, 3, LadderKind::Annihilate).state.norm(), 1.0, 1e-12);
}

TEST(Ladder, OracleEquivalenceAlgebraAndNumberOperator) {
    for (int m = 2; m <= 3; ++m) {
        const FockSpace space(m);
        const int nreg = m + 2;
        std::vector<Matrix> create, annihilate;
        for (int p = 1; p <= m; ++p) {
            create.push_back(encoded_matrix(m, nreg, [&](const EncodedState& s) { return apply_ladder(s, p, LadderKind::Create); }));
            annihilate.push_back(encoded_matrix(m, nreg, [&](const EncodedState& s) { return apply_ladder(s, p, LadderKind::Annihilate); }));
            EXPECT_LE((create.back() - oracle::ladder_matrix(p, LadderKind::Create, space)).cwiseAbs().maxCoeff(), 1e-10);
            EXPECT_LE((annihilate.back() - oracle::ladder_matrix(p, LadderKind::Annihilate, space)).cwiseAbs().maxCoeff(), 1e-10);
        }
        const Matrix id = Matrix::Identity(space.dim(), space.dim());
        Matrix number = Matrix::Zero(space.dim(), space.dim());
        for (int p = 0; p < m; ++p) {
            number += create[static_cast<std::size_t>(p)] * annihilate[static_cast<std::size_t>(p)];
            for (int q = 0; q < m; ++q) {
                const auto& ap = annihilate[static_cast<std::size_t>(p)];
                const auto& aq = annihilate[static_cast<std::size_t>(q)];
                const auto& cq = create[static_cast<std::size_t>(q)];
                EXPECT_LE((ap * cq + cq * ap - (p == q ? 1.0 : 0.0) * id).cwiseAbs().maxCoeff(), 1e-10);
                EXPECT_LE((ap * aq + aq * ap).cwiseAbs().maxCoeff(), 1e-10);
            }
        }
        for (Eigen::Index i = 0; i < space.dim(); ++i)
            EXPECT_NEAR(std::abs(number(i, i) - static_cast<double>(std::popcount(static_cast<std::uint64_t>(i)))), 0.0, 1e-10);
        EXPECT_LE((number - Matrix(number.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-10);
    }
}

} // namespace

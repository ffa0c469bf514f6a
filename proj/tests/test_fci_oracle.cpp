// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

#include "hyquant/fci_oracle.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <array>

namespace {

using namespace hyq;
using namespace hyq::oracle;
using hyq::testing::error_code_of;

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

TEST(LadderMatrix, SingleMode) {
    const FockSpace space(1);
    Matrix expect(2, 2);
    expect << 0, 0, 1, 0;
    EXPECT_EQ(ladder_matrix(1, LadderKind::Create, space), expect);
    EXPECT_EQ(ladder_matrix(1, LadderKind::Annihilate, space), expect.adjoint());
}

TEST(LadderMatrix, CanonicalAnticommutationAndNilpotency) {
    for (int m = 1; m <= 4; ++m) {
        const FockSpace space(m);
        const Matrix id = Matrix::Identity(space.dim(), space.dim());
        for (int p = 1; p <= m; ++p) {
            const Matrix cp = ladder_matrix(p, LadderKind::Create, space);
            EXPECT_EQ(max_abs(cp - ladder_matrix(p, LadderKind::Annihilate, space).adjoint()), 0.0);
            EXPECT_EQ(max_abs(cp * cp), 0.0);
            for (int q = 1; q <= m; ++q) {
                const Matrix aq = ladder_matrix(q, LadderKind::Annihilate, space);
                const Matrix cq = ladder_matrix(q, LadderKind::Create, space);
                const Matrix ap = ladder_matrix(p, LadderKind::Annihilate, space);
                EXPECT_EQ(max_abs(ap * cq + cq * ap - (p == q ? id : Matrix::Zero(id.rows(), id.cols()))), 0.0);
                EXPECT_EQ(max_abs(cp * cq + cq * cp), 0.0);
            }
        }
    }
}

TEST(LadderMatrix, JordanWignerSign) {
    const FockSpace space(3);
    // a_3^dagger |{1,2}> = +|{1,2,3}>, a_1^dagger |{2,3}> = +|{1,2,3}>, a_2^dagger |{1,3}> = -|{1,2,3}>.
    EXPECT_EQ(ladder_matrix(3, LadderKind::Create, space)(7, 3), cplx(1.0));
    EXPECT_EQ(ladder_matrix(1, LadderKind::Create, space)(7, 6), cplx(1.0));
    EXPECT_EQ(ladder_matrix(2, LadderKind::Create, space)(7, 5), cplx(-1.0));
    EXPECT_EQ(error_code_of([&] { ladder_matrix(4, LadderKind::Create, space); }), ErrorCode::IndexOutOfRange);
}

TEST(LadderMatrix, ShiftsParticleNumberByOne) {
    const FockSpace space(4);
    for (int p = 1; p <= 4; ++p) {
        const Matrix c = ladder_matrix(p, LadderKind::Create, space);
        for (Eigen::Index r = 0; r < c.rows(); ++r)
            for (Eigen::Index k = 0; k < c.cols(); ++k)
                if (c(r, k) != cplx(0.0)) {
                    EXPECT_EQ(std::popcount(static_cast<unsigned>(r)), std::popcount(static_cast<unsigned>(k)) + 1);
                }
    }
}

TEST(KRdm, Examples) {
    const FockSpace two(2);
    FockVector psi = (two.basis_vector(0b01) + two.basis_vector(0b10)) / std::sqrt(2.0);
    const std::array<int, 1> p1{1}, p2{2};
    EXPECT_NEAR(std::abs(k_rdm(psi, p1, p2, two) - 0.5), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(one_rdm(psi, two).trace() - 1.0), 0.0, 1e-14);

    const FockVector det = two.basis_vector(0b11);
    const std::array<int, 2> a{1, 2}, b{2, 1};
    EXPECT_NEAR(std::abs(k_rdm(det, a, a, two) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(k_rdm(det, a, b, two) + 1.0), 0.0, 1e-14);
    const std::array<int, 2> aa{1, 1};
    EXPECT_EQ(k_rdm(det, aa, a, two), cplx(0.0));

    const std::array<int, 1> bad{3};
    EXPECT_EQ(error_code_of([&] { k_rdm(psi, bad, p1, two); }), ErrorCode::IndexOutOfRange);
}

TEST(KRdm, TraceEqualsElectronCount) {
    std::mt19937_64 rng(17);
    for (int m = 2; m <= 6; ++m)
        for (int n = 0; n <= m; ++n) {
            const auto fock = ref::random_fock_sector(m, n, rng, 4);
            const FockSpace space(m);
            const FockVector psi = Eigen::Map<const Eigen::VectorXcd>(fock.data(), space.dim());
            EXPECT_NEAR(std::abs(one_rdm(psi, space).trace() - static_cast<double>(n)), 0.0, 1e-12);
        }
}

TEST(RotateDeterminants, Examples) {
    const FockSpace space(2);
    const FockVector one = space.basis_vector(0b01);
    EXPECT_EQ(max_abs(rotate_determinants(one, Matrix::Identity(2, 2), space) - one), 0.0);
    Matrix swap(2, 2);
    swap << 0, 1, 1, 0;
    EXPECT_EQ(max_abs(rotate_determinants(one, swap, space) - space.basis_vector(0b10)), 0.0);
    // Swapping the modes of a pair reorders the creation string: a_2^dag a_1^dag = -a_1^dag a_2^dag.
    EXPECT_EQ(max_abs(rotate_determinants(space.basis_vector(0b11), swap, space) + space.basis_vector(0b11)), 0.0);

    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 0) = 2.0;
    EXPECT_EQ(error_code_of([&] { rotate_determinants(one, bad, space); }), ErrorCode::NotUnitary);
}

TEST(RotateDeterminants, PreservesNormAndMatchesLadderConjugation) {
    std::mt19937_64 rng(3);
    const int m = 4;
    const FockSpace space(m);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix u = ref::random_unitary(m, rng);
        const auto fock = ref::random_fock_sector(m, 2, rng, 5);
        const FockVector psi = Eigen::Map<const Eigen::VectorXcd>(fock.data(), space.dim());
        const FockVector out = rotate_determinants(psi, u, space);
        EXPECT_NEAR(out.norm(), 1.0, 1e-12);

        // Rotating a_1^dag a_3^dag |vac> equals the product of rotated creation operators.
        const Matrix c1 = ladder_matrix(1, LadderKind::Create, space);
        const Matrix c3 = ladder_matrix(3, LadderKind::Create, space);
        Matrix r1 = Matrix::Zero(space.dim(), space.dim()), r3 = r1;
        for (int i = 1; i <= m; ++i) {
            r1 += u(i - 1, 0) * ladder_matrix(i, LadderKind::Create, space);
            r3 += u(i - 1, 2) * ladder_matrix(i, LadderKind::Create, space);
        }
        const FockVector det = c1 * c3 * space.basis_vector(0);
        EXPECT_LE(max_abs(rotate_determinants(det, u, space) - r1 * r3 * space.basis_vector(0)), 1e-12);
    }
}

// The Hamiltonian rebuilt from dense ladder products, independent of the determinant block code.
Matrix ladder_hamiltonian(const ToyHamiltonian& h) {
    const FockSpace space(h.num_orbitals());
    const int m = h.num_orbitals();
    std::vector<Matrix> c, a;
    for (int p = 1; p <= m; ++p) {
        c.push_back(ladder_matrix(p, LadderKind::Create, space));
        a.push_back(ladder_matrix(p, LadderKind::Annihilate, space));
    }
    Matrix out = Matrix::Zero(space.dim(), space.dim());
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            out += h.h1(p + 1, q + 1) * c[p] * a[q];
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) out += 0.5 * h.h2(p + 1, q + 1, r + 1, s + 1) * c[p] * c[r] * a[s] * a[q];
        }
    return out;
}

TEST(ToyHamiltonian, DenseMatrixMatchesLadderProducts) {
    std::mt19937_64 rng(8);
    for (int m = 1; m <= 4; ++m) {
        const auto h = random_toy_hamiltonian(m, rng);
        const Matrix dense = h.dense_matrix();
        EXPECT_LE(max_abs(dense - ladder_hamiltonian(h)), 1e-10);
        EXPECT_LE(max_abs(dense - dense.adjoint()), 1e-10);
    }
}

TEST(ToyHamiltonian, RejectsAsymmetricTwoElectronTable) {
    ToyHamiltonian h(2);
    h.set_h2(1, 2, 1, 1, 0.5);
    EXPECT_EQ(error_code_of([&] { h.validate(); }), ErrorCode::BadParam);
    h.set_h2(2, 1, 1, 1, 0.5);
    EXPECT_NO_THROW(h.validate());
}

TEST(Ionization, FreeTwoModeExample) {
    ToyHamiltonian h(2);
    h.set_h1(1, 1, -1.0);
    h.set_h1(2, 2, 1.0);
    const auto t = ionization_attachment_probabilities(h, 1, 1);
    EXPECT_NEAR(t.ground_energy, -1.0, 1e-12);
    ASSERT_EQ(t.lambda_h.size(), 1U);
    EXPECT_NEAR(t.lambda_h[0], 1.0, 1e-12);
    double sum_p = 0.0;
    for (double l : t.lambda_p) sum_p += l;
    EXPECT_NEAR(sum_p, 0.0, 1e-12);
}

TEST(Ionization, SumRulesOnRandomHamiltonians) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 6; ++trial) {
        const int m = 2 + trial % 4;
        const auto h = random_toy_hamiltonian(m, rng);
        for (int n0 = 0; n0 <= m; ++n0)
            for (int i = 1; i <= m; ++i) {
                const auto t = ionization_attachment_probabilities(h, i, n0);
                double sh = 0.0, sp = 0.0;
                for (double l : t.lambda_h) {
                    EXPECT_GE(l, 0.0);
                    EXPECT_LE(l, 1.0 + 1e-12);
                    sh += l;
                }
                for (double l : t.lambda_p) sp += l;
                EXPECT_NEAR(sh, t.occupation, 1e-10);
                EXPECT_NEAR(sp, 1.0 - t.occupation, 1e-10);
            }
    }
}

TEST(Ionization, Errors) {
    ToyHamiltonian h(3);
    EXPECT_EQ(error_code_of([&] { ionization_attachment_probabilities(h, 1, 4); }), ErrorCode::SectorEmpty);
    EXPECT_EQ(error_code_of([&] { ionization_attachment_probabilities(h, 1, -1); }), ErrorCode::SectorEmpty);
    EXPECT_EQ(error_code_of([&] { ionization_attachment_probabilities(h, 4, 1); }), ErrorCode::IndexOutOfRange);
}

} // namespace

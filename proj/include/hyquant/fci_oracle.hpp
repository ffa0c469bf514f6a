// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fci_oracle.hpp
 * @brief Classical reference: dense Fock-space ladder operators, determinant rotations,
 *        k-RDMs, toy Hamiltonians, and ionization/attachment overlaps.
 *
 * Fock basis index = occupation bits, bit p-1 for orbital p. The creation operator
 * a_p^dagger carries (-1)^{#occupied q < p}, so a_1^dagger a_2^dagger |vac> = +|{1,2}>.
 * Nothing here touches register states; agreement with the circuits is a real check.
 */

#pragma once

#include "hyquant/encodings.hpp"
#include "hyquant/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace hyq::oracle {

using cplx = std::complex<double>;
using FockVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxFockOrbitals = 12;

class FockSpace {
public:
    explicit FockSpace(int num_orbitals) : m_(num_orbitals) {
        require(num_orbitals >= 1 && num_orbitals <= kMaxFockOrbitals, ErrorCode::BadParam,
                "Fock space supports 1.." + std::to_string(kMaxFockOrbitals) + " orbitals");
    }

    [[nodiscard]] int num_orbitals() const noexcept { return m_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return Eigen::Index{1} << m_; }

    /// Occupation bitmasks with exactly n bits set, ascending.
    [[nodiscard]] std::vector<std::uint64_t> sector(int n) const {
        std::vector<std::uint64_t> out;
        if (n < 0 || n > m_) return out;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m_); ++bits)
            if (std::popcount(bits) == n) out.push_back(bits);
        return out;
    }

    [[nodiscard]] FockVector basis_vector(std::uint64_t bits) const {
        FockVector v = FockVector::Zero(dim());
        v(static_cast<Eigen::Index>(bits)) = 1.0;
        return v;
    }

private:
    int m_;
};

/// Action of one ladder operator on a determinant: (sign, new bits), or nothing if it vanishes.
inline std::optional<std::pair<int, std::uint64_t>> ladder_on_bits(int p, LadderKind kind, std::uint64_t bits) {
    const std::uint64_t bit = std::uint64_t{1} << (p - 1);
    const bool occ = (bits & bit) != 0;
    if (occ == (kind == LadderKind::Create)) return std::nullopt;
    const int below = std::popcount(bits & (bit - 1));
    return std::pair{(below % 2 == 0) ? 1 : -1, bits ^ bit};
}

inline void require_orbital(const FockSpace& space, int p) {
    require(p >= 1 && p <= space.num_orbitals(), ErrorCode::IndexOutOfRange,
            "orbital " + std::to_string(p) + " outside 1.." + std::to_string(space.num_orbitals()));
}

inline Matrix ladder_matrix(int p, LadderKind kind, const FockSpace& space) {
    require_orbital(space, p);
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    for (std::uint64_t bits = 0; bits < static_cast<std::uint64_t>(space.dim()); ++bits) {
        if (auto r = ladder_on_bits(p, kind, bits))
            m(static_cast<Eigen::Index>(r->second), static_cast<Eigen::Index>(bits)) = r->first;
    }
    return m;
}

/// a_p^dagger or a_p applied to a Fock vector without forming the matrix.
inline FockVector apply_ladder(const FockVector& psi, int p, LadderKind kind, const FockSpace& space) {
    require_orbital(space, p);
    require(psi.size() == space.dim(), ErrorCode::DimMismatch, "Fock vector size");
    FockVector out = FockVector::Zero(space.dim());
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        if (psi(i) == cplx{0.0, 0.0}) continue;
        if (auto r = ladder_on_bits(p, kind, static_cast<std::uint64_t>(i)))
            out(static_cast<Eigen::Index>(r->second)) += static_cast<double>(r->first) * psi(i);
    }
    return out;
}

/**
 * kD^{p1..pk}_{q1..qk} = <a_{p1}^dagger ... a_{pk}^dagger a_{qk} ... a_{q1}>
 *                     = <a_{pk} ... a_{p1} psi | a_{qk} ... a_{q1} psi>.
 */
inline cplx k_rdm(const FockVector& psi, std::span<const int> p, std::span<const int> q, const FockSpace& space) {
    require(p.size() == q.size(), ErrorCode::IndexOutOfRange, "upper and lower index lists differ in length");
    for (int v : p) require_orbital(space, v);
    for (int v : q) require_orbital(space, v);
    FockVector left = psi;
    FockVector right = psi;
    for (int v : p) left = apply_ladder(left, v, LadderKind::Annihilate, space);
    for (int v : q) right = apply_ladder(right, v, LadderKind::Annihilate, space);
    return left.dot(right);  // Eigen's dot conjugates the first argument
}

/// D[p-1][q-1] = <a_p^dagger a_q>.
inline Matrix one_rdm(const FockVector& psi, const FockSpace& space) {
    const int m = space.num_orbitals();
    Matrix d(m, m);
    for (int p = 1; p <= m; ++p)
        for (int q = 1; q <= m; ++q) {
            const int pp[1] = {p};
            const int qq[1] = {q};
            d(p - 1, q - 1) = k_rdm(psi, pp, qq, space);
        }
    return d;
}

inline double occupation_expectation(const FockVector& psi, int i, const FockSpace& space) {
    const int idx[1] = {i};
    return k_rdm(psi, idx, idx, space).real();
}

inline bool is_unitary(const Matrix& u, double tol = 1e-10) {
    return u.rows() == u.cols() && (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() <= tol;
}

/**
 * Single-particle rotation a_j^dagger -> sum_i U_ij a_i^dagger lifted to Fock space: each
 * N-particle sector is multiplied by the N-th compound matrix, entries det U[I, J].
 */
inline FockVector rotate_determinants(const FockVector& psi, const Matrix& u, const FockSpace& space) {
    require(u.rows() == space.num_orbitals() && u.cols() == space.num_orbitals(), ErrorCode::DimMismatch,
            "rotation must be M x M");
    require(is_unitary(u), ErrorCode::NotUnitary, "single-particle rotation is not unitary");
    require(psi.size() == space.dim(), ErrorCode::DimMismatch, "Fock vector size");
    FockVector out = FockVector::Zero(space.dim());
    out(0) = psi(0);
    for (int n = 1; n <= space.num_orbitals(); ++n) {
        const auto dets = space.sector(n);
        for (std::uint64_t col : dets) {
            const cplx amp = psi(static_cast<Eigen::Index>(col));
            if (amp == cplx{0.0, 0.0}) continue;
            std::vector<int> jj;
            for (int p = 0; p < space.num_orbitals(); ++p)
                if ((col >> p) & 1U) jj.push_back(p);
            for (std::uint64_t row : dets) {
                std::vector<int> ii;
                for (int p = 0; p < space.num_orbitals(); ++p)
                    if ((row >> p) & 1U) ii.push_back(p);
                Matrix minor(n, n);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) minor(a, b) = u(ii[static_cast<std::size_t>(a)], jj[static_cast<std::size_t>(b)]);
                out(static_cast<Eigen::Index>(row)) += minor.determinant() * amp;
            }
        }
    }
    return out;
}

/**
 * H = sum_pq h_pq a_p^dagger a_q + 1/2 sum_pqrs h_pqrs a_p^dagger a_r^dagger a_s a_q.
 *
 * Two-electron integrals in chemist order, so operator Hermiticity is h_pqrs = conj(h_qpsr).
 * Indices are 1-based in the accessors.
 */
class ToyHamiltonian {
public:
    explicit ToyHamiltonian(int num_orbitals)
        : m_(num_orbitals), h1_(Matrix::Zero(num_orbitals, num_orbitals)),
          h2_(static_cast<std::size_t>(num_orbitals) * num_orbitals * num_orbitals * num_orbitals, cplx{0.0, 0.0}) {
        require(num_orbitals >= 1 && num_orbitals <= kMaxFockOrbitals, ErrorCode::BadParam, "orbital count");
    }

    [[nodiscard]] int num_orbitals() const noexcept { return m_; }

    [[nodiscard]] cplx h1(int p, int q) const { return h1_(p - 1, q - 1); }
    void set_h1(int p, int q, cplx v) {
        check(p), check(q);
        h1_(p - 1, q - 1) = v;
    }

    [[nodiscard]] cplx h2(int p, int q, int r, int s) const { return h2_[idx(p, q, r, s)]; }
    void set_h2(int p, int q, int r, int s, cplx v) {
        check(p), check(q), check(r), check(s);
        h2_[idx(p, q, r, s)] = v;
    }

    /// Rejects coefficient tables that do not define a Hermitian operator.
    void validate(double tol = 1e-10) const {
        require((h1_ - h1_.adjoint()).cwiseAbs().maxCoeff() <= tol, ErrorCode::BadParam,
                "one-electron table is not Hermitian");
        for (int p = 1; p <= m_; ++p)
            for (int q = 1; q <= m_; ++q)
                for (int r = 1; r <= m_; ++r)
                    for (int s = 1; s <= m_; ++s)
                        require(std::abs(h2(p, q, r, s) - std::conj(h2(q, p, s, r))) <= tol, ErrorCode::BadParam,
                                "two-electron table breaks h_pqrs = conj(h_qpsr) at (" + std::to_string(p) + "," +
                                    std::to_string(q) + "," + std::to_string(r) + "," + std::to_string(s) + ")");
    }

    /// Matrix element block on a list of determinants (all with the same electron count).
    [[nodiscard]] Matrix block(const std::vector<std::uint64_t>& basis) const {
        const auto n = static_cast<Eigen::Index>(basis.size());
        Matrix h = Matrix::Zero(n, n);
        std::vector<Eigen::Index> pos(std::size_t{1} << m_, -1);
        for (Eigen::Index i = 0; i < n; ++i) pos[basis[static_cast<std::size_t>(i)]] = i;
        using Op = std::pair<int, LadderKind>;
        auto apply_string = [&](std::initializer_list<Op> ops, std::uint64_t bits) -> std::optional<std::pair<int, std::uint64_t>> {
            int sign = 1;
            // Rightmost operator acts first.
            for (auto it = std::rbegin(ops); it != std::rend(ops); ++it) {
                auto r = ladder_on_bits(it->first, it->second, bits);
                if (!r) return std::nullopt;
                sign *= r->first;
                bits = r->second;
            }
            return std::pair{sign, bits};
        };
        constexpr auto C = LadderKind::Create;
        constexpr auto A = LadderKind::Annihilate;
        for (Eigen::Index col = 0; col < n; ++col) {
            const std::uint64_t bits = basis[static_cast<std::size_t>(col)];
            for (int p = 1; p <= m_; ++p)
                for (int q = 1; q <= m_; ++q) {
                    const cplx c = h1(p, q);
                    if (c == cplx{0.0, 0.0}) continue;
                    if (auto r = apply_string({{p, C}, {q, A}}, bits))
                        h(pos[r->second], col) += static_cast<double>(r->first) * c;
                }
            for (int p = 1; p <= m_; ++p)
                for (int q = 1; q <= m_; ++q)
                    for (int r = 1; r <= m_; ++r)
                        for (int s = 1; s <= m_; ++s) {
                            const cplx c = h2(p, q, r, s);
                            if (c == cplx{0.0, 0.0}) continue;
                            if (auto res = apply_string({{p, C}, {r, C}, {s, A}, {q, A}}, bits))
                                h(pos[res->second], col) += 0.5 * static_cast<double>(res->first) * c;
                        }
        }
        return h;
    }

    [[nodiscard]] Matrix sector_matrix(int n) const { return block(FockSpace(m_).sector(n)); }

    /// Full 2^M x 2^M matrix (the operator conserves particle number, so it is block diagonal).
    [[nodiscard]] Matrix dense_matrix() const {
        const FockSpace space(m_);
        Matrix h = Matrix::Zero(space.dim(), space.dim());
        for (int n = 0; n <= m_; ++n) {
            const auto basis = space.sector(n);
            const Matrix b = block(basis);
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = 0; j < basis.size(); ++j)
                    h(static_cast<Eigen::Index>(basis[i]), static_cast<Eigen::Index>(basis[j])) =
                        b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        return h;
    }

private:
    void check(int p) const {
        require(p >= 1 && p <= m_, ErrorCode::IndexOutOfRange, "Hamiltonian index " + std::to_string(p));
    }
    [[nodiscard]] std::size_t idx(int p, int q, int r, int s) const {
        const auto m = static_cast<std::size_t>(m_);
        return ((static_cast<std::size_t>(p - 1) * m + static_cast<std::size_t>(q - 1)) * m +
                static_cast<std::size_t>(r - 1)) * m + static_cast<std::size_t>(s - 1);
    }

    int m_;
    Matrix h1_;
    std::vector<cplx> h2_;
};

/// Random Hermitian toy Hamiltonian with normal-distributed coefficients.
inline ToyHamiltonian random_toy_hamiltonian(int num_orbitals, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ToyHamiltonian h(num_orbitals);
    const int m = num_orbitals;
    for (int p = 1; p <= m; ++p)
        for (int q = p; q <= m; ++q) {
            const cplx v = p == q ? cplx{g(rng), 0.0} : cplx{g(rng), g(rng)};
            h.set_h1(p, q, v);
            h.set_h1(q, p, std::conj(v));
        }
    for (int p = 1; p <= m; ++p)
        for (int q = 1; q <= m; ++q)
            for (int r = 1; r <= m; ++r)
                for (int s = 1; s <= m; ++s) {
                    const cplx v{0.3 * g(rng), 0.3 * g(rng)};
                    if (p == q && r == s) {
                        h.set_h2(p, q, r, s, v.real());  // self-partner entry must be real
                    } else {
                        h.set_h2(p, q, r, s, v);
                        h.set_h2(q, p, s, r, std::conj(v));
                    }
                }
    return h;
}

inline constexpr int kMaxDiagonalizationOrbitals = 8;

struct IonizationTables {
    /// lambda_h[n] = |<Psi_{N0-1,n}| a_i |Psi_{N0,0}>|^2 over the whole N0-1 sector.
    std::vector<double> lambda_h;
    /// lambda_p[n] = |<Psi_{N0+1,n}| a_i^dagger |Psi_{N0,0}>|^2 over the whole N0+1 sector.
    std::vector<double> lambda_p;
    double ground_energy = 0.0;
    /// <Psi_{N0,0}| n_i |Psi_{N0,0}>
    double occupation = 0.0;
};

/**
 * Exact diagonalization in the N0 and N0 +- 1 sectors. Neighbour sectors outside 0..M give
 * empty tables; an empty N0 sector is SectorEmpty.
 */
inline IonizationTables ionization_attachment_probabilities(const ToyHamiltonian& h, int i, int n0) {
    const int m = h.num_orbitals();
    const FockSpace space(m);
    require_orbital(space, i);
    require(m <= kMaxDiagonalizationOrbitals, ErrorCode::BadParam, "exact diagonalization is limited to 8 orbitals");
    require(n0 >= 0 && n0 <= m, ErrorCode::SectorEmpty, "no determinants with " + std::to_string(n0) + " electrons");
    h.validate();

    const auto basis0 = space.sector(n0);
    Eigen::SelfAdjointEigenSolver<Matrix> es0(h.block(basis0));
    FockVector psi0 = FockVector::Zero(space.dim());
    for (std::size_t k = 0; k < basis0.size(); ++k)
        psi0(static_cast<Eigen::Index>(basis0[k])) = es0.eigenvectors()(static_cast<Eigen::Index>(k), 0);

    IonizationTables out;
    out.ground_energy = es0.eigenvalues()(0);
    out.occupation = occupation_expectation(psi0, i, space);

    auto project = [&](int n, LadderKind kind) {
        std::vector<double> lambdas;
        const auto basis = space.sector(n);
        if (basis.empty()) return lambdas;
        const FockVector moved = apply_ladder(psi0, i, kind, space);
        Eigen::SelfAdjointEigenSolver<Matrix> es(h.block(basis));
        FockVector restricted(static_cast<Eigen::Index>(basis.size()));
        for (std::size_t k = 0; k < basis.size(); ++k)
            restricted(static_cast<Eigen::Index>(k)) = moved(static_cast<Eigen::Index>(basis[k]));
        const FockVector overlaps = es.eigenvectors().adjoint() * restricted;
        for (Eigen::Index k = 0; k < overlaps.size(); ++k) lambdas.push_back(std::norm(overlaps(k)));
        return lambdas;
    };
    out.lambda_h = project(n0 - 1, LadderKind::Annihilate);
    out.lambda_p = project(n0 + 1, LadderKind::Create);
    return out;
}

} // namespace hyq::oracle

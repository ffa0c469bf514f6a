// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the test binaries.

#pragma once

#include "hyquant/circuit.hpp"
#include "hyquant/statevector.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <utility>

namespace hyq::testing {

struct BasisImage {
    Index index = 0;
    cplx phase{0.0, 0.0};
    bool is_basis = false;
};

/// Image of a basis state under a permutation-with-phases circuit.
inline BasisImage basis_image(const Circuit& c, Index in) {
    Statevector sv = Statevector::basis(c.layout(), in);
    sv.apply(c);
    BasisImage img;
    int nonzero = 0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (std::abs(sv[i]) > 1e-12) {
            ++nonzero;
            img.index = i;
            img.phase = sv[i];
        }
    }
    img.is_basis = nonzero == 1 && std::abs(std::abs(img.phase) - 1.0) < 1e-12;
    return img;
}

inline Statevector random_state(const RegisterLayout& l, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Statevector sv = Statevector::zero(l);
    double n = 0.0;
    for (Index i = 0; i < sv.size(); ++i) {
        sv[i] = {g(rng), g(rng)};
        n += std::norm(sv[i]);
    }
    sv *= 1.0 / std::sqrt(n);
    return sv;
}

template <typename Fn>
ErrorCode error_code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an hyq::Error";
    return ErrorCode::BadParam;
}

} // namespace hyq::testing
